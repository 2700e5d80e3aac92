// corank_cli.cpp - entry point for the corank command-line tool.

#include <iostream>
#include <string>
#include <vector>

#include "corank/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return corank::cli::run(std::move(args), std::cout, std::cerr);
}
