#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  return pcasmote::cli::main_entry(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
