#include <iostream>

#include "postselect/cli.hpp"

int main(int argc, char** argv) {
  return postselect::cli::main_entry(argc, argv, std::cout, std::cerr);
}
