#include <iostream>

#include "parabasin/cli.hpp"

int main(int argc, char** argv) {
  return parabasin::cli::run(argc, argv, std::cout, std::cerr);
}
