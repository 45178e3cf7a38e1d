#include <iostream>

#include "cli_app.hpp"

int main(int argc, char** argv) {
  return varlp::cli::run(argc, argv, std::cout, std::cerr);
}
