#include <iostream>

#include "relaygame/cli.h"

int main(int argc, char** argv) {
  return relaygame::RunCli(argc, argv, std::cout, std::cerr);
}
