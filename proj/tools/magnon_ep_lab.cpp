#include <iostream>

#include "magnon/cli/execute.hpp"

int main(int argc, char **argv)
{
  return magnon::cli::RunCli(argc, argv, std::cout, std::cerr);
}
