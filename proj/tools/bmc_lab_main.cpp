#include "bmc/cli.hpp"

int main(int argc, char** argv) { return bmc::cli::run(argc, argv); }
