#include "lacunary/cli.hpp"

int main(int argc, char** argv) { return lacunary::cli::main(argc, argv); }
