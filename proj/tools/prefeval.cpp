#include "prefeval/cli.hpp"

int main(int argc, char** argv) { return prefeval::cli::main(argc, argv); }
