#include "fluxbound/cli.hpp"

int main(int argc, char** argv) { return fluxbound::cli::main(argc, argv); }
