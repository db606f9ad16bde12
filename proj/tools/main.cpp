#include "ouarea_cli/cli.hpp"

int main(int argc, char** argv) { return ouarea::cli::main(argc, argv); }
