#include "cli.hpp"

int main(int argc, char** argv) { return symspec::cli::main(argc, argv); }
