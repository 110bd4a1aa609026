#include "ppra/cli.hpp"

int main(int argc, char** argv) { return ppra::cli::main_entry(argc, argv); }
