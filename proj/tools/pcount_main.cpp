#include "pcount/cli.hpp"

int main(int argc, char** argv) { return pcount::cli::main_entry(argc, argv); }
