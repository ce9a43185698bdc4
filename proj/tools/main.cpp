#include "commands.hpp"

int main(int argc, char** argv) { return symtoda::cli::run(argc, argv); }
