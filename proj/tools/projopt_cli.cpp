#include "cli_support.hpp"

int main(int argc, char** argv) { return projopt::cli::run_main(argc, argv); }
