#include "chlab/cli.hpp"

int main(int argc, char** argv) { return chlab::cli_main(argc, argv); }
