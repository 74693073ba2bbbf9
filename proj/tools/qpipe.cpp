#include "qpipe/cli.hpp"

int main(int argc, char** argv) { return qpipe::cli::run_cli(argc, argv); }
