#include "trace_atlas/cli.hpp"

int main(int argc, char** argv) { return trace_atlas::cli::run_main(argc, argv); }
