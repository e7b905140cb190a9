#include "mproots/cli.hpp"

int main(int argc, char** argv) { return mproots::cli::run_main(argc, argv); }
