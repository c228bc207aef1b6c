#include "fracgrid/cli.hpp"

int main(int argc, char** argv) { return fracgrid::cli::run(argc, argv); }
