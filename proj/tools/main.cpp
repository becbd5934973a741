#include "ptsub_cli.hpp"

int main(int argc, char **argv) { return ptsub::cli::run(argc, argv); }
