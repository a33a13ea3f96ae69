#include "nwidth/cli.hpp"

int main(int argc, char** argv) { return nwidth::run_cli(argc, argv); }
