#include "gfeast/cli.hpp"

int main(int argc, char** argv) { return gfeast::run_cli(argc, argv); }
