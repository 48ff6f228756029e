#include "posetlab/cli.hpp"

int main(int argc, char** argv) { return posetlab::run_cli(argc, argv); }
