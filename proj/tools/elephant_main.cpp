#include "elephant/cli.hpp"

int main(int argc, char** argv) { return elephant::run_cli(argc, argv); }
