#include "dmom/cli.hpp"

int main(int argc, char** argv) { return dmom::run_cli(argc, argv); }
