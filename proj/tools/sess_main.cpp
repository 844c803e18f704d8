#include "sess/cli.hpp"

int main(int argc, char** argv) { return sess::run_cli(argc, argv); }
