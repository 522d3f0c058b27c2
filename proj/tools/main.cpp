#include "ddorbit/cli.hpp"

int main(int argc, char** argv) { return ddorbit::cli_main(argc, argv); }
