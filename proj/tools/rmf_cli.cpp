#include "rmf/cli.hpp"

int main(int argc, char** argv) { return rmf::cli_main(argc, argv); }
