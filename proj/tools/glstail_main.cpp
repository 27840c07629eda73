#include "gls/cli.hpp"

int main(int argc, char** argv) { return gls::cli_main(argc, argv); }
