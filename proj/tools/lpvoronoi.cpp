#include "lpvoronoi/cli.hpp"

int main(int argc, char** argv) { return lpv::cli_main(argc, argv); }
