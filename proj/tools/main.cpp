#include "hyperricci/io.hpp"

int main(int argc, char** argv) { return hyperricci::run_cli(argc, argv); }
