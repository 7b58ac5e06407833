#include "staticgeo/cli.hpp"

int main(int argc, char** argv) { return staticgeo::cli::run(argc, argv); }
