#include "martbounds/cli.hpp"

int main(int argc, char** argv) { return martbounds::cli::run(argc, argv); }
