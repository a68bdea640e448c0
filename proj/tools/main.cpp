#include "kacgap/tools/cli.hpp"

int main(int argc, char** argv) { return kacgap::tools::run(argc, argv); }
