#include "sagin/cli.hpp"

int main(int argc, char** argv) { return sagin::cli::run(argc, argv); }
