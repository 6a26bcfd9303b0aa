#include "suplord/cli.hpp"

int main(int argc, char** argv) { return suplord::cli::run(argc, argv); }
