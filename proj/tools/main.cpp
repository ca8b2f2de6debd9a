#include "cli.hpp"

int main(int argc, char** argv) { return gwvn::cli::run(argc, argv); }
