#include "ogw/cli.hpp"

int main(int argc, char** argv) { return ogw::cli::run(argc, argv); }
