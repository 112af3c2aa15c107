#include "isokd/cli.hpp"

int main(int argc, char** argv) { return isokd::cli::run(argc, argv); }
