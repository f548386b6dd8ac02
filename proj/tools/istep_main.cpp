#include "cli.hpp"

int main(int argc, char** argv) { return istep::cli::run(argc, argv); }
