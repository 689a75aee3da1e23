#include "ni/cli.hpp"

int main(int argc, char** argv) { return ni::cli::run(argc, argv); }
