#include "cli.hpp"

int main(int argc, char** argv) { return selrelax::cli::run_main(argc, argv); }
