#include "bchardy/experiments.hpp"

int main(int argc, char** argv) { return bchardy::run_cli(argc, argv); }
