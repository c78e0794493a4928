#include "rmt/harness.hpp"

int main(int argc, char** argv) { return rmt::cli_main(argc, argv); }
