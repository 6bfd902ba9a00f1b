#include "qws/cli.hpp"

int main(int argc, char** argv) { return qws::cli::run(argc, argv); }
