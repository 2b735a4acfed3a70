#include "akns/cli.hpp"

int main(int argc, char** argv) { return akns::cli::runCli(argc, argv); }
