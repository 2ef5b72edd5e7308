#include "unisearch/cli.hpp"

int main(int argc, char** argv) { return unisearch::cli::run(argc, argv); }
