#include "cli.hpp"

int main(int argc, char** argv) { return jcrev::cli::run(argc, argv); }
