#include "commands.hpp"

int main(int argc, char** argv) { return lindgeo::cli::run(argc, argv); }
