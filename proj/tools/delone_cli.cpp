#include "commands.hpp"

int main(int argc, char** argv) { return delone::cli::run(argc, argv); }
