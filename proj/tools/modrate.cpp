#include "modrate/cli.hpp"

int main(int argc, char** argv) { return modrate::cli::dispatch(argc, argv); }
