#include "hyperfractal/cli.hpp"

int main(int argc, char** argv) { return hyperfractal::cli::dispatch(argc, argv); }
