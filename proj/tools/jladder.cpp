#include <jladder/harness.hpp>

int main(int argc, char** argv) { return jladder::run_cli(argc, argv); }
