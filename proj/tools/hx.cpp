#include "hx/cli.hpp"

int main(int argc, char** argv) { return hx::dispatch(argc, argv); }
