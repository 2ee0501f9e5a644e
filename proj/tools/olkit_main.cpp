#include "olk/cli.hpp"

int main(int argc, char** argv) { return olk::dispatch(argc, argv); }
