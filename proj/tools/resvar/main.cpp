#include "resvar/commands.hpp"

int main(int argc, char** argv) { return resvar::app::run_cli(argc, argv); }
