#include "wfl/app/commands.hpp"

int main(int argc, char** argv) { return wfl::app::run_cli(argc, argv); }
