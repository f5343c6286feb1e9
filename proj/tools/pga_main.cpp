#include <vector>

#include "pga/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pga::run_cli(args);
}
