#include <string>
#include <vector>

#include "monolab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return monolab::cli::run(args);
}
