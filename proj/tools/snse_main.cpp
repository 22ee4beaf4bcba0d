#include "snse/cli.hpp"

int main(int argc, char** argv) {
    return snse::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
