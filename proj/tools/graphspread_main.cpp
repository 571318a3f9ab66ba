#include <string>
#include <vector>

#include "gsp/cli.hpp"

int main(int argc, char** argv) {
    return gsp::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
