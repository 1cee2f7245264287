#include <string>
#include <vector>

#include "dms/cli.hpp"

int main(int argc, char** argv) {
    return dms::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
