#include <dopsolve/cli.hpp>

#include <cstdlib>
#include <iostream>
#include <unistd.h>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    dopsolve::CliEnvironment env;
    env.color = std::getenv("NO_COLOR") == nullptr && isatty(STDERR_FILENO);
    return dopsolve::run_cli(args, std::cin, std::cout, std::cerr, env);
}
