#include "blockade/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

int main(int argc, char** argv)
{
    using namespace blockade::cli;

    const std::vector<std::string> args(argv + 1, argv + argc);

    std::optional<std::string> contents;
    if (const auto path = config_path(args)) {
        std::ifstream in(*path);
        if (!in) {
            std::cerr << "I/O error: cannot read config file '" << *path << "'\n";
            return kExitFailure;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        contents = buf.str();
    }

    RunConfig cfg;
    try {
        cfg = parse_config(args, contents);
    } catch (const HelpRequested& help) {
        std::cout << help.what();
        return kExitOk;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n(run with --help for usage)\n";
        return kExitUsage;
    }
    cfg.threads = parse_thread_cap(std::getenv("BLOCKADE_THREADS"));
    return execute(cfg, std::cout, std::cerr);
}
