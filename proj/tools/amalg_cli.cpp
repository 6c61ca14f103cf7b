// amalg: run a ring specification file.

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "amalg/dsl.hpp"

namespace {

volatile std::sig_atomic_t g_interrupted = 0;

void on_sigint(int)
{
    g_interrupted = 1;
}

bool interrupted()
{
    return g_interrupted != 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Finite rings, amalgamated algebras and Armendariz-type checks"};
    std::string spec_path;
    std::string json_path;
    amalg::dsl::ExecConfig cfg;
    bool print_only = false;
    app.add_option("spec", spec_path, "Specification file ('-' for stdin)")->required();
    app.add_option("--degree", cfg.default_degree, "Degree bound for directives that give none")
        ->check(CLI::Range(0u, 8u));
    app.add_option("--max-ring-size", cfg.max_ring_size, "Largest product ring and amalgam in the corpus")
        ->check(CLI::Range(std::size_t{2}, std::size_t{256}));
    app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1u, 256u));
    app.add_option("--json", json_path, "Write the JSON report here");
    app.add_flag("--revalidate", cfg.revalidate, "Re-derive every printed witness from scratch");
    app.add_option("--seed", cfg.seed, "Search visiting order (never changes results)");
    app.add_flag("--print", print_only, "Parse, print the canonical form and exit");
    CLI11_PARSE(app, argc, argv);

    std::string text;
    if (spec_path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(spec_path);
        if (!in) {
            std::cerr << "cannot open " << spec_path << "\n";
            return amalg::dsl::ExitCode::BadSpec;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }

    auto parsed = amalg::dsl::parse_spec(text);
    if (!parsed.ok()) {
        for (const auto& d : parsed.diagnostics)
            std::cerr << spec_path << ":" << d.str() << "\n";
        return amalg::dsl::ExitCode::BadSpec;
    }
    if (print_only) {
        std::cout << amalg::dsl::print_spec(*parsed.model);
        return 0;
    }

    std::signal(SIGINT, on_sigint);
    cfg.interrupted = interrupted;
    auto res = amalg::dsl::execute(*parsed.model, cfg);
    for (const auto& d : res.diagnostics)
        std::cerr << spec_path << ":" << d.str() << "\n";
    std::cout << res.text;
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        out << res.json.dump(2) << "\n";
        if (!out) {
            std::cerr << "cannot write " << json_path << "\n";
            return amalg::dsl::ExitCode::Internal;
        }
    }
    return res.exit_code;
}
