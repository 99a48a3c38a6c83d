#include "hodgeloop/cli.h"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    using namespace hodgeloop;

    CLI::App app{"Rational free loop space and aut_1 rank calculator for Sullivan minimal models"};
    app.require_subcommand(1);

    cli::Options options;
    for (const auto& name : cli::commands()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("model", options.model_path, "model file")->required();
        sub->add_option("--max-degree", options.max_degree, "largest cohomological degree to compute");
        sub->add_option("--format", options.format, "output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_flag("--growth", options.growth, "append the partial-sum growth report (betti)");
        sub->add_option("--jobs", options.jobs, "worker threads for per-degree work")->check(CLI::Range(1u, 1024u));
        sub->add_flag("--corrupt-alpha", options.corrupt_alpha)->group("");
        sub->callback([&options, name] { options.command = name; });
    }

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : cli::parse_failure;
    }

    const cli::Report report = cli::run(options);
    std::cout << cli::render(report);
    if (!report.error.empty() && options.format != "json")
        std::cerr << report.error << "\n";
    return report.exit_code;
}
