// Command-line front end: reads a family document and prints a report.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include <hyperroots/cli.hpp>

namespace
{

std::string read_input(const std::string &path)
{
    if (path.empty()) {
        return {};
    }
    if (path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        hyperroots::raise(hyperroots::errc::invalid_argument, "cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char **argv)
{
    using namespace hyperroots;
    CLI::App app{"Analytic roots and eigenvalues of hyperbolic families"};
    std::string command;
    std::string input;
    std::string region;
    std::string chart;
    RunConfig cfg;
    app.add_option("command", command, "discriminants | hyperbolic | rellich | split2d | lipschitz | lidskii | diag | canonical")
        ->required();
    app.add_option("input", input, "family document (JSON), or - for stdin");
    app.add_option("--order", cfg.order, "truncation order of series output");
    app.add_option("--tol", cfg.tol, "numeric tolerance");
    app.add_option("--seed", cfg.seed, "seed for randomized commands");
    app.add_option("--max-steps", cfg.max_steps, "reduction step budget for split2d");
    app.add_option("--format", cfg.format, "json or csv");
    app.add_option("--region", region, "scan region x1min,x1max,x2min,x2max");
    app.add_option("--grid", cfg.grid, "points per axis on the coarsest grid");
    app.add_option("--levels", cfg.levels, "refinement levels");
    app.add_option("--count", cfg.count, "lidskii: number of pairs");
    app.add_option("--size", cfg.size, "lidskii: size of random matrices");
    app.add_option("--chart", chart, "diag/canonical: i,j substitutes x_j -> x_i x_j first");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cout << detail::error_json(command, errc_name(errc::invalid_argument), e.what()).dump(2) << "\n";
        return 2;
    }

    std::string text;
    try {
        const auto &names = command_names();
        if (std::find(names.begin(), names.end(), command) != names.end()) {
            if (!region.empty()) {
                cfg.region = parse_region(region);
            }
            if (!chart.empty()) {
                const auto comma = chart.find(',');
                if (comma == std::string::npos) {
                    raise(errc::invalid_argument, "chart must be i,j");
                }
                cfg.chart_from = std::stoi(chart.substr(0, comma));
                cfg.chart_to = std::stoi(chart.substr(comma + 1));
            }
            text = read_input(input);
        }
    } catch (const error &e) {
        std::cout << detail::error_json(command, errc_name(e.code()), e.detail()).dump(2) << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cout << detail::error_json(command, errc_name(errc::invalid_argument), e.what()).dump(2) << "\n";
        return 2;
    }
    const CommandResult res = run_command(command, text, cfg);
    std::cout << res.output;
    return res.exit_code;
}
