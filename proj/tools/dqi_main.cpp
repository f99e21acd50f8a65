#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "dqi/cli.hpp"
#include "dqi/error.hpp"

namespace {

std::string joined_commands()
{
    std::string out;
    for (const auto &c : dqi::cli::command_names())
        out += (out.empty() ? "" : ", ") + c;
    return out;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Deformation-quantization obstructions for integrable systems"};
    std::string problem_path, out_path;
    dqi::cli::Options options;
    std::size_t order = 0;
    unsigned degree_bound = 0, op_order_bound = 0;

    app.add_option("--problem", problem_path, "problem file (JSON)")->required()->check(CLI::ExistingFile);
    app.add_option("--command", options.command, "one of: " + joined_commands())
        ->required()
        ->check(CLI::IsMember(dqi::cli::command_names()));
    auto *order_opt = app.add_option("--order", order, "order N");
    auto *degree_opt = app.add_option("--degree-bound", degree_bound, "coefficient degree bound");
    auto *op_order_opt = app.add_option("--op-order-bound", op_order_bound, "derivative order bound");
    app.add_option("--seed", options.seed, "seed for randomized checks");
    app.add_option("--out", out_path, "report path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    if (*order_opt)
        options.order = order;
    if (*degree_opt)
        options.degree_bound = degree_bound;
    if (*op_order_opt)
        options.op_order_bound = op_order_bound;

    std::string text;
    try {
        const dqi::cli::Problem problem = dqi::cli::load_problem(problem_path);
        text = dqi::cli::render(dqi::cli::run_command(problem, options));
    } catch (const dqi::CheckFailure &e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return 2;
    } catch (const dqi::ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const dqi::PreconditionError &e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument &e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 1;
    }

    if (out_path.empty()) {
        std::cout << text;
        return std::cout ? 0 : 1;
    }
    std::ofstream out(out_path, std::ios::binary);
    out << text;
    if (!out) {
        std::cerr << "cannot write " << out_path << "\n";
        return 1;
    }
    return 0;
}
