#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dqi/integrable_system.hpp"
#include "dqi/obstruction.hpp"
#include "dqi/star.hpp"

namespace dqi::cli {

using Json = nlohmann::json;

// Explicit term hbar^power * op added to the star product.
struct StarTerm {
    std::size_t power = 0;
    PolyDiffOp op{0, 2};
};

struct Problem {
    std::vector<std::string> coordinates;
    Polyvector pi{0, 2};
    bool moyal = false;
    std::size_t star_order = 0;
    std::vector<StarTerm> star_terms;
    std::vector<Polynomial> generators;
    SolverBounds bounds;

    std::size_t dim() const noexcept { return coordinates.size(); }
    // Moyal (if requested) plus the explicit terms, with its certificate computed.
    StarProduct star() const;
    IntegrableSystem system() const { return IntegrableSystem{pi, generators}; }
};

// Throws ParseError naming the offending field.
Problem parse_problem(const Json &j);
Problem load_problem(const std::string &path);
Json problem_to_json(const Problem &p);

struct Options {
    std::string command;
    std::optional<std::size_t> order;
    std::optional<unsigned> degree_bound;
    std::optional<unsigned> op_order_bound;
    std::uint64_t seed = 0;
};

const std::vector<std::string> &command_names();

// Runs one command. Input problems raise ParseError, ArgumentError,
// DimensionError or PreconditionError; failed internal checks raise
// CheckFailure.
Json run_command(const Problem &problem, const Options &options);

// Stable textual form of a report (sorted keys, two-space indent, final newline).
std::string render(const Json &report);

// Serialization pieces, exposed for round-trip checks.
Json to_json(const PolyDiffOp &op, const std::vector<std::string> &names);
Json to_json(const StarProduct &s, const std::vector<std::string> &names);
Json to_json(const FormalDiffeo &d, const std::vector<std::string> &names);
Json to_json(const RelativeClass &c, const std::vector<std::string> &names);
Json to_json(const Polyvector &p, const std::vector<std::string> &names);
StarProduct star_from_json(const Json &j, const std::vector<std::string> &names, const std::string &where);
FormalDiffeo diffeo_from_json(const Json &j, const std::vector<std::string> &names, const std::string &where);

} // namespace dqi::cli
