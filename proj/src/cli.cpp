#include "dqi/cli.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "dqi/error.hpp"

namespace dqi::cli {

namespace {

const Json &require(const Json &j, const char *key, const std::string &where)
{
    if (!j.is_object())
        throw ParseError(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError(where.empty() ? key : where + "." + key, "missing field");
    return *it;
}

std::size_t as_index(const Json &j, const std::string &where)
{
    if (!j.is_number_unsigned())
        throw ParseError(where, "expected a non-negative integer");
    return j.get<std::size_t>();
}

std::string as_string(const Json &j, const std::string &where)
{
    if (!j.is_string())
        throw ParseError(where, "expected a string");
    return j.get<std::string>();
}

Polynomial as_polynomial(const Json &j, const std::vector<std::string> &names, const std::string &where)
{
    const std::string text = as_string(j, where);
    try {
        return parse_polynomial(text, names);
    } catch (const ParseError &e) {
        throw ParseError(where, std::string("cannot parse \"") + text + "\": " + e.what());
    }
}

// A slot derivative is written as the monomial it differentiates by: "x^2*y" for d_x^2 d_y, "1" for none.
ExponentVector as_derivative(const Json &j, const std::vector<std::string> &names, const std::string &where)
{
    const Polynomial p = as_polynomial(j, names, where);
    if (p.terms().size() != 1 || p.terms().begin()->second != 1)
        throw ParseError(where, "a derivative must be a single monic monomial such as \"x^2*y\" or \"1\"");
    return p.terms().begin()->first;
}

std::string derivative_string(const ExponentVector &e, const std::vector<std::string> &names)
{
    return to_string(Polynomial::monomial(e), names);
}

std::string tuple_key(const IndexTuple &idx, const std::vector<std::string> &labels)
{
    std::string out = "(";
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (k)
            out += ",";
        out += labels.empty() ? std::to_string(idx[k] + 1) : labels[idx[k]];
    }
    return out + ")";
}

std::string pstr(const Polynomial &p, const std::vector<std::string> &names) { return to_string(p, names); }

void check_unique_names(const std::vector<std::string> &names)
{
    std::set<std::string> seen;
    for (std::size_t k = 0; k < names.size(); ++k) {
        const std::string &n = names[k];
        const std::string where = "coordinates[" + std::to_string(k) + "]";
        if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_'))
            throw ParseError(where, "coordinate names must start with a letter");
        for (char c : n)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
                throw ParseError(where, "coordinate names may contain letters, digits and '_' only");
        if (!seen.insert(n).second)
            throw ParseError(where, "duplicate coordinate name \"" + n + "\"");
    }
}

std::vector<StarTerm> terms_from_json(const Json &list, const std::vector<std::string> &names, std::size_t order,
                                      const std::string &where)
{
    if (!list.is_array())
        throw ParseError(where, "expected an array");
    std::vector<StarTerm> out;
    for (std::size_t k = 0; k < list.size(); ++k) {
        const std::string at = where + "[" + std::to_string(k) + "]";
        const Json &t = list[k];
        StarTerm term;
        term.power = as_index(require(t, "power", at), at + ".power");
        if (term.power == 0 || term.power > order)
            throw ParseError(at + ".power", "power must lie in 1.." + std::to_string(order));
        const Json &slots = require(t, "slots", at);
        if (!slots.is_array())
            throw ParseError(at + ".slots", "expected an array");
        SlotIndices idx;
        for (std::size_t s = 0; s < slots.size(); ++s)
            idx.push_back(as_derivative(slots[s], names, at + ".slots[" + std::to_string(s) + "]"));
        term.op = PolyDiffOp(names.size(), idx.size());
        term.op.add_term(idx, as_polynomial(require(t, "coefficient", at), names, at + ".coefficient"));
        out.push_back(std::move(term));
    }
    return out;
}

Json op_terms(const PolyDiffOp &op, const std::vector<std::string> &names, std::optional<std::size_t> power)
{
    Json out = Json::array();
    for (const auto &[slots, c] : op.terms()) {
        Json t;
        if (power)
            t["power"] = *power;
        t["coefficient"] = pstr(c, names);
        Json s = Json::array();
        for (const auto &e : slots)
            s.push_back(derivative_string(e, names));
        t["slots"] = s;
        out.push_back(t);
    }
    return out;
}

std::vector<std::string> generator_labels(std::size_t n)
{
    std::vector<std::string> labels;
    for (std::size_t k = 1; k <= n; ++k)
        labels.push_back("f" + std::to_string(k));
    return labels;
}

// Witness for a nonzero operator: the arguments x^a_1, .., x^a_k of a term
// with the smallest total derivative degree isolate that term.
Json operator_witness(const PolyDiffOp &op, const std::vector<std::string> &names)
{
    if (op.is_zero())
        return nullptr;
    const SlotIndices *best = nullptr;
    std::uint32_t best_degree = 0;
    for (const auto &[slots, c] : op.terms()) {
        std::uint32_t d = 0;
        for (const auto &e : slots)
            d += total_degree(e);
        if (!best || d < best_degree) {
            best = &slots;
            best_degree = d;
        }
    }
    std::vector<Polynomial> args;
    Json arguments = Json::array();
    for (const auto &e : *best) {
        args.push_back(Polynomial::monomial(e));
        arguments.push_back(derivative_string(e, names));
    }
    const Polynomial value = apply_op(op, args);
    if (value.is_zero())
        throw CheckFailure("operator witness evaluated to zero");
    return Json{{"arguments", arguments}, {"value", pstr(value, names)}};
}

std::string bracket_message(const BracketViolation &v, const std::vector<Polynomial> &gens,
                            const std::vector<std::string> &names)
{
    return "{" + pstr(gens[v.i], names) + "," + pstr(gens[v.j], names) + "} != 0 (equals " +
           pstr(v.bracket, names) + ")";
}

Json validation_json(const ValidationReport &r, const std::vector<std::string> &names)
{
    Json brackets = Json::array();
    for (const auto &v : r.nonzero_brackets)
        brackets.push_back({{"pair", {v.i + 1, v.j + 1}}, {"bracket", pstr(v.bracket, names)}});
    Json j{{"poisson", r.poisson},
           {"jacobiator", to_json(r.jacobiator, names)},
           {"nonzero_brackets", brackets},
           {"independent", r.independent},
           {"random_point_rank", r.random_point_rank},
           {"random_points", r.random_points},
           {"seed", r.seed},
           {"valid", r.valid()}};
    if (r.nonzero_minor_columns) {
        Json cols = Json::array();
        for (std::size_t c : *r.nonzero_minor_columns)
            cols.push_back(names[c]);
        j["nonzero_minor"] = {{"columns", cols}, {"determinant", pstr(*r.nonzero_minor, names)}};
    } else {
        j["nonzero_minor"] = nullptr;
    }
    return j;
}

// Validates the system for commands that need one; the first failure becomes the error text.
IntegrableSystem validated_system(const Problem &p, std::uint64_t seed, Json &report)
{
    if (p.generators.empty())
        throw PreconditionError("this command needs at least one generator");
    const IntegrableSystem sys = p.system();
    const ValidationReport r = validate_system(sys, seed);
    report = validation_json(r, p.coordinates);
    if (!r.poisson)
        throw PreconditionError("invalid integrable system: the bivector is not Poisson ([pi,pi] != 0)");
    if (!r.nonzero_brackets.empty())
        throw PreconditionError("invalid integrable system: " +
                                bracket_message(r.nonzero_brackets.front(), p.generators, p.coordinates));
    if (!r.independent)
        throw PreconditionError("invalid integrable system: generators are functionally dependent "
                                "(every maximal Jacobian minor vanishes)");
    return sys;
}

Json cascade_json(const CascadeReport &c, const std::vector<std::string> &names, std::size_t gens)
{
    Json j{{"hochschild_closed", c.hochschild_closed},
           {"relative_closed", c.relative_closed},
           {"slot_degree", c.slot_degree},
           {"d_hor", to_json(c.d_hor_value, names)}};
    if (c.violating_triple) {
        const auto labels = generator_labels(gens);
        Json args = Json::array();
        for (const auto &e : *c.violating_triple)
            args.push_back(derivative_string(e, labels));
        j["violation"] = {{"arguments", args}, {"value", pstr(*c.violating_value, names)}};
    } else {
        j["violation"] = nullptr;
    }
    return j;
}

Json exactness_json(const ExactnessResult &e, const std::vector<std::string> &names)
{
    Json j{{"status", to_string(e.status)},
           {"degree_bound", e.degree_bound},
           {"unknowns", e.unknowns},
           {"rank", e.rank},
           {"augmented_rank", e.augmented_rank}};
    j["solution"] = e.solution ? to_json(*e.solution, names) : Json(nullptr);
    switch (e.status) {
    case ExactnessResult::Status::ZeroImage:
        j["certificate"] = "every generator is a Casimir, so d_hor vanishes in all degrees";
        break;
    case ExactnessResult::Status::InfeasibleAtBound:
        j["certificate"] = "rank(A) < rank([A|b]) at the degree bound";
        break;
    case ExactnessResult::Status::Solved:
        j["certificate"] = "d_hor(solution) = class checked exactly";
        break;
    }
    return j;
}

Json step_json(const GaugeStepResult &s, const std::vector<std::string> &names)
{
    return Json{{"status", to_string(s.status)},
                {"lift", s.lift ? to_json(*s.lift, names) : Json(nullptr)},
                {"increment", to_json(s.increment, names)},
                {"table_slot_degree", s.table_slot_degree},
                {"unknowns", s.unknowns},
                {"rank", s.rank},
                {"augmented_rank", s.augmented_rank}};
}

std::size_t resolve_order(const Options &o, const StarProduct &s)
{
    const std::size_t n = o.order.value_or(s.order());
    if (n == 0 || n > s.order())
        throw ArgumentError("--order " + std::to_string(n) + " outside 1.." + std::to_string(s.order()));
    return n;
}

SolverBounds resolve_bounds(const Problem &p, const Options &o)
{
    SolverBounds b = p.bounds;
    if (o.degree_bound)
        b.degree = *o.degree_bound;
    if (o.op_order_bound)
        b.operator_order = *o.op_order_bound;
    return b;
}

Json bounds_json(const SolverBounds &b) { return Json{{"degree", b.degree}, {"op_order", b.operator_order}}; }

Json cmd_check_poisson(const Problem &p)
{
    const JacobiCheck jc = jacobi_check(p.pi);
    return Json{{"poisson", jc.is_poisson},
                {"jacobiator", to_json(jc.witness, p.coordinates)},
                {"summary", std::string("Poisson: ") + (jc.is_poisson ? "yes" : "no")}};
}

Json cmd_assoc_check(const Problem &p, const Options &o)
{
    const StarProduct s = p.star();
    const std::size_t n = resolve_order(o, s);
    Json residuals = Json::array();
    std::optional<std::size_t> first_failure;
    for (std::size_t k = 1; k <= n; ++k) {
        const PolyDiffOp r = assoc_residual(s, k);
        if (!r.is_zero() && !first_failure)
            first_failure = k;
        residuals.push_back({{"order", k},
                             {"zero", r.is_zero()},
                             {"residual", op_terms(r, p.coordinates, std::nullopt)},
                             {"witness", operator_witness(r, p.coordinates)}});
    }
    const std::string summary = first_failure ? "associative up to order " + std::to_string(*first_failure - 1) +
                                                    "; R_" + std::to_string(*first_failure) + " != 0"
                                              : "associative up to order " + std::to_string(n);
    return Json{{"certified_order", s.certified_order()}, {"residuals", residuals}, {"summary", summary}};
}

Json cmd_commutator_table(const Problem &p, const Options &o)
{
    Json validation;
    const IntegrableSystem sys = validated_system(p, o.seed, validation);
    const StarProduct s = p.star();
    Json table = Json::object();
    for (std::size_t i = 0; i < sys.size(); ++i)
        for (std::size_t j = i + 1; j < sys.size(); ++j) {
            const auto c = star_commutator(s, sys.generators[i], sys.generators[j]);
            Json coeffs = Json::array();
            for (const auto &q : c.coefficients())
                coeffs.push_back(pstr(q, p.coordinates));
            table[tuple_key({i, j}, {})] = coeffs;
        }
    return Json{{"table", table}, {"order", s.order()}, {"validation", validation}};
}

Json cmd_obstruction(const Problem &p, const Options &o)
{
    Json validation;
    const IntegrableSystem sys = validated_system(p, o.seed, validation);
    const StarProduct s = p.star();
    const std::size_t n = o.order.value_or(1);
    const SolverBounds bounds = resolve_bounds(p, o);
    const RelativeClass chi = obstruction_class(s, sys, n);
    const CascadeReport cascade = cocycle_cascade_check(s, sys, n);
    Json j{{"order", n},
           {"chi", to_json(chi, p.coordinates)},
           {"cascade", cascade_json(cascade, p.coordinates, sys.size())},
           {"bounds", bounds_json(bounds)},
           {"validation", validation}};
    if (n >= 2 && cascade.closed())
        j["exactness"] = exactness_json(exactness_solve(sys, chi, bounds.degree), p.coordinates);
    else
        j["exactness"] = nullptr;
    return j;
}

Json cmd_eliminate(const Problem &p, const Options &o)
{
    Json validation;
    const IntegrableSystem sys = validated_system(p, o.seed, validation);
    const StarProduct s = p.star();
    const std::size_t n = resolve_order(o, s);
    const SolverBounds bounds = resolve_bounds(p, o);
    const ObstructionReport r = eliminate_to_order(s, sys, n, bounds);

    Json orders = Json::array();
    for (const auto &rec : r.orders) {
        orders.push_back({{"order", rec.order},
                          {"already_vanishing", rec.already_vanishing},
                          {"chi", to_json(rec.chi, p.coordinates)},
                          {"cascade", rec.cascade ? cascade_json(*rec.cascade, p.coordinates, sys.size())
                                                  : Json(nullptr)},
                          {"exactness", rec.exactness ? exactness_json(*rec.exactness, p.coordinates)
                                                      : Json(nullptr)},
                          {"step", rec.step ? step_json(*rec.step, p.coordinates) : Json(nullptr)},
                          {"note", rec.note}});
    }
    Json j{{"status", to_string(r.status)},
           {"order", n},
           {"order_reached", r.order_reached},
           {"audit_passed", r.audit_passed},
           {"bounds", bounds_json(r.bounds)},
           {"orders", orders},
           {"gauge", to_json(r.gauge, p.coordinates)},
           {"transformed", to_json(r.transformed, p.coordinates)},
           {"validation", validation}};

    // Re-read the serialized gauge and star and re-apply them to the input.
    const FormalDiffeo gauge = diffeo_from_json(j["gauge"], p.coordinates, "gauge");
    const StarProduct transformed = star_from_json(j["transformed"], p.coordinates, "transformed");
    const bool roundtrip = gauge_transform(s.truncated(n), gauge) == transformed;
    if (!roundtrip)
        throw CheckFailure("eliminate: serialized gauge does not reproduce the serialized transformed star");
    j["gauge_roundtrip"] = roundtrip;
    return j;
}

Json cmd_extend_star(const Problem &p, const Options &o)
{
    const StarProduct s = p.star();
    const std::size_t n = resolve_order(o, s);
    const SolverBounds b = resolve_bounds(p, o);
    const ExtensionBounds eb{b.degree, b.operator_order};
    const ExtensionResult r = extend_one_order(s, n, eb, true);
    Json freedom = Json::array();
    for (const auto &f : r.freedom)
        freedom.push_back(op_terms(f, p.coordinates, std::nullopt));
    return Json{{"status", r.status == ExtensionResult::Status::Found ? "found" : "undecided-within-ansatz"},
                {"order", r.order},
                {"target", op_terms(r.target, p.coordinates, std::nullopt)},
                {"particular", r.particular ? op_terms(*r.particular, p.coordinates, std::nullopt) : Json(nullptr)},
                {"freedom", freedom},
                {"freedom_dimension", r.freedom.size()},
                {"unknowns", r.unknowns},
                {"rank", r.rank},
                {"augmented_rank", r.augmented_rank},
                {"bounds", {{"coefficient_degree", eb.coefficient_degree}, {"operator_order", eb.operator_order}}}};
}

} // namespace

StarProduct Problem::star() const
{
    std::vector<PolyDiffOp> terms;
    std::size_t certificate = 0;
    if (moyal) {
        const StarProduct m = dqi::moyal(pi, star_order);
        terms = m.terms();
        certificate = m.certified_order();
    } else {
        terms.assign(star_order, PolyDiffOp(dim(), 2));
    }
    for (const auto &t : star_terms)
        terms[t.power - 1] += t.op;
    StarProduct s(dim(), std::move(terms));
    if (moyal && star_terms.empty())
        return s.with_certificate(certificate);
    return certify(s);
}

Problem parse_problem(const Json &j)
{
    Problem p;
    const std::size_t dim = as_index(require(j, "dimension", ""), "dimension");
    if (dim == 0)
        throw ParseError("dimension", "must be positive");
    const Json &coords = require(j, "coordinates", "");
    if (!coords.is_array() || coords.size() != dim)
        throw ParseError("coordinates", "expected " + std::to_string(dim) + " names");
    for (std::size_t k = 0; k < dim; ++k)
        p.coordinates.push_back(as_string(coords[k], "coordinates[" + std::to_string(k) + "]"));
    check_unique_names(p.coordinates);

    p.pi = Polyvector(dim, 2);
    const Json &poisson = require(j, "poisson", "");
    if (!poisson.is_array())
        throw ParseError("poisson", "expected an array of [i, j, coefficient]");
    for (std::size_t k = 0; k < poisson.size(); ++k) {
        const std::string at = "poisson[" + std::to_string(k) + "]";
        const Json &e = poisson[k];
        if (!e.is_array() || e.size() != 3)
            throw ParseError(at, "expected [i, j, coefficient]");
        const std::size_t a = as_index(e[0], at + "[0]");
        const std::size_t b = as_index(e[1], at + "[1]");
        if (a >= dim)
            throw ParseError(at + "[0]", "index " + std::to_string(a) + " out of range 0.." + std::to_string(dim - 1));
        if (b >= dim)
            throw ParseError(at + "[1]", "index " + std::to_string(b) + " out of range 0.." + std::to_string(dim - 1));
        if (a == b)
            throw ParseError(at, "diagonal entry (a bivector is antisymmetric)");
        p.pi.add({a, b}, as_polynomial(e[2], p.coordinates, at + "[2]"));
    }

    if (j.contains("star")) {
        const Json &star = j["star"];
        p.star_order = as_index(require(star, "order", "star"), "star.order");
        if (star.contains("moyal")) {
            if (!star["moyal"].is_boolean())
                throw ParseError("star.moyal", "expected true or false");
            p.moyal = star["moyal"].get<bool>();
        }
        if (star.contains("terms"))
            p.star_terms = terms_from_json(star["terms"], p.coordinates, p.star_order, "star.terms");
        for (std::size_t k = 0; k < p.star_terms.size(); ++k)
            if (p.star_terms[k].op.arity() != 2)
                throw ParseError("star.terms[" + std::to_string(k) + "].slots", "a star product term needs 2 slots");
        if (p.moyal) {
            for (const auto &[idx, c] : p.pi.components())
                if (!c.is_constant())
                    throw ParseError("star.moyal", "the Moyal product needs a constant bivector");
        }
    }

    if (j.contains("generators")) {
        const Json &gens = j["generators"];
        if (!gens.is_array())
            throw ParseError("generators", "expected an array of polynomial strings");
        for (std::size_t k = 0; k < gens.size(); ++k)
            p.generators.push_back(as_polynomial(gens[k], p.coordinates, "generators[" + std::to_string(k) + "]"));
    }

    if (j.contains("bounds")) {
        const Json &b = j["bounds"];
        if (b.contains("degree"))
            p.bounds.degree = static_cast<unsigned>(as_index(b["degree"], "bounds.degree"));
        if (b.contains("op_order"))
            p.bounds.operator_order = static_cast<unsigned>(as_index(b["op_order"], "bounds.op_order"));
    }
    return p;
}

Problem load_problem(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(path, "cannot open problem file");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw ParseError(path, e.what());
    }
    return parse_problem(j);
}

Json problem_to_json(const Problem &p)
{
    Json poisson = Json::array();
    for (const auto &[idx, c] : p.pi.components())
        poisson.push_back({idx[0], idx[1], pstr(c, p.coordinates)});
    Json terms = Json::array();
    for (const auto &t : p.star_terms)
        for (auto &e : op_terms(t.op, p.coordinates, t.power))
            terms.push_back(e);
    Json gens = Json::array();
    for (const auto &g : p.generators)
        gens.push_back(pstr(g, p.coordinates));
    return Json{{"dimension", p.dim()},
                {"coordinates", p.coordinates},
                {"poisson", poisson},
                {"star", {{"moyal", p.moyal}, {"order", p.star_order}, {"terms", terms}}},
                {"generators", gens},
                {"bounds", bounds_json(p.bounds)}};
}

const std::vector<std::string> &command_names()
{
    static const std::vector<std::string> names{"check-poisson", "assoc-check", "commutator-table",
                                                "obstruction",   "eliminate",   "extend-star"};
    return names;
}

Json run_command(const Problem &problem, const Options &options)
{
    Json result;
    if (options.command == "check-poisson")
        result = cmd_check_poisson(problem);
    else if (options.command == "assoc-check")
        result = cmd_assoc_check(problem, options);
    else if (options.command == "commutator-table")
        result = cmd_commutator_table(problem, options);
    else if (options.command == "obstruction")
        result = cmd_obstruction(problem, options);
    else if (options.command == "eliminate")
        result = cmd_eliminate(problem, options);
    else if (options.command == "extend-star")
        result = cmd_extend_star(problem, options);
    else
        throw ArgumentError("unknown command \"" + options.command + "\"");

    return Json{{"command", options.command},
                {"seed", options.seed},
                {"conventions",
                 {{"hbar", "real formal parameter; a*b = ab + sum_k hbar^k B_k(a,b)"},
                  {"commutator", "antisymmetric part of B_1 is (1/2){,}, so [a,b]* = hbar {a,b} + O(hbar^2)"},
                  {"indices", "relative classes are keyed by 1-based generator tuples"}}},
                {"problem", problem_to_json(problem)},
                {"result", result}};
}

std::string render(const Json &report) { return report.dump(2) + "\n"; }

Json to_json(const PolyDiffOp &op, const std::vector<std::string> &names)
{
    return Json{{"arity", op.arity()}, {"terms", op_terms(op, names, std::nullopt)}};
}

Json to_json(const StarProduct &s, const std::vector<std::string> &names)
{
    Json terms = Json::array();
    for (std::size_t k = 1; k <= s.order(); ++k)
        for (auto &e : op_terms(s.term(k), names, k))
            terms.push_back(e);
    return Json{{"order", s.order()}, {"certified_order", s.certified_order()}, {"terms", terms}};
}

Json to_json(const FormalDiffeo &d, const std::vector<std::string> &names)
{
    Json terms = Json::array();
    for (std::size_t k = 1; k <= d.order(); ++k)
        for (auto &e : op_terms(d.term(k), names, k))
            terms.push_back(e);
    return Json{{"order", d.order()}, {"terms", terms}};
}

Json to_json(const RelativeClass &c, const std::vector<std::string> &names)
{
    Json out = Json::object();
    for (const auto &[idx, w] : c.components())
        out[tuple_key(idx, {})] = pstr(w, names);
    return out;
}

Json to_json(const Polyvector &p, const std::vector<std::string> &names)
{
    Json out = Json::object();
    for (const auto &[idx, w] : p.components())
        out[tuple_key(idx, names)] = pstr(w, names);
    return out;
}

StarProduct star_from_json(const Json &j, const std::vector<std::string> &names, const std::string &where)
{
    const std::size_t order = as_index(require(j, "order", where), where + ".order");
    const std::size_t cert = j.contains("certified_order")
                                 ? as_index(j["certified_order"], where + ".certified_order")
                                 : 0;
    std::vector<PolyDiffOp> terms(order, PolyDiffOp(names.size(), 2));
    for (const auto &t : terms_from_json(require(j, "terms", where), names, order, where + ".terms")) {
        if (t.op.arity() != 2)
            throw ParseError(where + ".terms", "a star product term needs 2 slots");
        terms[t.power - 1] += t.op;
    }
    return StarProduct(names.size(), std::move(terms), cert);
}

FormalDiffeo diffeo_from_json(const Json &j, const std::vector<std::string> &names, const std::string &where)
{
    const std::size_t order = as_index(require(j, "order", where), where + ".order");
    std::vector<PolyDiffOp> terms(order, PolyDiffOp(names.size(), 1));
    for (const auto &t : terms_from_json(require(j, "terms", where), names, order, where + ".terms")) {
        if (t.op.arity() != 1)
            throw ParseError(where + ".terms", "a diffeomorphism term needs 1 slot");
        terms[t.power - 1] += t.op;
    }
    return FormalDiffeo(names.size(), std::move(terms));
}

} // namespace dqi::cli
