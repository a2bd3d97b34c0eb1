#include "cli.hpp"

#include "blockcomp/applications.hpp"
#include "blockcomp/approxdeg.hpp"
#include "blockcomp/errors.hpp"
#include "blockcomp/json_io.hpp"
#include "blockcomp/linalg.hpp"
#include "blockcomp/mainlemma.hpp"
#include "blockcomp/protocols.hpp"
#include "blockcomp/specdisc.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

namespace blockcomp::cli {

namespace {

struct Common {
    std::string out_path;
    std::size_t materialize_limit = kDefaultMaterializeLimit;
    int arity_cap = kDefaultLpArityCap;
};

std::size_t materialize_limit_from_env() {
    const char* raw = std::getenv("BLOCKCOMP_MAX_MATERIALIZE");
    if (raw == nullptr || *raw == '\0') return kDefaultMaterializeLimit;
    std::size_t pos = 0;
    unsigned long long value = 0;
    try {
        value = std::stoull(raw, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != std::string(raw).size() || value == 0)
        throw ParameterError(std::string("BLOCKCOMP_MAX_MATERIALIZE must be a positive integer, got '") + raw + "'");
    return static_cast<std::size_t>(value);
}

Rational epsilon_arg(const std::string& text) {
    Rational eps = parse_rational(text);
    check_epsilon(eps);
    return eps;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Emits through --out when given.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ParseError("cannot write '" + path + "'");
        }
        stream_ = path.empty() ? &fallback : &file_;
    }
    std::ostream& stream() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_ = nullptr;
};

int emit(const Json& report, const Common& common, std::ostream& out, bool ok) {
    Sink sink(common.out_path, out);
    sink.stream() << report.dump(2) << '\n';
    return ok ? kOk : kInvariantFailure;
}

// ---- approxdeg / witness ---------------------------------------------------

int cmd_approxdeg(const std::string& f_src, const std::string& eps_text, const Common& c, std::ostream& out) {
    const BooleanFunction f = load_boolean_function(f_src);
    const Rational eps = epsilon_arg(eps_text);
    const auto result = approx_degree(f, eps, c.arity_cap);
    Json report = {{"command", "approxdeg"}, {"function", to_json(f)}, {"result", to_json(result)}};
    report["degree"] = result.degree;
    return emit(report, c, out, true);
}

int cmd_witness(const std::string& f_src, const std::string& eps_text, const Common& c, std::ostream& out) {
    const BooleanFunction f = load_boolean_function(f_src);
    const Rational eps = epsilon_arg(eps_text);
    const DualWitness w = dual_witness(f, eps, c.arity_cap);
    const WitnessReport recheck = verify_witness(w, f);
    Json report = {{"command", "witness"}, {"function", to_json(f)}, {"witness", to_json(w)}};
    report["recheck"] = to_json(recheck);
    return emit(report, c, out, w.report.all() && recheck.all());
}

// ---- specdisc ---------------------------------------------------------------

struct PairChoice {
    DistributionPair pair;
    InnerFunction g;
};

PairChoice make_pair(const std::string& family, int k, std::uint64_t seed, const std::string& g_src) {
    if (!g_src.empty()) {
        InnerFunction g = load_inner_function(g_src);
        std::vector<std::uint64_t> all(g.side());
        for (std::uint64_t x = 0; x < all.size(); ++x) all[x] = x;
        return {uniform_pair(g, all, all), g};
    }
    if (family == "ip") return {ip_pair(k), inner_product_function(k)};
    if (family == "disj") return {disj_pair(k), disjointness_restricted(k)};
    if (family == "random") return {random_pair(k, seed), random_inner_function(k, seed)};
    throw ParseError("unknown family '" + family + "' (expected ip, disj or random)");
}

int cmd_specdisc(const std::string& family, int k, std::uint64_t seed, const std::string& g_src, bool rectangles,
                 const Common& c, std::ostream& out) {
    const PairChoice choice = make_pair(family, k, seed, g_src);
    const SpectralDiscrepancyCert cert = spectral_certificate(choice.pair);
    Json report = {{"command", "specdisc"}, {"family", g_src.empty() ? family : "file"}, {"k", choice.pair.k}};
    report["certificate"] = to_json(cert);
    report["pair_supported"] = supported_on_preimages(choice.pair, choice.g);
    bool ok = report["pair_supported"].get<bool>();
    if (g_src.empty() && family == "ip") {
        const double sum_cf = ip_sum_norm_closed_form(k);
        const double diff_cf = ip_diff_norm_closed_form(k);
        const double bound = ip_rho_bound(k);
        const bool rho_ok = cert.rho <= bound + 1e-12;
        report["closed_form"] = {{"sum_norm", sum_cf},
                                 {"diff_norm", diff_cf},
                                 {"sum_deviation", std::abs(cert.sum_norm - sum_cf)},
                                 {"diff_deviation", std::abs(cert.diff_norm - diff_cf)},
                                 {"rho_bound", bound},
                                 {"rho_within_bound", rho_ok}};
        ok = ok && rho_ok;
    } else if (g_src.empty() && family == "disj") {
        const bool rho_ok = cert.rho <= 3.0 / k + 1e-12;
        report["closed_form"] = {{"rho_bound", 3.0 / k}, {"rho_within_bound", rho_ok}};
        ok = ok && rho_ok;
    }
    if (rectangles) report["rectangle_discrepancy"] = rectangle_discrepancy(choice.pair, choice.g);
    (void)c;
    return emit(report, c, out, ok);
}

// ---- knuth ------------------------------------------------------------------

int cmd_knuth(int k, int p, std::optional<int> s_only, const Common& c, std::ostream& out) {
    if (k < 1 || 2 * p > k || p < 0) throw ParameterError("need 0 <= p <= k/2");
    Json report = {{"command", "knuth"}, {"k", k}, {"p", p}};
    bool ok = true;
    Json matrices = Json::array();
    const Integer m = binomial(k, p);
    const bool numeric = m <= Integer(std::min<std::size_t>(c.materialize_limit, 2048));
    for (int s = 0; s <= p; ++s) {
        if (s_only && *s_only != s) continue;
        Json entry = {{"s", s}};
        Json spectrum = Json::array();
        std::vector<double> expected;
        for (int t = 0; t <= p; ++t) {
            const Rational lambda = knuth_eigenvalue(k, p, s, t);
            const Integer mult = knuth_multiplicity(k, t);
            spectrum.push_back({{"t", t}, {"eigenvalue", to_string(lambda)}, {"multiplicity", mult.str()}});
            for (Integer i = 0; i < mult; ++i) expected.push_back(to_double(lambda));
        }
        entry["spectrum"] = spectrum;
        if (numeric) {
            const auto j = johnson_matrix(k, p, s);
            const Eigen::VectorXd eig = symmetric_eigenvalues(j.matrix);
            std::sort(expected.begin(), expected.end());
            double dev = expected.size() == static_cast<std::size_t>(eig.size()) ? 0.0 : INFINITY;
            for (std::size_t i = 0; i < expected.size() && std::isfinite(dev); ++i)
                dev = std::max(dev, std::abs(expected[i] - eig(static_cast<Eigen::Index>(i))));
            const bool match = dev <= 1e-8;
            entry["max_deviation"] = std::isfinite(dev) ? Json(dev) : Json(nullptr);
            entry["numeric_match"] = match;
            ok = ok && match;
        }
        matrices.push_back(entry);
    }
    report["matrices"] = matrices;
    report["numeric_check"] = numeric;

    if (k % 3 == 0 && p == k / 3 && p >= 1) {
        Json disj = Json::array();
        const Rational big_m(m);
        for (int t = 0; t <= p; ++t) {
            const Rational l0 = disj_eigenvalue(k, 0, t);
            const Rational l1 = disj_eigenvalue(k, 1, t);
            const Rational diff = l0 - l1;
            const Rational closed = disj_eigen_difference_closed_form(k, t);
            const bool match = diff == closed;
            ok = ok && match;
            disj.push_back({{"t", t},
                            {"lambda0", to_string(l0)},
                            {"lambda1", to_string(l1)},
                            {"scaled_lambda0", to_string(big_m * l0)},
                            {"scaled_lambda1", to_string(big_m * l1)},
                            {"difference", to_string(diff)},
                            {"closed_form", to_string(closed)},
                            {"match", match}});
        }
        const bool top = big_m * disj_eigenvalue(k, 0, 0) == 1 && big_m * disj_eigenvalue(k, 1, 0) == 1;
        ok = ok && top;
        report["disj"] = {{"M", m.str()}, {"eigenvalues", disj}, {"scaled_top_is_one", top}};
    }
    return emit(report, c, out, ok);
}

// ---- mainlemma --------------------------------------------------------------

MainLemmaOptions lemma_options(const std::string& eps, const std::string& eps_prime, const Common& c) {
    MainLemmaOptions options;
    options.epsilon = epsilon_arg(eps);
    options.epsilon_prime = parse_rational(eps_prime);
    if (options.epsilon_prime < 0 || options.epsilon_prime >= options.epsilon)
        throw ParameterError("need 0 <= eps' < eps");
    options.materialize_limit = c.materialize_limit;
    options.arity_cap = c.arity_cap;
    return options;
}

int cmd_mainlemma(const std::string& f_src, const std::string& family, int k, const std::string& eps,
                  const std::string& eps_prime, const Common& c, std::ostream& out) {
    const BooleanFunction f = load_boolean_function(f_src);
    const MainLemmaOptions options = lemma_options(eps, eps_prime, c);
    Json report = {{"command", "mainlemma"}, {"function", to_json(f)}, {"family", family}, {"k", k}};
    bool ok = false;
    if (family == "ip") {
        const auto r = ip_corollary_driver(f, k, options);
        report["report"] = to_json(r);
        ok = r.ok();
    } else if (family == "disj") {
        const auto r = disj_lemma_driver(f, k, options);
        report["report"] = to_json(r);
        ok = r.ok();
    } else {
        throw ParseError("unknown family '" + family + "' (expected ip or disj)");
    }
    return emit(report, c, out, ok);
}

// ---- reduce -----------------------------------------------------------------

int cmd_reduce(const std::string& f_src, double paturi_c, const std::string& case_text, std::optional<int> k_override,
               bool check, const Common& c, std::ostream& out) {
    const BooleanFunction f = load_boolean_function(f_src);
    ReductionOptions options;
    if (!case_text.empty()) options.force_case = parse_reduction_case(case_text);
    options.k_override = k_override;
    options.arity_cap = std::min(c.arity_cap, 8);
    const ReductionPlan plan = reduction_plan(f, paturi_c, options);
    Json report = {{"command", "reduce"}, {"function", to_json(f)}, {"plan", to_json(plan)}};
    bool ok = plan.pads_non_negative();
    if (check) {
        const bool holds = padding_identity_check(plan, f, c.materialize_limit);
        report["identity_holds"] = holds;
        ok = ok && holds;
    }
    return emit(report, c, out, ok);
}

// ---- simulate ---------------------------------------------------------------

int cmd_simulate(const std::string& protocol, const std::string& f_src, const std::string& g_src, long trials,
                 std::uint64_t seed, double inject, int repetitions, long g_cost, double c_ham, const Common& c,
                 std::ostream& out, std::ostream& err) {
    if (trials < 0) throw ParameterError("trials must be non-negative");
    const BooleanFunction f = load_boolean_function(f_src);
    Sink sink(c.out_path, out);
    long wrong = 0;
    bool within = true;
    bool exact_ok = true;
    if (protocol == "symand") {
        if (inject < 0.0 || inject > 1.0 / 3.0) throw ParameterError("--inject-error must lie in [0, 1/3]");
        if (f.arity() > 64) throw ParameterError("symand supports n <= 64");
        const SymmetricProfile profile = symmetric_profile(f);
        HamOracleConfig config;
        config.c_ham = c_ham;
        config.inject_error = inject;
        config.repetitions = repetitions;
        const std::int64_t bound = symand_cost_bound(profile.ell1, config);
        for (long i = 0; i < trials; ++i) {
            const std::uint64_t s = trial_seed(seed, static_cast<std::uint64_t>(i));
            std::mt19937_64 rng(s);
            const auto [x, y] = sample_near_top(f.arity(), std::max(profile.ell1, 1), rng);
            const ProtocolRun run = symmetric_and_protocol(f, x, y, config, s);
            const bool expected = f(x & y);
            const bool correct = run.output == expected;
            const bool fits = run.ledger.total() <= bound;
            wrong += !correct;
            within = within && fits;
            exact_ok = exact_ok && (inject > 0.0 || correct);
            Json line = {{"trial", i},       {"seed", s},         {"x", x},
                         {"y", y},           {"output", run.output}, {"expected", expected},
                         {"correct", correct}, {"cost_bound", bound}, {"within_bound", fits},
                         {"ledger", to_json(run.ledger)}};
            sink.stream() << line.dump() << '\n';
        }
    } else if (protocol == "bcw") {
        if (g_src.empty()) throw ParameterError("bcw needs --g");
        if (inject < 0.0 || inject > 1.0) throw ParameterError("--inject-error must lie in [0, 1]");
        const InnerFunction g = load_inner_function(g_src);
        const DecisionTree tree = optimal_decision_tree(f);
        BcwConfig config;
        config.g_protocol_cost = g_cost > 0 ? g_cost : g.bits_per_party() + 1;
        config.repetitions = repetitions > 0 ? repetitions : 1;
        config.inject_error = inject;
        const std::int64_t bound = bcw_cost_bound(tree, config);
        for (long i = 0; i < trials; ++i) {
            const std::uint64_t s = trial_seed(seed, static_cast<std::uint64_t>(i));
            std::mt19937_64 rng(s);
            const auto [x, y] = sample_composed_input(f.arity(), g, rng);
            const ProtocolRun run = bcw_compile_and_run(tree, g, config, x, y, s);
            const bool expected = composed_value(f, g, x, y) == Cell::one;
            const bool correct = run.output == expected;
            const bool fits = run.ledger.total() <= bound;
            wrong += !correct;
            within = within && fits;
            exact_ok = exact_ok && (inject > 0.0 || correct);
            Json line = {{"trial", i},       {"seed", s},         {"x", x},
                         {"y", y},           {"output", run.output}, {"expected", expected},
                         {"correct", correct}, {"cost_bound", bound}, {"within_bound", fits},
                         {"tree_depth", tree.depth()}, {"ledger", to_json(run.ledger)}};
            sink.stream() << line.dump() << '\n';
        }
    } else {
        throw ParseError("unknown protocol '" + protocol + "' (expected bcw or symand)");
    }
    err << "trials=" << trials << " wrong=" << wrong << " within_bound=" << (within ? "true" : "false") << '\n';
    return within && exact_ok ? kOk : kInvariantFailure;
}

// ---- batch ------------------------------------------------------------------

struct BatchCell {
    std::string f;
    std::string family;
    int k = 0;
};

std::vector<BatchCell> read_grid(const std::string& grid_path, const std::vector<std::string>& functions,
                                 const std::vector<std::string>& families, const std::vector<int>& ks) {
    std::vector<BatchCell> cells;
    if (!grid_path.empty()) {
        std::ifstream in(grid_path);
        if (!in) throw ParseError("cannot open '" + grid_path + "'");
        Json grid;
        try {
            grid = Json::parse(in);
            for (const auto& cell : grid.at("cells"))
                cells.push_back({cell.at("f").get<std::string>(), cell.at("family").get<std::string>(),
                                 cell.at("k").get<int>()});
        } catch (const Json::exception& e) {
            throw ParseError(std::string("malformed grid: ") + e.what());
        }
        return cells;
    }
    for (const auto& f : functions)
        for (const auto& fam : families)
            for (int k : ks) cells.push_back({f, fam, k});
    return cells;
}

int cmd_batch(const std::vector<BatchCell>& cells, const std::string& eps, const std::string& eps_prime,
              const Common& c, std::ostream& out) {
    const MainLemmaOptions options = lemma_options(eps, eps_prime, c);
    std::vector<std::string> rows(cells.size());
    std::vector<char> ok(cells.size(), 1);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const BatchCell& cell = cells[i];
        std::ostringstream row;
        row << cell.f << ',' << cell.family << ',' << cell.k << ',';
        try {
            const BooleanFunction f = load_boolean_function(cell.f);
            CertificateReport r;
            double bound = 0.0;
            bool rho_ok = false;
            if (cell.family == "ip") {
                const auto rep = ip_corollary_driver(f, cell.k, options);
                r = rep.certificate;
                bound = rep.rho_closed_form;
                rho_ok = rep.rho_within_closed_form;
                ok[i] = rep.ok();
            } else if (cell.family == "disj") {
                const auto rep = disj_lemma_driver(f, cell.k, options);
                r = rep.certificate;
                bound = rep.rho_bound;
                rho_ok = rep.rho_within_bound;
                ok[i] = rep.ok();
            } else {
                throw ParseError("unknown family '" + cell.family + "'");
            }
            const double h_norm = r.h_opnorm_exact ? *r.h_opnorm_exact : r.h_opnorm_bound;
            row << r.degree << ',' << fmt(r.rho) << ',' << fmt(bound) << ',' << (rho_ok ? "true" : "false") << ','
                << (r.precondition ? "true" : "false") << ',' << to_string(r.h_l1) << ','
                << to_string(r.inner_product) << ',' << fmt(h_norm) << ',' << r.norm_source << ','
                << fmt(r.tracenorm_lb) << ',' << fmt(r.qcc_bits) << ",";
        } catch (const Error& e) {
            std::string msg = e.what();
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            row << ",,,,,,,,,,,error: " << msg;
        }
        rows[i] = row.str();
    }
    Sink sink(c.out_path, out);
    sink.stream() << "f,family,k,degree,rho,rho_bound,rho_ok,precondition,h_l1,inner_product,h_opnorm,"
                     "norm_source,tracenorm_lb,qcc_bits,error\n";
    for (const auto& row : rows) sink.stream() << row << '\n';
    return std::all_of(ok.begin(), ok.end(), [](char v) { return v != 0; }) ? kOk : kInvariantFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"blockcomp: certificates and protocols for block-composed functions"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    long long limit_flag = 0;
    app.add_option("--out", common.out_path, "Write the report here instead of stdout");
    app.add_option("--max-materialize", limit_flag, "Dense size guard (overrides BLOCKCOMP_MAX_MATERIALIZE)")
        ->check(CLI::PositiveNumber);
    app.add_option("--lp-arity-cap", common.arity_cap, "Largest arity handed to the LP")->check(CLI::Range(1, 16));

    std::string f_src;
    std::string g_src;
    std::string eps = "1/3";
    std::string eps_prime = "1/6";
    std::string family = "ip";
    int k = 0;
    std::uint64_t seed = 1;

    auto* approx = app.add_subcommand("approxdeg", "Exact eps-approximate degree");
    approx->add_option("--f", f_src, "Function file or builtin (e.g. or:4)")->required();
    approx->add_option("--epsilon", eps, "Error as p/q");

    auto* witness = app.add_subcommand("witness", "Dual witness and its checks");
    witness->add_option("--f", f_src)->required();
    witness->add_option("--epsilon", eps);

    bool rectangles = false;
    auto* spec = app.add_subcommand("specdisc", "Spectral discrepancy certificate");
    spec->add_option("--family", family, "ip, disj or random");
    spec->add_option("--k", k, "Bits per party")->required();
    spec->add_option("--seed", seed);
    spec->add_option("--g", g_src, "Inner function file; uniform pair over the full cube");
    spec->add_flag("--rectangles", rectangles, "Also enumerate rectangles");

    int p = 0;
    std::optional<int> s_only;
    auto* knuth = app.add_subcommand("knuth", "Johnson-scheme spectra");
    knuth->add_option("--k", k)->required();
    knuth->add_option("--p", p)->required();
    knuth->add_option("--s", s_only);

    auto* lemma = app.add_subcommand("mainlemma", "Witness-matrix certificate for f composed with g");
    lemma->add_option("--f", f_src)->required();
    lemma->add_option("--family", family, "ip or disj");
    lemma->add_option("--k", k)->required();
    lemma->add_option("--epsilon", eps);
    lemma->add_option("--epsilon-prime", eps_prime);

    double paturi_c = 1.0;
    std::string case_text;
    std::optional<int> k_override;
    bool check = false;
    auto* reduce = app.add_subcommand("reduce", "Padding reduction plan for symmetric f");
    reduce->add_option("--f", f_src)->required();
    reduce->add_option("--c", paturi_c, "Paturi constant");
    reduce->add_option("--case", case_text, "small-ell0, large-ell0 or ell1");
    reduce->add_option("--k-override", k_override, "Test-scale block length");
    reduce->add_flag("--check", check, "Verify the composed identity exhaustively");

    std::string protocol;
    long trials = 100;
    std::string inject = "0";
    int repetitions = 0;
    long g_cost = 0;
    double c_ham = 1.0;
    auto* sim = app.add_subcommand("simulate", "Monte-Carlo protocol runs, one JSON line per trial");
    sim->add_option("--protocol", protocol, "bcw or symand")->required();
    sim->add_option("--f", f_src)->required();
    sim->add_option("--g", g_src);
    sim->add_option("--trials", trials);
    sim->add_option("--seed", seed);
    sim->add_option("--inject-error", inject, "Per-invocation error probability, p/q or decimal");
    sim->add_option("--repetitions", repetitions, "Override the repetition count");
    sim->add_option("--g-cost", g_cost, "Bits per g-subprotocol run (default k+1)");
    sim->add_option("--c-ham", c_ham);

    std::string grid;
    std::vector<std::string> functions;
    std::vector<std::string> families;
    std::vector<int> ks;
    auto* batch = app.add_subcommand("batch", "CSV table over a grid of (f, family, k)");
    batch->add_option("--grid", grid, "JSON file {\"cells\": [{\"f\", \"family\", \"k\"}]}");
    batch->add_option("--functions", functions)->delimiter(',');
    batch->add_option("--families", families)->delimiter(',');
    batch->add_option("--ks", ks)->delimiter(',');
    batch->add_option("--epsilon", eps);
    batch->add_option("--epsilon-prime", eps_prime);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = e.get_exit_code();
        if (code == 0) {
            out << app.help();
            return kOk;
        }
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        common.materialize_limit = limit_flag > 0 ? static_cast<std::size_t>(limit_flag) : materialize_limit_from_env();
        if (*approx) return cmd_approxdeg(f_src, eps, common, out);
        if (*witness) return cmd_witness(f_src, eps, common, out);
        if (*spec) return cmd_specdisc(family, k, seed, g_src, rectangles, common, out);
        if (*knuth) return cmd_knuth(k, p, s_only, common, out);
        if (*lemma) return cmd_mainlemma(f_src, family, k, eps, eps_prime, common, out);
        if (*reduce) return cmd_reduce(f_src, paturi_c, case_text, k_override, check, common, out);
        if (*sim)
            return cmd_simulate(protocol, f_src, g_src, trials, seed, to_double(parse_rational(inject)), repetitions,
                                g_cost, c_ham, common, out, err);
        if (*batch) return cmd_batch(read_grid(grid, functions, families, ks), eps, eps_prime, common, out);
    } catch (const InvariantFailure& e) {
        err << "invariant failure: " << e.what() << '\n';
        return kInvariantFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace blockcomp::cli
