#include "blockcomp/json_io.hpp"

#include "blockcomp/errors.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace blockcomp {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, sep)) parts.push_back(part);
    return parts;
}

long parse_long(const std::string& text, const std::string& what) {
    long value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty())
        throw ParseError("expected an integer for " + what + ", got '" + text + "'");
    return value;
}

int parse_int_arg(const std::vector<std::string>& parts, std::size_t i, const std::string& spec) {
    if (i >= parts.size()) throw ParseError("builtin '" + spec + "' is missing an argument");
    return static_cast<int>(parse_long(parts[i], spec));
}

void check_arity(int n) {
    if (n < 1 || n > kMaxArity) throw ParseError("arity must lie in [1, " + std::to_string(kMaxArity) + "]");
}

Json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw ParseError("'" + path + "' is not valid JSON: " + e.what());
    }
}

Json optional_double(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

BooleanFunction boolean_function_from_json(const Json& j) {
    try {
        const int n = j.at("n").get<int>();
        check_arity(n);
        const auto bits = j.at("bits").get<std::string>();
        if (bits.size() != (std::size_t{1} << n))
            throw ParseError("truth table has " + std::to_string(bits.size()) + " entries, expected 2^" +
                             std::to_string(n));
        std::vector<std::uint8_t> table(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] != '0' && bits[i] != '1')
                throw ParseError("truth table entry " + std::to_string(i) + " is '" + bits[i] + "', expected 0 or 1");
            table[i] = bits[i] == '1';
        }
        return BooleanFunction(n, std::move(table));
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed Boolean function: ") + e.what());
    }
}

Json to_json(const BooleanFunction& f) {
    std::string bits(f.size(), '0');
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f(i)) bits[i] = '1';
    return {{"n", f.arity()}, {"bits", bits}};
}

InnerFunction inner_function_from_json(const Json& j) {
    try {
        const int k = j.at("k").get<int>();
        if (k < 1 || k > kMaxPartyBits)
            throw ParseError("k must lie in [1, " + std::to_string(kMaxPartyBits) + "]");
        const std::size_t side = std::size_t{1} << k;
        const auto& rows = j.at("rows");
        if (!rows.is_array() || rows.size() != side)
            throw ParseError("inner function needs 2^" + std::to_string(k) + " rows");
        std::vector<Cell> cells;
        cells.reserve(side * side);
        for (const auto& row : rows) {
            if (!row.is_array() || row.size() != side)
                throw ParseError("inner function rows need 2^" + std::to_string(k) + " entries");
            for (const auto& e : row) {
                const std::string s = e.is_string() ? e.get<std::string>() : e.dump();
                if (s == "0") cells.push_back(Cell::zero);
                else if (s == "1") cells.push_back(Cell::one);
                else if (s == "u") cells.push_back(Cell::undefined);
                else throw ParseError("inner function entry '" + s + "' is not 0, 1 or u");
            }
        }
        return InnerFunction(k, std::move(cells));
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed inner function: ") + e.what());
    }
}

Json to_json(const InnerFunction& g) {
    Json rows = Json::array();
    for (std::uint64_t x = 0; x < g.side(); ++x) {
        Json row = Json::array();
        for (std::uint64_t y = 0; y < g.side(); ++y) {
            const Cell c = g.at(x, y);
            row.push_back(c == Cell::undefined ? "u" : c == Cell::one ? "1" : "0");
        }
        rows.push_back(std::move(row));
    }
    return {{"k", g.bits_per_party()}, {"rows", std::move(rows)}};
}

BooleanFunction builtin_boolean_function(const std::string& spec) {
    const auto parts = split(spec, ':');
    if (parts.empty()) throw ParseError("empty function spec");
    const std::string& name = parts[0];
    if (name == "sym") {
        if (parts.size() != 2 || parts[1].size() < 2) throw ParseError("sym needs at least two weight values");
        std::vector<std::uint8_t> values;
        for (char ch : parts[1]) {
            if (ch != '0' && ch != '1') throw ParseError("sym values must be 0 or 1");
            values.push_back(ch == '1');
        }
        check_arity(static_cast<int>(values.size()) - 1);
        return symmetric_function(values);
    }
    const int n = parse_int_arg(parts, 1, spec);
    check_arity(n);
    if (name == "or") return or_function(n);
    if (name == "and") return and_function(n);
    if (name == "parity") return parity_function(n);
    if (name == "maj") return majority_function(n);
    if (name == "threshold") return threshold_function(n, parse_int_arg(parts, 2, spec));
    if (name == "dictator") {
        const int i = parse_int_arg(parts, 2, spec);
        if (i < 0 || i >= n) throw ParseError("dictator index out of range");
        return dictator_function(n, i);
    }
    if (name == "const") return constant_function(n, parse_int_arg(parts, 2, spec) != 0);
    throw ParseError("unknown function '" + name + "'");
}

InnerFunction builtin_inner_function(const std::string& spec) {
    const auto parts = split(spec, ':');
    if (parts.empty()) throw ParseError("empty inner function spec");
    const std::string& name = parts[0];
    if (name == "and") return and_inner_function();
    const int k = parse_int_arg(parts, 1, spec);
    if (k < 1 || k > kMaxPartyBits) throw ParseError("k must lie in [1, " + std::to_string(kMaxPartyBits) + "]");
    if (name == "ip") return inner_product_function(k);
    if (name == "disj") return disjointness_function(k);
    if (name == "disj1") {
        if (k % 3 != 0) throw ParseError("disj1 needs 3 | k");
        return disjointness_restricted(k);
    }
    if (name == "random") return random_inner_function(k, static_cast<std::uint64_t>(parse_int_arg(parts, 2, spec)));
    throw ParseError("unknown inner function '" + name + "'");
}

BooleanFunction load_boolean_function(const std::string& source) {
    if (std::filesystem::is_regular_file(source)) return boolean_function_from_json(read_file(source));
    return builtin_boolean_function(source);
}

InnerFunction load_inner_function(const std::string& source) {
    if (std::filesystem::is_regular_file(source)) return inner_function_from_json(read_file(source));
    return builtin_inner_function(source);
}

Json to_json(const std::vector<Rational>& values) {
    Json out = Json::array();
    for (const auto& v : values) out.push_back(to_string(v));
    return out;
}

Json to_json(const ApproxDegreeResult& result) {
    Json coeffs = Json::object();
    for (const auto& [w, a] : result.coefficients) coeffs[std::to_string(w)] = to_string(a);
    return {{"epsilon", to_string(result.epsilon)}, {"degree", result.degree}, {"coefficients", coeffs}};
}

Json to_json(const WitnessReport& report) {
    return {{"q_dot_f", to_string(report.q_dot_f)},
            {"l1_norm", to_string(report.l1_norm)},
            {"max_abs_fourier", to_string(report.max_abs_fourier)},
            {"min_support_weight", report.min_support_weight},
            {"a", report.a},
            {"b", report.b},
            {"l1_at_bound", report.l1_at_bound},
            {"c", report.c},
            {"d", report.d},
            {"all", report.all()}};
}

Json to_json(const DualWitness& witness) {
    return {{"n", witness.n},
            {"epsilon", to_string(witness.epsilon)},
            {"degree", witness.degree},
            {"q", to_json(witness.q)},
            {"fourier", to_json(witness.spectrum.coeffs)},
            {"checks", to_json(witness.report)}};
}

Json to_json(const SpectralDiscrepancyCert& cert) {
    return {{"sum_norm", cert.sum_norm},
            {"diff_norm", cert.diff_norm},
            {"sum_scaled", cert.sum_scaled},
            {"diff_scaled", cert.diff_scaled},
            {"rho", cert.rho},
            {"norm_method", cert.norm_method},
            {"ka", cert.ka},
            {"kb", cert.kb},
            {"qcc_bits_lower", optional_double(cert.qcc_bits_lower())}};
}

Json to_json(const CertificateReport& r) {
    return {{"n", r.n},
            {"k", r.k},
            {"ka", r.ka},
            {"kb", r.kb},
            {"epsilon", to_string(r.epsilon)},
            {"epsilon_prime", to_string(r.epsilon_prime)},
            {"degree", r.degree},
            {"rho", r.rho},
            {"precondition_rho_le_d_over_2en", r.precondition},
            {"q_l1", to_string(r.q_l1)},
            {"h_l1", to_string(r.h_l1)},
            {"inner_product", to_string(r.inner_product)},
            {"pair_supported", r.pair_supported},
            {"h_opnorm_exact", optional_double(r.h_opnorm_exact)},
            {"h_opnorm_fourier", r.h_opnorm_fourier},
            {"h_opnorm_bound", r.h_opnorm_bound},
            {"h_opnorm_closed_form", optional_double(r.h_opnorm_closed_form)},
            {"norm_source", r.norm_source},
            {"tracenorm_lb", r.tracenorm_lb},
            {"implied_degree_bound", r.implied_degree_bound},
            {"qcc_bits", r.qcc_bits},
            {"qcc_constant", "none applied"},
            {"tracenorm_closed_form", optional_double(r.tracenorm_closed_form)},
            {"qcc_bits_closed_form", optional_double(r.qcc_bits_closed_form)},
            {"l1_matches", r.l1_matches},
            {"inner_product_is_one", r.inner_product_is_one},
            {"exact_within_bound", r.exact_within_bound},
            {"ok", r.ok()}};
}

Json to_json(const IpCorollaryReport& r) {
    return {{"certificate", to_json(r.certificate)},
            {"rho_closed_form", r.rho_closed_form},
            {"rho_within_closed_form", r.rho_within_closed_form},
            {"k_condition", r.k_condition},
            {"closed_form_small", r.closed_form_small},
            {"ok", r.ok()}};
}

Json to_json(const DisjLemmaReport& r) {
    return {{"certificate", to_json(r.certificate)},
            {"sum_scaled", r.sum_scaled},
            {"diff_scaled", r.diff_scaled},
            {"rho_bound", r.rho_bound},
            {"rho_within_bound", r.rho_within_bound},
            {"k_condition", r.k_condition},
            {"ok", r.ok()}};
}

Json to_json(const ReductionPlan& p) {
    Json inspections = Json::object();
    for (const auto& [name, ok] : p.inspections) inspections[name] = ok;
    return {{"case", to_string(p.which)},
            {"n", p.n},
            {"ell0", p.ell0},
            {"ell1", p.ell1},
            {"c", p.c},
            {"alpha", p.alpha},
            {"beta", p.beta},
            {"n_prime", p.n_prime},
            {"blocks", p.blocks},
            {"k_formula", p.k_formula},
            {"k", p.k},
            {"k_overridden", p.k_overridden},
            {"n_prime_capped", p.n_prime_capped},
            {"f_ones", p.f_ones},
            {"f_zeros", p.f_zeros},
            {"composed_ones", p.composed_ones},
            {"composed_zeros", p.composed_zeros},
            {"degree", p.degree},
            {"degree_from_lp", p.degree_from_lp},
            {"inspections", inspections}};
}

Json to_json(const CostLedger& ledger) {
    Json calls = Json::array();
    for (const auto& [name, bits] : ledger.subprotocol_invocations) calls.push_back({name, bits});
    return {{"bits_sent_alice", ledger.bits_sent_alice},
            {"bits_sent_bob", ledger.bits_sent_bob},
            {"subprotocol_bits", ledger.subprotocol_bits()},
            {"subprotocol_invocations", calls},
            {"notes", ledger.notes},
            {"rng_seed", ledger.rng_seed},
            {"total", ledger.total()}};
}

}  // namespace blockcomp
