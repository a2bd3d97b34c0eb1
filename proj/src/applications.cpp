#include "blockcomp/applications.hpp"

#include "blockcomp/approxdeg.hpp"
#include "blockcomp/errors.hpp"
#include "blockcomp/specdisc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace blockcomp {

IpCorollaryReport ip_corollary_driver(const BooleanFunction& f, int k, const MainLemmaOptions& options) {
    if (f.is_constant()) throw WitnessNotApplicable("f is constant; there is nothing to certify");
    IpCorollaryReport out;
    const DistributionPair pair = ip_pair(k);
    out.certificate = mainlemma_certify(f, pair, inner_product_function(k), options);
    const double n = f.arity();
    out.rho_closed_form = ip_rho_bound(k);
    out.rho_within_closed_form = out.certificate.rho <= out.rho_closed_form + 1e-12;
    out.k_condition = k >= 2.0 * std::log2(n) + 5.0;
    out.closed_form_small = out.rho_closed_form <= 1.0 / (2.0 * std::numbers::e * n);
    return out;
}

DisjLemmaReport disj_lemma_driver(const BooleanFunction& f, int k, const MainLemmaOptions& options) {
    if (f.is_constant()) throw WitnessNotApplicable("f is constant; there is nothing to certify");
    DisjLemmaReport out;
    const DistributionPair pair = disj_pair(k);
    const SpectralDiscrepancyCert cert = spectral_certificate(pair);
    out.sum_scaled = cert.sum_scaled;
    out.diff_scaled = cert.diff_scaled;
    out.certificate = mainlemma_certify(f, pair, disjointness_restricted(k), options);
    out.rho_bound = 3.0 / k;
    out.rho_within_bound = out.certificate.rho <= out.rho_bound + 1e-12;
    const int d = out.certificate.degree;
    out.k_condition = d > 0 && k >= 6.0 * std::numbers::e * f.arity() / d;
    return out;
}

std::string to_string(ReductionCase c) {
    switch (c) {
        case ReductionCase::small_ell0: return "small-ell0";
        case ReductionCase::large_ell0: return "large-ell0";
        case ReductionCase::ell1: return "ell1";
    }
    return "?";
}

ReductionCase parse_reduction_case(const std::string& text) {
    if (text == "small-ell0") return ReductionCase::small_ell0;
    if (text == "large-ell0") return ReductionCase::large_ell0;
    if (text == "ell1") return ReductionCase::ell1;
    throw ParseError("unknown reduction case '" + text + "' (expected small-ell0, large-ell0 or ell1)");
}

namespace {

int round_up_to_three(int k) { return 3 * ((k + 2) / 3); }

bool value_at_weight(const BooleanFunction& f, int m) {
    return f((std::uint64_t{1} << m) - 1);
}

// deg(f') from the LP when small enough, otherwise the Paturi stand-in.
void fill_degree(ReductionPlan& plan, const BooleanFunction& f_prime, double stand_in, const ReductionOptions& options) {
    if (f_prime.arity() <= options.arity_cap) {
        plan.degree = approx_degree(f_prime, options.epsilon, options.arity_cap).degree;
        plan.degree_from_lp = true;
    } else {
        plan.degree = stand_in;
        plan.degree_from_lp = false;
    }
}

}  // namespace

ReductionPlan reduction_plan(const BooleanFunction& f, double c, const ReductionOptions& options) {
    if (!(c > 0.0)) throw ParameterError("the Paturi constant c must be positive");
    const SymmetricProfile profile = symmetric_profile(f);
    ReductionPlan plan;
    plan.n = f.arity();
    plan.ell0 = profile.ell0;
    plan.ell1 = profile.ell1;
    plan.c = c;
    plan.beta = std::min(std::cbrt(2.0), std::pow(c / (12.0 * std::numbers::e), 2.0 / 3.0));
    plan.alpha = std::pow(plan.beta / 2.0, 1.5);
    const int n = plan.n;

    if (options.force_case) {
        plan.which = *options.force_case;
    } else if (plan.ell0 >= 1) {
        plan.which = plan.ell0 <= plan.alpha * n ? ReductionCase::small_ell0 : ReductionCase::large_ell0;
    } else if (plan.ell1 >= 1) {
        plan.which = ReductionCase::ell1;
    } else {
        throw ParameterError("f has ell0 = ell1 = 0; no reduction applies");
    }
    if (plan.which != ReductionCase::ell1 && plan.ell0 < 1)
        throw ParameterError("the ell0 cases need ell0 >= 1");
    if (plan.which == ReductionCase::ell1 && plan.ell1 < 1) throw ParameterError("the ell1 case needs ell1 >= 1");
    if (options.k_override && (*options.k_override < 3 || *options.k_override % 3 != 0))
        throw ParameterError("k override must be a positive multiple of 3");
    plan.k_overridden = options.k_override.has_value();

    if (plan.which == ReductionCase::small_ell0) {
        plan.n_prime = static_cast<int>(std::floor(plan.beta * std::pow(n, 2.0 / 3.0) * std::cbrt(plan.ell0)));
        if (plan.k_overridden) {
            plan.k = *options.k_override;
            if (plan.n_prime * plan.k > n) {
                plan.n_prime = n / plan.k;
                plan.n_prime_capped = true;
            }
        }
        if (plan.n_prime < 1) throw ParameterError("n' = " + std::to_string(plan.n_prime) + " < 1");
        plan.inspections.emplace_back("n_prime<=n", plan.n_prime <= n);
        if (plan.n_prime > n) throw ParameterError("n' exceeds n");
        const BooleanFunction f_prime = pad_restrict(f, 0, n - plan.n_prime);
        fill_degree(plan, f_prime, c * std::sqrt(static_cast<double>(plan.n_prime) * plan.ell0), options);
        plan.inspections.emplace_back("degree_positive", plan.degree > 0.0);
        if (plan.degree > 0.0) {
            plan.k_formula = static_cast<int>(std::ceil(6.0 * std::numbers::e * plan.n_prime / plan.degree));
        } else if (!plan.k_overridden) {
            throw ParameterError("f_{n'} is constant; k is undefined");
        }
        if (!plan.k_overridden) plan.k = round_up_to_three(plan.k_formula);
        plan.blocks = plan.n_prime;
        plan.f_ones = 0;
        plan.f_zeros = n - plan.n_prime;
        plan.composed_ones = 0;
        plan.composed_zeros = n - plan.n_prime * plan.k;
        plan.inspections.emplace_back("ell0<=n_prime/2", 2 * plan.ell0 <= plan.n_prime);
        plan.inspections.emplace_back("ell0(f_n')>=ell0", symmetric_profile(f_prime).ell0 >= plan.ell0);
        plan.inspections.emplace_back("n_prime*k<=n", plan.n_prime * plan.k <= n);
    } else {
        plan.k_formula = static_cast<int>(std::ceil(6.0 * std::numbers::sqrt2 * std::numbers::e / c));
        plan.k = plan.k_overridden ? *options.k_override : round_up_to_three(plan.k_formula);
        const int k = plan.k;
        if (plan.which == ReductionCase::large_ell0) {
            plan.n_prime = std::min((n - plan.ell0 + 1) / (2 * k - 1), plan.ell0 - 1);
            plan.f_ones = plan.ell0 - 1 - plan.n_prime;
            plan.composed_zeros = n - plan.f_ones - 2 * k * plan.n_prime;
        } else {
            plan.n_prime = plan.ell1 / (2 * k - 1);
            plan.f_ones = n - plan.ell1 - plan.n_prime;
            plan.composed_zeros = n - 2 * k * plan.n_prime - plan.f_ones;
        }
        if (plan.n_prime < 1) throw ParameterError("n' = " + std::to_string(plan.n_prime) + " < 1");
        plan.blocks = 2 * plan.n_prime;
        plan.f_zeros = n - 2 * plan.n_prime - plan.f_ones;
        plan.composed_ones = plan.f_ones;
        if (plan.pads_non_negative()) {
            const BooleanFunction f_prime = pad_restrict(f, plan.f_ones, plan.f_zeros);
            fill_degree(plan, f_prime, std::numbers::sqrt2 * c * plan.n_prime, options);
            const int np = plan.n_prime;
            plan.inspections.emplace_back("flip_at_n_prime",
                                          value_at_weight(f_prime, np) != value_at_weight(f_prime, np + 1));
            plan.inspections.emplace_back(
                "k>=6e(2n')/deg",
                plan.degree > 0.0 && k >= 6.0 * std::numbers::e * 2.0 * np / plan.degree);
        }
    }
    plan.inspections.emplace_back("pads_non_negative", plan.pads_non_negative());
    if (!plan.pads_non_negative())
        throw ParameterError("a pad count is negative (f: " + std::to_string(plan.f_ones) + " ones, " +
                             std::to_string(plan.f_zeros) + " zeros; composed: " +
                             std::to_string(plan.composed_ones) + " ones, " + std::to_string(plan.composed_zeros) +
                             " zeros)");
    return plan;
}

bool padding_identity_check(const ReductionPlan& plan, const BooleanFunction& f, std::size_t limit) {
    if (!plan.pads_non_negative()) throw ParameterError("plan has a negative pad count");
    if (plan.k < 3 || plan.k % 3 != 0) throw ParameterError("DISJ^{<=1}_k needs 3 | k");
    const int n = f.arity();
    if (n - plan.f_ones - plan.f_zeros != plan.blocks)
        throw ArityMismatch("f pads leave " + std::to_string(n - plan.f_ones - plan.f_zeros) + " variables, plan has " +
                            std::to_string(plan.blocks) + " blocks");
    const int width = plan.blocks * plan.k;
    if (width + plan.composed_ones + plan.composed_zeros != n)
        throw ArityMismatch("composed pads do not fill n = " + std::to_string(n) + " positions");
    if (width > 64) throw SizeGuardExceeded("composed input exceeds 64 bits");

    const auto subsets = subsets_lex(plan.k, plan.k / 3);
    std::size_t rows = 1;
    for (int i = 0; i < plan.blocks; ++i) {
        if (rows > limit / subsets.size())
            throw SizeGuardExceeded("identity check would enumerate more than " + std::to_string(limit) +
                                    " inputs per party");
        rows *= subsets.size();
    }

    const BooleanFunction f_prime = pad_restrict(f, plan.f_ones, plan.f_zeros);
    const InnerFunction disj = disjointness_restricted(plan.k);
    const InnerFunction conj = and_inner_function();
    const std::uint64_t ones_mask = ((std::uint64_t{1} << plan.composed_ones) - 1) << width;

    std::vector<std::uint64_t> inputs(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        std::uint64_t x = 0;
        std::size_t rr = r;
        for (int i = 0; i < plan.blocks; ++i, rr /= subsets.size())
            x |= subsets[rr % subsets.size()] << (static_cast<unsigned>(i) * static_cast<unsigned>(plan.k));
        inputs[r] = x;
    }

    bool holds = true;
#pragma omp parallel for schedule(static) reduction(&& : holds)
    for (std::size_t r = 0; r < rows; ++r) {
        const std::uint64_t x = inputs[r];
        for (std::size_t c = 0; c < rows; ++c) {
            const std::uint64_t y = inputs[c];
            const Cell lhs = composed_value(f_prime, disj, x, y);
            if (lhs == Cell::undefined) continue;
            const Cell rhs = composed_value(f, conj, x | ones_mask, y | ones_mask);
            if (lhs != rhs) holds = false;
        }
    }
    return holds;
}

}  // namespace blockcomp
