#pragma once

#include "blockcomp/boolcube.hpp"
#include "blockcomp/mainlemma.hpp"
#include "blockcomp/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace blockcomp {

struct IpCorollaryReport {
    CertificateReport certificate;
    double rho_closed_form = 0.0;  // 1/sqrt(2^k - 1)
    bool rho_within_closed_form = false;
    bool k_condition = false;      // k >= 2 log2 n + 5
    bool closed_form_small = false;  // 1/sqrt(2^k - 1) <= 1/(2en)

    bool ok() const { return certificate.ok() && rho_within_closed_form && (!k_condition || closed_form_small); }
};

IpCorollaryReport ip_corollary_driver(const BooleanFunction& f, int k, const MainLemmaOptions& options = {});

struct DisjLemmaReport {
    CertificateReport certificate;
    double sum_scaled = 0.0;
    double diff_scaled = 0.0;
    double rho_bound = 0.0;  // 3/k
    bool rho_within_bound = false;
    bool k_condition = false;  // k >= 6en/d

    bool ok() const { return certificate.ok() && rho_within_bound && (!k_condition || certificate.precondition); }
};

DisjLemmaReport disj_lemma_driver(const BooleanFunction& f, int k, const MainLemmaOptions& options = {});

enum class ReductionCase { small_ell0, large_ell0, ell1 };

std::string to_string(ReductionCase c);
ReductionCase parse_reduction_case(const std::string& text);

/// Padding reduction from f_{n'} box DISJ^{<=1}_k to f_n box AND.
///
/// f_{n'}(x) = f_n(x 1^f_ones 0^f_zeros) has `blocks` variables. The composed
/// identity pads each party's blocks*k bits with composed_ones ones and then
/// composed_zeros zeros.
struct ReductionPlan {
    ReductionCase which = ReductionCase::small_ell0;
    int n = 0;
    int ell0 = 0;
    int ell1 = 0;
    double c = 1.0;
    double alpha = 0.0;
    double beta = 0.0;

    int n_prime = 0;
    int blocks = 0;
    /// k as the formula gives it, then rounded up to a multiple of 3 for DISJ^{<=1}.
    int k_formula = 0;
    int k = 0;
    bool k_overridden = false;
    bool n_prime_capped = false;

    int f_ones = 0;
    int f_zeros = 0;
    int composed_ones = 0;
    int composed_zeros = 0;

    /// deg(f_{n'}) from the LP, or the Paturi expression when out of reach.
    double degree = 0.0;
    bool degree_from_lp = false;

    std::vector<std::pair<std::string, bool>> inspections;

    bool pads_non_negative() const {
        return f_ones >= 0 && f_zeros >= 0 && composed_ones >= 0 && composed_zeros >= 0;
    }
};

struct ReductionOptions {
    std::optional<ReductionCase> force_case;
    /// Test-scale block length; n' is capped so the pads stay non-negative.
    std::optional<int> k_override;
    int arity_cap = 8;
    Rational epsilon{1, 3};
};

/// Throws NotSymmetric, ParameterError when no case applies or the
/// construction degenerates (n' < 1, negative pads).
ReductionPlan reduction_plan(const BooleanFunction& f, double c, const ReductionOptions& options = {});

/// Exhaustive check of (f_{n'} box DISJ^{<=1}_k)(x, y) = (f_n box AND)(x 1.. 0.., y 1.. 0..)
/// over every domain point. Throws ParameterError on negative pads,
/// ArityMismatch when the pads do not add up to n, SizeGuardExceeded when
/// either side has more than limit domain rows.
bool padding_identity_check(const ReductionPlan& plan, const BooleanFunction& f,
                            std::size_t limit = kDefaultMaterializeLimit);

}  // namespace blockcomp
