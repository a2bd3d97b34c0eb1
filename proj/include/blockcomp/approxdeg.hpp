#pragma once

#include "blockcomp/boolcube.hpp"
#include "blockcomp/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

namespace blockcomp {

/// Largest arity for which the exact LP is attempted.
inline constexpr int kDefaultLpArityCap = 12;

/// Polynomial in the character basis: w -> alpha_w.
using CharacterPolynomial = std::map<std::uint64_t, Rational>;

/// All w with |w| <= max_weight, ordered by weight then index.
std::vector<std::uint64_t> monomials_up_to(int n, int max_weight);

/// Exact evaluation of sum_w alpha_w chi_w(x) at every x.
std::vector<Rational> evaluate_polynomial(int n, const CharacterPolynomial& p);

/// A signed measure q on the cube, orthogonal to every chi_w with |w| <= D and
/// satisfying q^T f > eps * ||q||_1 (unnormalized Farkas certificate).
struct InfeasibilityCertificate {
    std::vector<Rational> q;
};

/// Outcome of deciding the degree-D approximation system: exactly one of a
/// feasible polynomial or a certificate is produced, each re-verified exactly.
using Feasibility = std::variant<CharacterPolynomial, InfeasibilityCertificate>;

Feasibility decide_feasibility(const BooleanFunction& f, const Rational& epsilon, int degree_cap);

std::optional<CharacterPolynomial> lp_feasible(const BooleanFunction& f, const Rational& epsilon, int degree_cap);

struct ApproxDegreeResult {
    Rational epsilon;
    int degree = 0;
    CharacterPolynomial coefficients;
};

ApproxDegreeResult approx_degree(const BooleanFunction& f, const Rational& epsilon,
                                 int arity_cap = kDefaultLpArityCap);

/// Exact values and pass/fail of the four witness properties.
struct WitnessReport {
    Rational q_dot_f;
    Rational l1_norm;
    Rational max_abs_fourier;
    int min_support_weight = 0;
    bool a = false;  // q^T f = 1
    bool b = false;  // ||q||_1 <= 1/eps (strict unless l1_at_bound)
    bool l1_at_bound = false;
    bool c = false;  // |hat q_w| <= 1/(2^n eps)
    bool d = false;  // hat q_w = 0 for |w| < degree

    bool all() const { return a && b && c && d; }
};

struct DualWitness {
    int n = 0;
    Rational epsilon;
    int degree = 0;
    std::vector<Rational> q;  // indexed by x
    FourierSpectrum spectrum;
    WitnessReport report;
};

/// Extracts q from the certificate at support |w| < deg_eps(f), scaled so
/// that q^T f = 1. Throws WitnessNotApplicable when deg_eps(f) = 0.
DualWitness dual_witness(const BooleanFunction& f, const Rational& epsilon, int arity_cap = kDefaultLpArityCap);

/// Re-derives every property of a witness from q alone.
WitnessReport verify_witness(const DualWitness& witness, const BooleanFunction& f);

/// deg_eps(f) / sqrt(n (ell0 + ell1)) for a symmetric f.
double paturi_check(const BooleanFunction& f, const Rational& epsilon, int arity_cap = kDefaultLpArityCap);

void check_epsilon(const Rational& epsilon);

}  // namespace blockcomp
