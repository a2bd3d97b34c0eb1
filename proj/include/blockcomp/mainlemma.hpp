#pragma once

#include "blockcomp/approxdeg.hpp"
#include "blockcomp/boolcube.hpp"
#include "blockcomp/rational.hpp"
#include "blockcomp/specdisc.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace blockcomp {

/// h = sum_z q(z) (x)_i mu_{z_i}. The tensor form (q plus the pair) is always
/// present; the dense form over (I_A)^n x (I_B)^n only when requested.
///
/// Dense layout: row r has base-K_A digits a_1..a_n (a_1 least significant),
/// block i of Alice's input is pair.rows[a_i]; columns likewise.
struct WitnessMatrix {
    int n = 0;
    int degree = 0;
    Rational epsilon;
    std::vector<Rational> q;
    DistributionPair pair;
    std::optional<Eigen::MatrixXd> dense;

    std::size_t rows() const;
    std::size_t cols() const;
    /// Entrywise L1 norm from the tensor form. Needs disjoint mu supports.
    Rational l1_norm() const;
};

/// True when (K_A)^n and (K_B)^n both fit under limit.
bool within_materialize_guard(const DistributionPair& pair, int n, std::size_t limit);

WitnessMatrix build_witness_matrix(const DualWitness& witness, const DistributionPair& pair, bool materialize,
                                   std::size_t limit = kDefaultMaterializeLimit);

/// sum_{|w| >= d} hat q_w (mu0 + mu1)^{(x) w-bar} (x) (mu0 - mu1)^{(x) w}, dense.
Eigen::MatrixXd witness_fourier_form(const WitnessMatrix& h, std::size_t limit = kDefaultMaterializeLimit);

/// f box g restricted to (I_A x I_B)^n, in the dense layout of WitnessMatrix.
struct RestrictedComposition {
    Eigen::MatrixXd value;
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> defined;
};

RestrictedComposition restrict_composition(const BooleanFunction& f, const InnerFunction& g,
                                           const DistributionPair& pair,
                                           std::size_t limit = kDefaultMaterializeLimit);

/// tr(h^T F) for F = f box g, computed block by block without materializing:
/// sum_z q(z) sum_v f(v) prod_i P_{z_i}(v_i), where P_b(v) is the mu_b mass on
/// the cells with g = v. Mass on undefined cells contributes nothing.
Rational inner_product_with_composition(const WitnessMatrix& h, const BooleanFunction& f, const InnerFunction& g);

struct OpnormBound {
    /// (1+rho)^n / (eps (K_A K_B)^{n/2}) * sum_{l >= d} C(n, l) rho^l.
    double bound = 0.0;
    /// sum_{|w| >= d} |hat q_w| ||mu0 + mu1||^{n-|w|} ||mu0 - mu1||^{|w|} with measured norms.
    double fourier_sum = 0.0;
    /// rho <= d / (2en).
    bool closed_form_valid = false;
    /// 2 / (eps (K_A K_B)^{n/2}) e^{-d/2}.
    double closed_form = 0.0;
};

OpnormBound opnorm_bound(const DualWitness& witness, const SpectralDiscrepancyCert& cert);

struct TraceNormCertificate {
    double numerator = 0.0;  // |tr(h^T F~)| over the domain
    double h_norm = 0.0;
    std::string norm_source;  // "exact" or "bound"
    double value = 0.0;       // numerator / h_norm
    double guaranteed = 0.0;  // (1 - eps'/eps) / h_norm
};

/// Lower bound on ||F~||_tr. Throws DomainViolation when F~ strays more than
/// eps' from F on the domain. h_norm_bound is used when h is not dense.
TraceNormCertificate trace_norm_certificate(const WitnessMatrix& h, const RestrictedComposition& composed,
                                            const Eigen::MatrixXd& f_tilde, const Rational& epsilon,
                                            const Rational& epsilon_prime, double h_norm_bound);

struct CertificateReport {
    int n = 0;
    int k = 0;
    std::size_t ka = 0;
    std::size_t kb = 0;
    Rational epsilon;
    Rational epsilon_prime;
    int degree = 0;
    double rho = 0.0;
    bool precondition = false;  // rho <= d / (2en)

    Rational q_l1;
    Rational h_l1;
    Rational inner_product;
    bool pair_supported = false;

    std::optional<double> h_opnorm_exact;
    double h_opnorm_fourier = 0.0;
    double h_opnorm_bound = 0.0;
    std::optional<double> h_opnorm_closed_form;
    std::string norm_source;

    double tracenorm_lb = 0.0;
    /// d' with (1/24)(K_A K_B)^{n/2} e^{d'/2} = tracenorm_lb.
    double implied_degree_bound = 0.0;
    /// log2(tracenorm_lb / sqrt((K_A K_B)^n)); no hidden constant applied.
    double qcc_bits = 0.0;
    std::optional<double> tracenorm_closed_form;
    std::optional<double> qcc_bits_closed_form;

    bool l1_matches = false;
    bool inner_product_is_one = false;
    bool exact_within_bound = true;

    bool ok() const { return pair_supported && l1_matches && inner_product_is_one && exact_within_bound; }
};

struct MainLemmaOptions {
    Rational epsilon{1, 3};
    Rational epsilon_prime{1, 6};
    std::size_t materialize_limit = kDefaultMaterializeLimit;
    int arity_cap = kDefaultLpArityCap;
};

CertificateReport mainlemma_certify(const BooleanFunction& f, const DistributionPair& pair, const InnerFunction& g,
                                    const MainLemmaOptions& options = {});

}  // namespace blockcomp
