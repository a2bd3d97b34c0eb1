#pragma once

#include "blockcomp/boolcube.hpp"
#include "blockcomp/linalg.hpp"
#include "blockcomp/rational.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace blockcomp {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// A pair of b-distributions on I_A x I_B, stored exactly as integer weight
/// matrices over a common denominator: mu_b(i, j) = weight_b(i, j) / denominator_b.
struct DistributionPair {
    int k = 0;
    std::vector<std::uint64_t> rows;  // I_A as k-bit strings
    std::vector<std::uint64_t> cols;  // I_B
    IntMatrix weight0;
    IntMatrix weight1;
    std::int64_t denominator0 = 1;
    std::int64_t denominator1 = 1;

    std::size_t ka() const { return rows.size(); }
    std::size_t kb() const { return cols.size(); }

    Rational mu(int b, std::size_t i, std::size_t j) const;
    Eigen::MatrixXd mu_matrix(int b) const;
    /// Supports of mu0 and mu1 share no entry.
    bool disjoint_supports() const;
};

/// Throws ParameterError unless both mu_b are non-negative and sum to exactly 1.
void validate(const DistributionPair& pair);

/// True when every entry of mu_b's support satisfies g(x, y) = b.
bool supported_on_preimages(const DistributionPair& pair, const InnerFunction& g);

/// mu_b uniform on g^{-1}(b) within rows x cols.
DistributionPair uniform_pair(const InnerFunction& g, std::vector<std::uint64_t> rows,
                              std::vector<std::uint64_t> cols);

/// I_A = {0,1}^k \ {0^k}, I_B = {0,1}^k, mu_b uniform on IP^{-1}(b).
DistributionPair ip_pair(int k);

/// p = k/3; I_A = I_B = p-subsets of [k]; mu_s = J_{k,p,s} / w_s.
DistributionPair disj_pair(int k);

/// Uniform pair for a seeded random total g_k on the full cube.
DistributionPair random_pair(int k, std::uint64_t seed);

struct SpectralDiscrepancyCert {
    double sum_norm = 0.0;   // ||(mu0 + mu1)/2||
    double diff_norm = 0.0;  // ||(mu0 - mu1)/2||
    double sum_scaled = 0.0;
    double diff_scaled = 0.0;
    double rho = 0.0;
    std::string norm_method;
    std::size_t ka = 0;
    std::size_t kb = 0;

    /// log2(1/rho) with no hidden constant; empty when rho is 0 or above 1.
    std::optional<double> qcc_bits_lower() const;
};

/// rho = max(diff_scaled, sum_scaled - 1, 0): the smallest r meeting both
/// spectral conditions for this particular pair.
SpectralDiscrepancyCert spectral_certificate(const DistributionPair& pair);

/// Closed forms for the IP pair at K = 2^k.
double ip_sum_norm_closed_form(int k);
double ip_diff_norm_closed_form(int k);
double ip_rho_bound(int k);

/// p-subsets of [k] as bitmasks (element j -> bit j-1), lexicographic on the
/// sorted element lists.
std::vector<std::uint64_t> subsets_lex(int k, int p);

struct JohnsonMatrix {
    int k = 0;
    int p = 0;
    int s = 0;
    std::vector<std::uint64_t> subsets;
    Eigen::MatrixXd matrix;
};

JohnsonMatrix johnson_matrix(int k, int p, int s);

/// Eigenvalue of J_{k,p,s} on the shared eigenspace E_t (exact).
Rational knuth_eigenvalue(int k, int p, int s, int t);

/// dim E_t = C(k, t) - C(k, t-1).
Integer knuth_multiplicity(int k, int t);

/// Eigenvalue of mu_s = J_{k,p,s}/w_s on E_t for the DISJ pair (p = k/3).
Rational disj_eigenvalue(int k, int s, int t);

/// lambda_{0,t} - lambda_{1,t} from the simplified closed form
/// (-1)^t (1/M) C(k-p-t, p-t)/C(k-p, p) * t(k-t+1)/p^2.
Rational disj_eigen_difference_closed_form(int k, int t);

/// M = C(k, k/3).
Integer disj_block_count(int k);

/// Largest |I_A| + |I_B| accepted by the exhaustive rectangle enumeration.
inline constexpr std::size_t kRectangleLimit = 24;

/// max over rectangles I'_A x I'_B of |sum mu(x,y) (-1)^{g(x,y)}| with
/// mu = (mu0 + mu1)/2.
double rectangle_discrepancy(const DistributionPair& pair, const InnerFunction& g,
                             std::size_t limit = kRectangleLimit);

}  // namespace blockcomp
