#include "blockcomp/specdisc.hpp"

#include "blockcomp/errors.hpp"
#include "blockcomp/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace blockcomp {

Rational DistributionPair::mu(int b, std::size_t i, std::size_t j) const {
    const auto& w = b == 0 ? weight0 : weight1;
    return Rational(Integer(w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))),
                    Integer(b == 0 ? denominator0 : denominator1));
}

Eigen::MatrixXd DistributionPair::mu_matrix(int b) const {
    const auto& w = b == 0 ? weight0 : weight1;
    const double d = static_cast<double>(b == 0 ? denominator0 : denominator1);
    return w.cast<double>() / d;
}

bool DistributionPair::disjoint_supports() const {
    for (Eigen::Index i = 0; i < weight0.rows(); ++i)
        for (Eigen::Index j = 0; j < weight0.cols(); ++j)
            if (weight0(i, j) != 0 && weight1(i, j) != 0) return false;
    return true;
}

void validate(const DistributionPair& pair) {
    const auto ka = static_cast<Eigen::Index>(pair.ka());
    const auto kb = static_cast<Eigen::Index>(pair.kb());
    for (int b = 0; b < 2; ++b) {
        const auto& w = b == 0 ? pair.weight0 : pair.weight1;
        if (w.rows() != ka || w.cols() != kb) throw ParameterError("distribution matrix shape mismatch");
        if (w.minCoeff() < 0) throw ParameterError("distribution has a negative entry");
        if (w.sum() != (b == 0 ? pair.denominator0 : pair.denominator1))
            throw ParameterError("mu_" + std::to_string(b) + " does not sum to 1");
    }
}

bool supported_on_preimages(const DistributionPair& pair, const InnerFunction& g) {
    for (std::size_t i = 0; i < pair.ka(); ++i)
        for (std::size_t j = 0; j < pair.kb(); ++j) {
            const Cell c = g.at(pair.rows[i], pair.cols[j]);
            const auto ii = static_cast<Eigen::Index>(i);
            const auto jj = static_cast<Eigen::Index>(j);
            if (pair.weight0(ii, jj) != 0 && c != Cell::zero) return false;
            if (pair.weight1(ii, jj) != 0 && c != Cell::one) return false;
        }
    return true;
}

DistributionPair uniform_pair(const InnerFunction& g, std::vector<std::uint64_t> rows,
                              std::vector<std::uint64_t> cols) {
    DistributionPair pair;
    pair.k = g.bits_per_party();
    pair.rows = std::move(rows);
    pair.cols = std::move(cols);
    const auto ka = static_cast<Eigen::Index>(pair.ka());
    const auto kb = static_cast<Eigen::Index>(pair.kb());
    pair.weight0 = IntMatrix::Zero(ka, kb);
    pair.weight1 = IntMatrix::Zero(ka, kb);
    for (Eigen::Index i = 0; i < ka; ++i)
        for (Eigen::Index j = 0; j < kb; ++j) {
            const Cell c = g.at(pair.rows[static_cast<std::size_t>(i)], pair.cols[static_cast<std::size_t>(j)]);
            if (c == Cell::zero) pair.weight0(i, j) = 1;
            if (c == Cell::one) pair.weight1(i, j) = 1;
        }
    pair.denominator0 = pair.weight0.sum();
    pair.denominator1 = pair.weight1.sum();
    if (pair.denominator0 == 0 || pair.denominator1 == 0)
        throw ParameterError("g is constant on the chosen rectangle; no b-distribution for one side");
    return pair;
}

DistributionPair ip_pair(int k) {
    if (k < 1 || k > kMaxPartyBits) throw ParameterError("ip pair needs 1 <= k <= " + std::to_string(kMaxPartyBits));
    const std::uint64_t size = std::uint64_t{1} << k;
    std::vector<std::uint64_t> rows;
    std::vector<std::uint64_t> cols;
    for (std::uint64_t x = 0; x < size; ++x) {
        if (x != 0) rows.push_back(x);
        cols.push_back(x);
    }
    return uniform_pair(inner_product_function(k), std::move(rows), std::move(cols));
}

std::vector<std::uint64_t> subsets_lex(int k, int p) {
    std::vector<std::uint64_t> out;
    if (p < 0 || p > k) return out;
    std::vector<int> idx(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) idx[i] = i;
    for (;;) {
        std::uint64_t mask = 0;
        for (int e : idx) mask |= std::uint64_t{1} << e;
        out.push_back(mask);
        int i = p - 1;
        while (i >= 0 && idx[i] == k - p + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < p; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

DistributionPair disj_pair(int k) {
    if (k < 3 || k % 3 != 0) throw ParameterError("disj pair needs k >= 3 with 3 | k, got " + std::to_string(k));
    if (k > kMaxPartyBits) throw SizeGuardExceeded("disj pair limited to k <= " + std::to_string(kMaxPartyBits));
    auto subsets = subsets_lex(k, k / 3);
    return uniform_pair(disjointness_restricted(k), subsets, subsets);
}

DistributionPair random_pair(int k, std::uint64_t seed) {
    const std::uint64_t size = std::uint64_t{1} << k;
    std::vector<std::uint64_t> all(size);
    for (std::uint64_t x = 0; x < size; ++x) all[x] = x;
    return uniform_pair(random_inner_function(k, seed), all, all);
}

std::optional<double> SpectralDiscrepancyCert::qcc_bits_lower() const {
    if (rho <= 0.0 || rho > 1.0) return std::nullopt;
    return std::log2(1.0 / rho);
}

SpectralDiscrepancyCert spectral_certificate(const DistributionPair& pair) {
    validate(pair);
    const Eigen::MatrixXd mu0 = pair.mu_matrix(0);
    const Eigen::MatrixXd mu1 = pair.mu_matrix(1);
    const auto sum = operator_norm((mu0 + mu1) / 2.0);
    const auto diff = operator_norm((mu0 - mu1) / 2.0);
    SpectralDiscrepancyCert cert;
    cert.ka = pair.ka();
    cert.kb = pair.kb();
    const double scale = std::sqrt(static_cast<double>(cert.ka) * static_cast<double>(cert.kb));
    cert.sum_norm = sum.value;
    cert.diff_norm = diff.value;
    cert.sum_scaled = scale * sum.value;
    cert.diff_scaled = scale * diff.value;
    cert.rho = std::max({cert.diff_scaled, cert.sum_scaled - 1.0, 0.0});
    cert.norm_method = sum.method;
    return cert;
}

double ip_sum_norm_closed_form(int k) {
    const double big_k = std::ldexp(1.0, k);
    return 1.0 / std::sqrt(big_k * (big_k - 1.0));
}

double ip_diff_norm_closed_form(int k) {
    const double big_k = std::ldexp(1.0, k);
    return 1.0 / ((big_k - 1.0) * std::sqrt(big_k));
}

double ip_rho_bound(int k) { return 1.0 / std::sqrt(std::ldexp(1.0, k) - 1.0); }

namespace {

void check_johnson(int k, int p, int s) {
    if (s < 0 || s > p || 2 * p > k)
        throw ParameterError("need 0 <= s <= p <= k/2, got k=" + std::to_string(k) + " p=" + std::to_string(p) +
                             " s=" + std::to_string(s));
}

}  // namespace

JohnsonMatrix johnson_matrix(int k, int p, int s) {
    check_johnson(k, p, s);
    if (k > 20) throw SizeGuardExceeded("Johnson matrices limited to k <= 20");
    JohnsonMatrix j{k, p, s, subsets_lex(k, p), {}};
    const auto m = static_cast<Eigen::Index>(j.subsets.size());
    if (m > static_cast<Eigen::Index>(kDefaultMaterializeLimit))
        throw SizeGuardExceeded("Johnson matrix has " + std::to_string(m) + " rows");
    j.matrix = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = 0; b < m; ++b)
            if (__builtin_popcountll(j.subsets[static_cast<std::size_t>(a)] & j.subsets[static_cast<std::size_t>(b)]) ==
                s)
                j.matrix(a, b) = 1.0;
    return j;
}

Rational knuth_eigenvalue(int k, int p, int s, int t) {
    check_johnson(k, p, s);
    if (t < 0 || t > p) throw ParameterError("eigenspace index t must lie in [0, p]");
    Integer sum = 0;
    for (int i = std::max(0, s + t - p); i <= std::min(s, t); ++i) {
        Integer term = binomial(t, i) * binomial(p - i, s - i) * binomial(k - p - t + i, p - s - t + i);
        if ((t - i) % 2) sum -= term;
        else sum += term;
    }
    return Rational(sum);
}

Integer knuth_multiplicity(int k, int t) { return binomial(k, t) - binomial(k, t - 1); }

namespace {

void check_disj(int k) {
    if (k < 3 || k % 3 != 0) throw ParameterError("DISJ parameters need k >= 3 with 3 | k");
}

}  // namespace

Integer disj_block_count(int k) {
    check_disj(k);
    return binomial(k, k / 3);
}

Rational disj_eigenvalue(int k, int s, int t) {
    check_disj(k);
    const int p = k / 3;
    if (s != 0 && s != 1) throw ParameterError("DISJ pair uses s in {0, 1}");
    const Integer m = binomial(k, p);
    const Integer w = s == 0 ? m * binomial(k - p, p) : m * p * binomial(k - p, p - 1);
    return knuth_eigenvalue(k, p, s, t) / Rational(w);
}

Rational disj_eigen_difference_closed_form(int k, int t) {
    check_disj(k);
    const int p = k / 3;
    if (t < 0 || t > p) throw ParameterError("eigenspace index t must lie in [0, p]");
    const Integer m = binomial(k, p);
    Rational value = Rational(binomial(k - p - t, p - t), binomial(k - p, p)) / Rational(m) *
                     Rational(Integer(t) * (k - t + 1), Integer(p) * p);
    return t % 2 ? Rational(-value) : value;
}

double rectangle_discrepancy(const DistributionPair& pair, const InnerFunction& g, std::size_t limit) {
    if (pair.ka() + pair.kb() > limit)
        throw SizeGuardExceeded("rectangle enumeration needs |I_A| + |I_B| <= " + std::to_string(limit) + ", got " +
                                std::to_string(pair.ka() + pair.kb()));
    validate(pair);
    const Eigen::MatrixXd mu = (pair.mu_matrix(0) + pair.mu_matrix(1)) / 2.0;
    Eigen::MatrixXd signed_mass = mu;
    for (Eigen::Index i = 0; i < mu.rows(); ++i)
        for (Eigen::Index j = 0; j < mu.cols(); ++j) {
            if (mu(i, j) == 0.0) continue;
            const Cell c = g.at(pair.rows[static_cast<std::size_t>(i)], pair.cols[static_cast<std::size_t>(j)]);
            if (c == Cell::undefined) throw DomainViolation("distribution charges a point outside dom(g)");
            if (c == Cell::one) signed_mass(i, j) = -mu(i, j);
        }
    return kernels::omp::max_rectangle_bias(signed_mass);
}

}  // namespace blockcomp
