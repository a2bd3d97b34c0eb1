#include "blockcomp/mainlemma.hpp"

#include "blockcomp/errors.hpp"
#include "blockcomp/kernels.hpp"
#include "blockcomp/linalg.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace blockcomp {

namespace {

std::size_t checked_power(std::size_t base, int n, std::size_t cap) {
    std::size_t out = 1;
    for (int i = 0; i < n; ++i) {
        if (base != 0 && out > cap / base) return cap + 1;
        out *= base;
    }
    return out;
}

std::vector<double> to_doubles(const std::vector<Rational>& values) {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = to_double(values[i]);
    return out;
}

void require_guard(const DistributionPair& pair, int n, std::size_t limit) {
    if (!within_materialize_guard(pair, n, limit))
        throw SizeGuardExceeded("dense witness would need (" + std::to_string(pair.ka()) + "^" + std::to_string(n) +
                                ") x (" + std::to_string(pair.kb()) + "^" + std::to_string(n) +
                                ") entries; guard is " + std::to_string(limit) + " per side");
}

// Digits of a dense index in base `base`, least significant first.
void digits(std::size_t index, std::size_t base, std::vector<std::size_t>& out) {
    for (auto& d : out) {
        d = index % base;
        index /= base;
    }
}

}  // namespace

std::size_t WitnessMatrix::rows() const { return checked_power(pair.ka(), n, std::numeric_limits<std::size_t>::max()); }
std::size_t WitnessMatrix::cols() const { return checked_power(pair.kb(), n, std::numeric_limits<std::size_t>::max()); }

Rational WitnessMatrix::l1_norm() const {
    if (!pair.disjoint_supports())
        throw ParameterError("exact L1 bookkeeping needs mu0 and mu1 with disjoint supports");
    Rational total = 0;
    for (const auto& v : q) total += abs(v);
    return total;
}

bool within_materialize_guard(const DistributionPair& pair, int n, std::size_t limit) {
    return checked_power(pair.ka(), n, limit) <= limit && checked_power(pair.kb(), n, limit) <= limit;
}

WitnessMatrix build_witness_matrix(const DualWitness& witness, const DistributionPair& pair, bool materialize,
                                   std::size_t limit) {
    if (witness.n < 1 || witness.q.size() != (std::size_t{1} << witness.n))
        throw ArityMismatch("witness vector does not cover {0,1}^" + std::to_string(witness.n));
    validate(pair);
    WitnessMatrix h;
    h.n = witness.n;
    h.degree = witness.degree;
    h.epsilon = witness.epsilon;
    h.q = witness.q;
    h.pair = pair;
    if (materialize) {
        require_guard(pair, h.n, limit);
        const auto q = to_doubles(h.q);
        h.dense = kernels::omp::expand_witness(q, pair.mu_matrix(0), pair.mu_matrix(1), h.n);
    }
    return h;
}

Eigen::MatrixXd witness_fourier_form(const WitnessMatrix& h, std::size_t limit) {
    require_guard(h.pair, h.n, limit);
    const auto spectrum = fourier(h.n, h.q);
    std::vector<double> coeffs(spectrum.coeffs.size(), 0.0);
    for (std::uint64_t w = 0; w < coeffs.size(); ++w)
        if (__builtin_popcountll(w) >= h.degree) coeffs[w] = to_double(spectrum[w]);
    const Eigen::MatrixXd mu0 = h.pair.mu_matrix(0);
    const Eigen::MatrixXd mu1 = h.pair.mu_matrix(1);
    return kernels::omp::expand_witness(coeffs, mu0 + mu1, mu0 - mu1, h.n);
}

RestrictedComposition restrict_composition(const BooleanFunction& f, const InnerFunction& g,
                                           const DistributionPair& pair, std::size_t limit) {
    const int n = f.arity();
    require_guard(pair, n, limit);
    const std::size_t rows = checked_power(pair.ka(), n, limit);
    const std::size_t cols = checked_power(pair.kb(), n, limit);
    RestrictedComposition out;
    out.value = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    out.defined.setConstant(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols), false);
    std::vector<std::size_t> a(static_cast<std::size_t>(n));
    std::vector<std::size_t> b(static_cast<std::size_t>(n));
    for (std::size_t r = 0; r < rows; ++r) {
        digits(r, pair.ka(), a);
        for (std::size_t c = 0; c < cols; ++c) {
            digits(c, pair.kb(), b);
            std::uint64_t v = 0;
            bool defined = true;
            for (int i = 0; i < n && defined; ++i) {
                const Cell cell = g.at(pair.rows[a[i]], pair.cols[b[i]]);
                if (cell == Cell::undefined) defined = false;
                else if (cell == Cell::one) v |= std::uint64_t{1} << i;
            }
            const auto ri = static_cast<Eigen::Index>(r);
            const auto ci = static_cast<Eigen::Index>(c);
            out.defined(ri, ci) = defined;
            if (defined) out.value(ri, ci) = f(v) ? 1.0 : 0.0;
        }
    }
    return out;
}

Rational inner_product_with_composition(const WitnessMatrix& h, const BooleanFunction& f, const InnerFunction& g) {
    if (f.arity() != h.n)
        throw ArityMismatch("witness has " + std::to_string(h.n) + " blocks but f has arity " +
                            std::to_string(f.arity()));
    if (g.bits_per_party() != h.pair.k) throw ArityMismatch("inner function block length differs from the pair's");
    // mass[b][v]: mu_b mass on cells where g = v.
    Rational mass[2][2];
    for (int b = 0; b < 2; ++b)
        for (std::size_t i = 0; i < h.pair.ka(); ++i)
            for (std::size_t j = 0; j < h.pair.kb(); ++j) {
                const Cell cell = g.at(h.pair.rows[i], h.pair.cols[j]);
                if (cell == Cell::undefined) continue;
                mass[b][cell == Cell::one ? 1 : 0] += h.pair.mu(b, i, j);
            }
    std::vector<Rational> t(f.size());
    for (std::size_t v = 0; v < t.size(); ++v) t[v] = f(v) ? 1 : 0;
    for (int i = 0; i < h.n; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t v = 0; v < t.size(); ++v) {
            if (v & bit) continue;
            const Rational t0 = t[v];
            const Rational t1 = t[v | bit];
            t[v] = mass[0][0] * t0 + mass[0][1] * t1;
            t[v | bit] = mass[1][0] * t0 + mass[1][1] * t1;
        }
    }
    Rational total = 0;
    for (std::size_t z = 0; z < t.size(); ++z) total += h.q[z] * t[z];
    return total;
}

OpnormBound opnorm_bound(const DualWitness& witness, const SpectralDiscrepancyCert& cert) {
    const int n = witness.n;
    const int d = witness.degree;
    const double eps = to_double(witness.epsilon);
    const double rho = cert.rho;
    const double log_scale = 0.5 * n * std::log(static_cast<double>(cert.ka) * static_cast<double>(cert.kb));

    OpnormBound out;
    double tail = 0.0;
    for (int l = d; l <= n; ++l) tail += to_double(Rational(binomial(n, l))) * std::pow(rho, l);
    out.bound = std::pow(1.0 + rho, n) / eps * std::exp(-log_scale) * tail;

    const double sum2 = 2.0 * cert.sum_norm;
    const double diff2 = 2.0 * cert.diff_norm;
    for (std::uint64_t w = 0; w < witness.spectrum.coeffs.size(); ++w) {
        const int weight = __builtin_popcountll(w);
        if (weight < d) continue;
        out.fourier_sum += std::abs(to_double(witness.spectrum[w])) * std::pow(sum2, n - weight) *
                           std::pow(diff2, weight);
    }

    out.closed_form_valid = rho <= static_cast<double>(d) / (2.0 * std::exp(1.0) * n);
    out.closed_form = 2.0 / eps * std::exp(-log_scale - 0.5 * d);
    return out;
}

TraceNormCertificate trace_norm_certificate(const WitnessMatrix& h, const RestrictedComposition& composed,
                                            const Eigen::MatrixXd& f_tilde, const Rational& epsilon,
                                            const Rational& epsilon_prime, double h_norm_bound) {
    if (epsilon_prime < 0 || epsilon_prime >= epsilon)
        throw ParameterError("need 0 <= eps' < eps, got eps'=" + to_string(epsilon_prime) +
                             " eps=" + to_string(epsilon));
    if (!h.dense) throw ParameterError("an explicit F~ needs the dense witness matrix");
    const Eigen::MatrixXd& hd = *h.dense;
    if (f_tilde.rows() != hd.rows() || f_tilde.cols() != hd.cols() || composed.value.rows() != hd.rows() ||
        composed.value.cols() != hd.cols())
        throw ArityMismatch("F~ shape does not match the witness matrix");

    const double slack = to_double(epsilon_prime) + 1e-12;
    double sum = 0.0;
    for (Eigen::Index r = 0; r < hd.rows(); ++r)
        for (Eigen::Index c = 0; c < hd.cols(); ++c) {
            if (!composed.defined(r, c)) continue;
            if (std::abs(f_tilde(r, c) - composed.value(r, c)) > slack)
                throw DomainViolation("F~ differs from F by more than eps' at (" + std::to_string(r) + ", " +
                                      std::to_string(c) + ")");
            sum += hd(r, c) * f_tilde(r, c);
        }

    TraceNormCertificate out;
    out.numerator = std::abs(sum);
    const double exact = operator_norm(hd).value;
    out.h_norm = exact > 0.0 ? exact : h_norm_bound;
    out.norm_source = exact > 0.0 ? "exact" : "bound";
    out.value = out.numerator / out.h_norm;
    out.guaranteed = (1.0 - to_double(epsilon_prime / epsilon)) / out.h_norm;
    return out;
}

CertificateReport mainlemma_certify(const BooleanFunction& f, const DistributionPair& pair, const InnerFunction& g,
                                    const MainLemmaOptions& options) {
    if (options.epsilon_prime < 0 || options.epsilon_prime >= options.epsilon)
        throw ParameterError("need 0 <= eps' < eps, got eps'=" + to_string(options.epsilon_prime) +
                             " eps=" + to_string(options.epsilon));
    if (g.bits_per_party() != pair.k) throw ArityMismatch("inner function block length differs from the pair's");
    const DualWitness witness = dual_witness(f, options.epsilon, options.arity_cap);
    const SpectralDiscrepancyCert cert = spectral_certificate(pair);
    const int n = f.arity();
    const bool materialize = within_materialize_guard(pair, n, options.materialize_limit);
    const WitnessMatrix h = build_witness_matrix(witness, pair, materialize, options.materialize_limit);

    CertificateReport report;
    report.n = n;
    report.k = pair.k;
    report.ka = pair.ka();
    report.kb = pair.kb();
    report.epsilon = options.epsilon;
    report.epsilon_prime = options.epsilon_prime;
    report.degree = witness.degree;
    report.rho = cert.rho;
    report.precondition = cert.rho <= static_cast<double>(witness.degree) / (2.0 * std::exp(1.0) * n);
    report.pair_supported = supported_on_preimages(pair, g);

    report.q_l1 = witness.report.l1_norm;
    report.h_l1 = h.l1_norm();
    report.l1_matches = report.h_l1 == report.q_l1;
    report.inner_product = inner_product_with_composition(h, f, g);
    report.inner_product_is_one = report.inner_product == 1;

    const OpnormBound bound = opnorm_bound(witness, cert);
    report.h_opnorm_bound = bound.bound;
    report.h_opnorm_fourier = bound.fourier_sum;
    if (bound.closed_form_valid) report.h_opnorm_closed_form = bound.closed_form;
    double h_norm = bound.bound;
    report.norm_source = "bound";
    if (h.dense) {
        report.h_opnorm_exact = operator_norm(*h.dense).value;
        report.exact_within_bound = *report.h_opnorm_exact <= bound.bound + 1e-9;
        h_norm = *report.h_opnorm_exact;
        report.norm_source = "exact";
    }

    const double log2_side = 0.5 * n * std::log2(static_cast<double>(report.ka) * static_cast<double>(report.kb));
    report.tracenorm_lb = (1.0 - to_double(options.epsilon_prime / options.epsilon)) / h_norm;
    report.qcc_bits = std::log2(report.tracenorm_lb) - log2_side;
    report.implied_degree_bound = 2.0 * std::log(24.0 * report.tracenorm_lb) - 2.0 * log2_side * std::log(2.0);
    if (report.precondition) {
        report.qcc_bits_closed_form = std::log2(std::exp(0.5 * witness.degree) / 24.0);
        report.tracenorm_closed_form = std::exp2(log2_side) * std::exp(0.5 * witness.degree) / 24.0;
    }
    return report;
}

}  // namespace blockcomp
