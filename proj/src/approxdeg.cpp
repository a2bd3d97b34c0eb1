#include "blockcomp/approxdeg.hpp"

#include "blockcomp/errors.hpp"
#include "blockcomp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace blockcomp {

void check_epsilon(const Rational& epsilon) {
    if (epsilon <= 0 || epsilon >= Rational(1, 2))
        throw EpsilonOutOfRange("epsilon must lie in (0, 1/2), got " + to_string(epsilon));
}

std::vector<std::uint64_t> monomials_up_to(int n, int max_weight) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w)
        if (__builtin_popcountll(w) <= max_weight) out.push_back(w);
    std::stable_sort(out.begin(), out.end(), [](std::uint64_t a, std::uint64_t b) {
        return __builtin_popcountll(a) < __builtin_popcountll(b);
    });
    return out;
}

std::vector<Rational> evaluate_polynomial(int n, const CharacterPolynomial& p) {
    std::vector<Rational> values(std::size_t{1} << n);
    for (std::uint64_t x = 0; x < values.size(); ++x)
        for (const auto& [w, alpha] : p) values[x] += character(w, x) * alpha;
    return values;
}

namespace {

// Columns 0..N-1 are q^+_x (= u_x), N..2N-1 are q^-_x (= v_x). Rows: one
// orthogonality constraint per monomial, then the normalization
//   -sum_x (f(x) + eps) u_x + (f(x) - eps) v_x = 1,
// i.e. sum (u - v) f + eps sum (u + v) = -1.
lp::LinearProgram certificate_system(const BooleanFunction& f, const Rational& epsilon,
                                     const std::vector<std::uint64_t>& monomials) {
    const std::size_t points = f.size();
    lp::LinearProgram program(monomials.size() + 1, 2 * points);
    for (std::size_t r = 0; r < monomials.size(); ++r)
        for (std::uint64_t x = 0; x < points; ++x) {
            const int chi = character(monomials[r], x);
            program.at(r, x) = chi;
            program.at(r, points + x) = -chi;
        }
    const std::size_t last = monomials.size();
    for (std::uint64_t x = 0; x < points; ++x) {
        const Rational fx = f(x) ? 1 : 0;
        program.at(last, x) = -(fx + epsilon);
        program.at(last, points + x) = fx - epsilon;
    }
    program.b[last] = 1;
    return program;
}

bool approximates(const BooleanFunction& f, const Rational& epsilon, const CharacterPolynomial& p) {
    const auto values = evaluate_polynomial(f.arity(), p);
    for (std::uint64_t x = 0; x < values.size(); ++x)
        if (abs(values[x] - (f(x) ? 1 : 0)) > epsilon) return false;
    return true;
}

bool certifies(const BooleanFunction& f, const Rational& epsilon, const std::vector<Rational>& q, int degree_cap) {
    Rational qf = 0;
    Rational l1 = 0;
    for (std::uint64_t x = 0; x < q.size(); ++x) {
        if (f(x)) qf += q[x];
        l1 += abs(q[x]);
    }
    if (qf <= epsilon * l1) return false;
    for (auto w : monomials_up_to(f.arity(), degree_cap)) {
        Rational s = 0;
        for (std::uint64_t x = 0; x < q.size(); ++x) s += character(w, x) * q[x];
        if (s != 0) return false;
    }
    return true;
}

}  // namespace

Feasibility decide_feasibility(const BooleanFunction& f, const Rational& epsilon, int degree_cap) {
    check_epsilon(epsilon);
    if (degree_cap < 0 || degree_cap > f.arity())
        throw ParameterError("degree cap " + std::to_string(degree_cap) + " outside [0, n]");
    const auto monomials = monomials_up_to(f.arity(), degree_cap);
    const auto program = certificate_system(f, epsilon, monomials);
    const auto result = lp::solve(program);

    if (result.status == lp::Status::infeasible) {
        // y = (beta_w, t) with y^T A <= 0 and t > 0 gives the approximating
        // polynomial alpha_w = beta_w / t.
        const Rational& t = result.farkas.back();
        CharacterPolynomial p;
        for (std::size_t r = 0; r < monomials.size(); ++r)
            if (result.farkas[r] != 0) p[monomials[r]] = result.farkas[r] / t;
        if (!approximates(f, epsilon, p))
            throw InvariantFailure("approximating polynomial from the Farkas vector failed re-verification");
        return p;
    }

    const std::size_t points = f.size();
    InfeasibilityCertificate cert{std::vector<Rational>(points)};
    for (std::size_t x = 0; x < points; ++x) cert.q[x] = result.x[points + x] - result.x[x];
    if (!certifies(f, epsilon, cert.q, degree_cap))
        throw InvariantFailure("dual certificate failed re-verification");
    return cert;
}

std::optional<CharacterPolynomial> lp_feasible(const BooleanFunction& f, const Rational& epsilon, int degree_cap) {
    auto outcome = decide_feasibility(f, epsilon, degree_cap);
    if (auto* p = std::get_if<CharacterPolynomial>(&outcome)) return std::move(*p);
    return std::nullopt;
}

namespace {

void check_arity_cap(const BooleanFunction& f, int arity_cap) {
    if (f.arity() > arity_cap)
        throw SizeGuardExceeded("LP arity cap is " + std::to_string(arity_cap) + ", function has arity " +
                                std::to_string(f.arity()));
}

}  // namespace

ApproxDegreeResult approx_degree(const BooleanFunction& f, const Rational& epsilon, int arity_cap) {
    check_epsilon(epsilon);
    check_arity_cap(f, arity_cap);
    for (int d = 0; d <= f.arity(); ++d)
        if (auto p = lp_feasible(f, epsilon, d)) return ApproxDegreeResult{epsilon, d, std::move(*p)};
    throw InvariantFailure("no feasible approximation at full degree");
}

WitnessReport verify_witness(const DualWitness& witness, const BooleanFunction& f) {
    if (witness.n != f.arity() || witness.q.size() != f.size())
        throw ArityMismatch("witness and function arities differ");
    WitnessReport r;
    for (std::uint64_t x = 0; x < witness.q.size(); ++x) {
        if (f(x)) r.q_dot_f += witness.q[x];
        r.l1_norm += abs(witness.q[x]);
    }
    const auto spectrum = fourier(witness.n, witness.q);
    r.max_abs_fourier = spectrum.max_abs();
    r.min_support_weight = spectrum.min_support_weight();
    const Rational inv_eps = 1 / witness.epsilon;
    r.a = r.q_dot_f == 1;
    r.l1_at_bound = r.l1_norm == inv_eps;
    r.b = r.l1_norm <= inv_eps;
    r.c = r.max_abs_fourier <= Rational(Integer(1), Integer(1) << witness.n) * inv_eps;
    r.d = r.min_support_weight >= witness.degree;
    return r;
}

DualWitness dual_witness(const BooleanFunction& f, const Rational& epsilon, int arity_cap) {
    const auto deg = approx_degree(f, epsilon, arity_cap);
    if (deg.degree == 0)
        throw WitnessNotApplicable("approximate degree is 0: f is within epsilon of a constant");
    auto outcome = decide_feasibility(f, epsilon, deg.degree - 1);
    auto* cert = std::get_if<InfeasibilityCertificate>(&outcome);
    if (cert == nullptr) throw InvariantFailure("system feasible below the approximate degree");

    Rational qf = 0;
    for (std::uint64_t x = 0; x < f.size(); ++x)
        if (f(x)) qf += cert->q[x];
    DualWitness w;
    w.n = f.arity();
    w.epsilon = epsilon;
    w.degree = deg.degree;
    w.q = std::move(cert->q);
    for (auto& v : w.q) v /= qf;
    w.spectrum = fourier(w.n, w.q);
    w.report = verify_witness(w, f);
    if (!w.report.all()) throw InvariantFailure("extracted dual witness failed verification");
    return w;
}

double paturi_check(const BooleanFunction& f, const Rational& epsilon, int arity_cap) {
    const auto profile = symmetric_profile(f);
    const int ell = profile.ell0 + profile.ell1;
    if (ell == 0) throw ParameterError("ell0 + ell1 = 0: the ratio is undefined");
    const auto deg = approx_degree(f, epsilon, arity_cap);
    return deg.degree / std::sqrt(static_cast<double>(f.arity()) * ell);
}

}  // namespace blockcomp
