#include "blockcomp/approxdeg.hpp"
#include "blockcomp/errors.hpp"
#include "blockcomp/simplex.hpp"

#include "frozen_values.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace blockcomp;

namespace {

const Rational kThird(1, 3);

BooleanFunction from_index(int n, std::uint64_t code) {
    std::vector<std::uint8_t> table(std::size_t{1} << n);
    for (std::size_t x = 0; x < table.size(); ++x) table[x] = (code >> x) & 1;
    return BooleanFunction(n, std::move(table));
}

}  // namespace

TEST_CASE("simplex: optimal vertex with matching duals") {
    // min -x1 - x2  s.t.  x1 + 2 x2 + s1 = 4,  3 x1 + x2 + s2 = 6
    lp::LinearProgram prog(2, 4);
    prog.at(0, 0) = 1; prog.at(0, 1) = 2; prog.at(0, 2) = 1;
    prog.at(1, 0) = 3; prog.at(1, 1) = 1; prog.at(1, 3) = 1;
    prog.b = {4, 6};
    prog.c = {-1, -1, 0, 0};
    const auto res = lp::solve(prog);
    REQUIRE(res.status == lp::Status::optimal);
    CHECK(res.objective == Rational(-14, 5));
    CHECK(res.x[0] == Rational(8, 5));
    CHECK(res.x[1] == Rational(6, 5));
    CHECK(lp::is_feasible_point(prog, res.x));
    Rational dual_obj = 0;
    for (std::size_t i = 0; i < 2; ++i) dual_obj += res.duals[i] * prog.b[i];
    CHECK(dual_obj == res.objective);
}

TEST_CASE("simplex: infeasible system yields a Farkas vector") {
    lp::LinearProgram prog(2, 2);
    prog.at(0, 0) = 1; prog.at(0, 1) = 1;
    prog.at(1, 0) = 1; prog.at(1, 1) = 1;
    prog.b = {1, 2};
    const auto res = lp::solve(prog);
    REQUIRE(res.status == lp::Status::infeasible);
    CHECK(lp::is_farkas_certificate(prog, res.farkas));
}

TEST_CASE("simplex: unbounded objective") {
    lp::LinearProgram prog(1, 2);
    prog.at(0, 0) = 1; prog.at(0, 1) = -1;
    prog.b = {1};
    prog.c = {0, -1};
    CHECK(lp::solve(prog).status == lp::Status::unbounded);
}

TEST_CASE("simplex: serial and parallel pivots agree") {
    lp::LinearProgram prog(3, 6);
    const int coef[3][3] = {{2, 1, 1}, {1, 3, 2}, {2, 1, 2}};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) prog.at(i, j) = coef[i][j];
        prog.at(i, 3 + i) = 1;
    }
    prog.b = {10, 15, 12};
    prog.c = {-6, -5, -4, 0, 0, 0};
    const auto serial = lp::solve(prog, {.optimize = true, .parallel = false});
    const auto parallel = lp::solve(prog, {.optimize = true, .parallel = true});
    REQUIRE(serial.status == lp::Status::optimal);
    CHECK(serial.x == parallel.x);
    CHECK(serial.objective == parallel.objective);
    CHECK(serial.pivots == parallel.pivots);
}

TEST_CASE("approximate degree matches frozen values for every function on n <= 3") {
    for (std::uint64_t code = 0; code < 4; ++code)
        CHECK(approx_degree(from_index(1, code), kThird).degree == frozen::kDegreeArity1[code]);
    for (std::uint64_t code = 0; code < 16; ++code)
        CHECK(approx_degree(from_index(2, code), kThird).degree == frozen::kDegreeArity2[code]);
    for (std::uint64_t code = 0; code < 256; ++code) {
        CAPTURE(code);
        CHECK(approx_degree(from_index(3, code), kThird).degree == frozen::kDegreeArity3[code]);
    }
}

TEST_CASE("approximate degree of named functions") {
    CHECK(approx_degree(or_function(4), kThird).degree == frozen::kDegreeOr4);
    CHECK(approx_degree(and_function(4), kThird).degree == frozen::kDegreeAnd4);
    CHECK(approx_degree(parity_function(4), kThird).degree == frozen::kDegreeParity4);
    CHECK(approx_degree(parity_function(5), kThird).degree == frozen::kDegreeParity5);
    CHECK(approx_degree(majority_function(5), kThird).degree == frozen::kDegreeMaj5);
    CHECK(approx_degree(or_function(6), kThird).degree == frozen::kDegreeOr6);
}

TEST_CASE("exactly one side of the dichotomy holds at every degree") {
    const std::vector<BooleanFunction> fs = {or_function(3), parity_function(3), majority_function(3),
                                             threshold_function(4, 2), and_function(4)};
    for (const auto& f : fs) {
        const int n = f.arity();
        const int deg = approx_degree(f, kThird).degree;
        for (int d = 0; d <= n; ++d) {
            CAPTURE(d);
            const auto res = decide_feasibility(f, kThird, d);
            if (const auto* poly = std::get_if<CharacterPolynomial>(&res)) {
                CHECK(d >= deg);
                for (const auto& [w, alpha] : *poly) CHECK(__builtin_popcountll(w) <= d);
                const auto values = evaluate_polynomial(n, *poly);
                for (std::size_t x = 0; x < values.size(); ++x)
                    CHECK(abs(values[x] - Rational(f(x) ? 1 : 0)) <= kThird);
            } else {
                CHECK(d < deg);
                const auto& q = std::get<InfeasibilityCertificate>(res).q;
                const auto spectrum = oracle::fourier(n, q);
                for (std::size_t w = 0; w < spectrum.size(); ++w)
                    if (__builtin_popcountll(w) <= d) CHECK(spectrum[w] == 0);
                Rational qf = 0, l1 = 0;
                for (std::size_t x = 0; x < q.size(); ++x) {
                    if (f(x)) qf += q[x];
                    l1 += abs(q[x]);
                }
                CHECK(qf > kThird * l1);
            }
        }
    }
}

TEST_CASE("epsilon outside (0, 1/2) is rejected") {
    CHECK_THROWS_AS(approx_degree(or_function(2), Rational(1, 2)), EpsilonOutOfRange);
    CHECK_THROWS_AS(approx_degree(or_function(2), Rational(0)), EpsilonOutOfRange);
}

TEST_CASE("dual witness properties") {
    const std::vector<BooleanFunction> fs = {or_function(3), and_function(3), parity_function(3),
                                             majority_function(3), threshold_function(4, 3), or_function(5)};
    for (const auto& f : fs) {
        const auto w = dual_witness(f, kThird);
        CHECK(w.degree == approx_degree(f, kThird).degree);
        CHECK(w.report.all());
        const auto again = verify_witness(w, f);
        CHECK(again.all());
        CHECK(again.q_dot_f == 1);
        CHECK(again.min_support_weight >= w.degree);
        CHECK(again.l1_norm <= 3);
        CHECK(again.max_abs_fourier <= Rational(3) / Rational(1 << f.arity()));
    }
}

TEST_CASE("dictator witness is (-1, 1)") {
    const auto f = dictator_function(1, 0);
    const auto w = dual_witness(f, kThird);
    REQUIRE(w.degree == 1);
    CHECK(w.q == std::vector<Rational>{-1, 1});
    CHECK(w.report.all());
    CHECK(w.report.l1_norm == 2);
}

TEST_CASE("tampered witnesses fail the right property") {
    const auto f = or_function(3);
    const auto base = dual_witness(f, kThird);

    auto scaled = base;
    for (auto& v : scaled.q) v *= 2;
    const auto rs = verify_witness(scaled, f);
    CHECK_FALSE(rs.a);
    CHECK(rs.q_dot_f == 2);

    auto perturbed = base;
    perturbed.q[0] += Rational(1, 100);
    CHECK_FALSE(verify_witness(perturbed, f).d);
}

TEST_CASE("constant functions have no witness") {
    CHECK(approx_degree(constant_function(3, true), kThird).degree == 0);
    CHECK_THROWS_AS(dual_witness(constant_function(3, false), kThird), WitnessNotApplicable);
    CHECK_THROWS_AS(paturi_check(constant_function(3, false), kThird), ParameterError);
}

TEST_CASE("symmetric degree ratio") {
    const double and2 = paturi_check(and_function(2), kThird);
    CHECK(and2 == doctest::Approx(approx_degree(and_function(2), kThird).degree / std::sqrt(2.0)));
    const double or4 = paturi_check(or_function(4), kThird);
    CHECK(or4 == doctest::Approx(frozen::kDegreeOr4 / 2.0));
}
