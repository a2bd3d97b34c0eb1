#include "blockcomp/errors.hpp"
#include "blockcomp/linalg.hpp"
#include "blockcomp/specdisc.hpp"

#include "frozen_values.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace blockcomp;

TEST_CASE("ip pair is valid and supported") {
    for (int k = 1; k <= 4; ++k) {
        const auto pair = ip_pair(k);
        CHECK_NOTHROW(validate(pair));
        CHECK(pair.ka() == (std::size_t{1} << k) - 1);
        CHECK(pair.kb() == std::size_t{1} << k);
        CHECK(supported_on_preimages(pair, inner_product_function(k)));
        CHECK(pair.disjoint_supports());
    }
}

TEST_CASE("ip norms match closed forms and an SVD oracle") {
    for (int k = 2; k <= 6; ++k) {
        CAPTURE(k);
        const auto pair = ip_pair(k);
        const auto cert = spectral_certificate(pair);
        const Eigen::MatrixXd mu0 = pair.mu_matrix(0);
        const Eigen::MatrixXd mu1 = pair.mu_matrix(1);
        CHECK(cert.sum_norm == doctest::Approx(oracle::operator_norm((mu0 + mu1) / 2)).epsilon(1e-9));
        CHECK(cert.diff_norm == doctest::Approx(oracle::operator_norm((mu0 - mu1) / 2)).epsilon(1e-9));
        CHECK(cert.sum_norm == doctest::Approx(ip_sum_norm_closed_form(k)).epsilon(1e-9));
        CHECK(cert.diff_norm == doctest::Approx(ip_diff_norm_closed_form(k)).epsilon(1e-9));
        CHECK(cert.rho <= ip_rho_bound(k) + 1e-9);
    }
}

TEST_CASE("ip with two bits") {
    const auto cert = spectral_certificate(ip_pair(2));
    CHECK(cert.sum_scaled == doctest::Approx(1.0));
    CHECK(cert.diff_scaled == doctest::Approx(std::sqrt(12.0) / 6.0));
    CHECK(cert.rho == doctest::Approx(1.0 / std::sqrt(3.0)));
    REQUIRE(cert.qcc_bits_lower().has_value());
    CHECK(*cert.qcc_bits_lower() == doctest::Approx(std::log2(std::sqrt(3.0))));
}

TEST_CASE("identical distributions give zero difference") {
    DistributionPair pair;
    pair.k = 1;
    pair.rows = {0, 1};
    pair.cols = {0, 1};
    pair.weight0 = IntMatrix::Ones(2, 2);
    pair.weight1 = IntMatrix::Ones(2, 2);
    pair.denominator0 = 4;
    pair.denominator1 = 4;
    CHECK_NOTHROW(validate(pair));
    const auto cert = spectral_certificate(pair);
    CHECK(cert.diff_scaled == doctest::Approx(0.0));
    CHECK(cert.sum_scaled == doctest::Approx(1.0));
    CHECK(cert.rho == doctest::Approx(0.0));
    CHECK_FALSE(cert.qcc_bits_lower().has_value());
}

TEST_CASE("validation rejects bad pairs") {
    auto pair = ip_pair(2);
    pair.denominator0 += 1;
    CHECK_THROWS_AS(validate(pair), ParameterError);
    auto negative = ip_pair(2);
    negative.weight1(0, 0) = -1;
    CHECK_THROWS(validate(negative));
    CHECK_THROWS_AS(uniform_pair(inner_product_function(2), {0}, {0, 1, 2, 3}), ParameterError);
}

TEST_CASE("subsets in lexicographic order") {
    const auto s = subsets_lex(4, 2);
    const std::vector<std::uint64_t> expected = {0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100};
    CHECK(s == expected);
}

TEST_CASE("small Johnson matrices") {
    const auto j0 = johnson_matrix(3, 1, 1);
    CHECK(j0.matrix.isApprox(Eigen::MatrixXd::Identity(3, 3)));
    const auto j1 = johnson_matrix(3, 1, 0);
    CHECK(j1.matrix.isApprox(Eigen::MatrixXd::Ones(3, 3) - Eigen::MatrixXd::Identity(3, 3)));
    const auto j2 = johnson_matrix(6, 2, 0);
    for (Eigen::Index r = 0; r < j2.matrix.rows(); ++r) CHECK(j2.matrix.row(r).sum() == doctest::Approx(6.0));
    CHECK(knuth_eigenvalue(6, 2, 1, 0) == 8);
    CHECK(knuth_eigenvalue(6, 2, 0, 0) == 6);
    CHECK(knuth_eigenvalue(6, 2, 2, 0) == 1);
}

TEST_CASE("Johnson matrices agree with the brute-force oracle") {
    for (int k = 3; k <= 8; ++k) {
        for (int p = 1; 2 * p <= k; ++p) {
            for (int s = 0; s <= p; ++s) {
                CAPTURE(k); CAPTURE(p); CAPTURE(s);
                const auto j = johnson_matrix(k, p, s);
                const Eigen::MatrixXd expected = oracle::johnson(k, p, s);
                CHECK(j.matrix.isApprox(expected));

                std::vector<double> predicted;
                for (int t = 0; t <= p; ++t) {
                    const double lambda = to_double(knuth_eigenvalue(k, p, s, t));
                    const auto mult = static_cast<long>(knuth_multiplicity(k, t));
                    for (long m = 0; m < mult; ++m) predicted.push_back(lambda);
                }
                std::sort(predicted.begin(), predicted.end());
                const auto actual = oracle::sorted_eigenvalues(expected);
                REQUIRE(actual.size() == predicted.size());
                for (std::size_t i = 0; i < actual.size(); ++i)
                    CHECK(actual[i] == doctest::Approx(predicted[i]).epsilon(1e-9).scale(1.0));
            }
        }
    }
}

TEST_CASE("multiplicities sum to the subset count") {
    for (int k = 2; k <= 12; ++k) {
        for (int p = 0; 2 * p <= k; ++p) {
            Integer total = 0;
            for (int t = 0; t <= p; ++t) total += knuth_multiplicity(k, t);
            CHECK(total == binomial(k, p));
        }
    }
}

TEST_CASE("disjointness pair") {
    const auto pair = disj_pair(3);
    CHECK_NOTHROW(validate(pair));
    CHECK(pair.ka() == 3);
    CHECK(pair.denominator0 == 6);
    CHECK(pair.denominator1 == 3);
    CHECK(supported_on_preimages(pair, disjointness_restricted(3)));
    CHECK(disj_block_count(3) == 3);
    CHECK_THROWS_AS(disj_pair(4), ParameterError);
}

TEST_CASE("disjointness rho matches frozen values and the 3/k bound") {
    const int ks[] = {3, 6, 9, 12};
    for (std::size_t i = 0; i < 4; ++i) {
        const int k = ks[i];
        CAPTURE(k);
        const auto cert = spectral_certificate(disj_pair(k));
        CHECK(cert.rho == doctest::Approx(frozen::kDisjRho[i]).epsilon(1e-9));
        CHECK(cert.rho <= 3.0 / k + 1e-12);
    }
}

TEST_CASE("disjointness eigenvalue differences") {
    for (int k = 3; k <= 15; k += 3) {
        const int p = k / 3;
        for (int t = 0; t <= p; ++t) {
            CAPTURE(k); CAPTURE(t);
            CHECK(disj_eigenvalue(k, 0, t) - disj_eigenvalue(k, 1, t) == disj_eigen_difference_closed_form(k, t));
        }
        CHECK(disj_eigenvalue(k, 0, 0) * Rational(disj_block_count(k)) == 1);
        CHECK(disj_eigenvalue(k, 1, 0) * Rational(disj_block_count(k)) == 1);
    }
}

TEST_CASE("disjointness eigenvalues agree with the dense matrices") {
    for (int k = 3; k <= 9; k += 3) {
        const auto pair = disj_pair(k);
        for (int s = 0; s <= 1; ++s) {
            const auto actual = oracle::sorted_eigenvalues(pair.mu_matrix(s));
            std::vector<double> predicted;
            for (int t = 0; t <= k / 3; ++t) {
                const double lambda = to_double(disj_eigenvalue(k, s, t));
                for (long m = 0; m < static_cast<long>(knuth_multiplicity(k, t)); ++m) predicted.push_back(lambda);
            }
            std::sort(predicted.begin(), predicted.end());
            REQUIRE(actual.size() == predicted.size());
            for (std::size_t i = 0; i < actual.size(); ++i) CHECK(std::abs(actual[i] - predicted[i]) < 1e-10);
        }
    }
}

TEST_CASE("rectangle discrepancy stays below rho") {
    for (int k = 1; k <= 3; ++k) {
        const auto pair = ip_pair(k);
        const auto g = inner_product_function(k);
        const double disc = rectangle_discrepancy(pair, g);
        const auto cert = spectral_certificate(pair);
        CHECK(disc <= cert.rho + 1e-12);
    }
    const auto pair = disj_pair(3);
    const double disc = rectangle_discrepancy(pair, disjointness_restricted(3));
    CHECK(disc <= spectral_certificate(pair).rho + 1e-12);
    CHECK_THROWS_AS(rectangle_discrepancy(ip_pair(4), inner_product_function(4)), SizeGuardExceeded);
}

TEST_CASE("constant inner function has full discrepancy") {
    const auto g = TwoPartyFunction::from_predicate(1, [](std::uint64_t, std::uint64_t) { return Cell::one; });
    DistributionPair pair;
    pair.k = 1;
    pair.rows = {0, 1};
    pair.cols = {0, 1};
    pair.weight0 = IntMatrix::Ones(2, 2);
    pair.weight1 = IntMatrix::Ones(2, 2);
    pair.denominator0 = 4;
    pair.denominator1 = 4;
    CHECK(rectangle_discrepancy(pair, g) == doctest::Approx(1.0));
}

TEST_CASE("operator norm helper") {
    CHECK(operator_norm(Eigen::MatrixXd::Identity(5, 5)).value == doctest::Approx(1.0));
    CHECK(operator_norm(Eigen::MatrixXd::Ones(7, 7)).value == doctest::Approx(7.0));
    const Eigen::MatrixXd r = Eigen::MatrixXd::Random(9, 6);
    CHECK(operator_norm(r).value == doctest::Approx(oracle::operator_norm(r)).epsilon(1e-8));
    CHECK(power_iteration_norm(r).value == doctest::Approx(oracle::operator_norm(r)).epsilon(1e-6));
    CHECK(operator_norm(r).upper_bound >= oracle::operator_norm(r) - 1e-12);
}
