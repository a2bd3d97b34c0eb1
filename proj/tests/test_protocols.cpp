#include "blockcomp/errors.hpp"
#include "blockcomp/protocols.hpp"

#include "frozen_values.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <bit>
#include <cmath>

using namespace blockcomp;

namespace {

BooleanFunction from_index(int n, std::uint64_t code) {
    std::vector<std::uint8_t> table(std::size_t{1} << n);
    for (std::size_t x = 0; x < table.size(); ++x) table[x] = (code >> x) & 1;
    return BooleanFunction(n, std::move(table));
}

std::vector<int> as_ints(const BooleanFunction& f) {
    return {f.table().begin(), f.table().end()};
}

BooleanFunction top_step(int n, int ell1) {
    return BooleanFunction::from_predicate(n, [=](std::uint64_t x) { return std::popcount(x) > n - ell1; });
}

}  // namespace

TEST_CASE("decision tree depths") {
    CHECK(optimal_decision_tree_depth(constant_function(3, false)) == 0);
    CHECK(optimal_decision_tree_depth(and_function(3)) == 3);
    CHECK(optimal_decision_tree_depth(or_function(2)) == 2);
    CHECK(optimal_decision_tree_depth(dictator_function(4, 2)) == 1);
    CHECK_THROWS_AS(optimal_decision_tree(or_function(5)), SizeGuardExceeded);
}

TEST_CASE("decision trees agree with the oracle and compute f") {
    for (int n = 1; n <= 3; ++n) {
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << (1u << n)); ++code) {
            const auto f = from_index(n, code);
            const auto tree = optimal_decision_tree(f);
            CHECK(tree.depth() == oracle::tree_depth(as_ints(f), n));
            for (std::uint64_t x = 0; x < f.size(); ++x) CHECK(tree.evaluate(x) == f(x));
        }
    }
    for (const auto& f : {majority_function(4), threshold_function(4, 3), parity_function(4)}) {
        const auto tree = optimal_decision_tree(f);
        CHECK(tree.depth() == oracle::tree_depth(as_ints(f), 4));
    }
}

TEST_CASE("compiled tree cost bound") {
    const auto tree = optimal_decision_tree(or_function(2));
    REQUIRE(tree.depth() == 2);
    const BcwConfig cfg{5, 3, 0.0};
    CHECK(bcw_cost_bound(tree, cfg) == 30);
    const auto g = inner_product_function(2);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const auto [x, y] = sample_composed_input(2, g, rng);
        const auto run = bcw_compile_and_run(tree, g, cfg, x, y, trial_seed(1, trial));
        CHECK(run.ledger.total() <= 30);
        CHECK(run.output == (composed_value(or_function(2), g, x, y) == Cell::one));
    }
}

TEST_CASE("compiled tree is exact without injected error") {
    const auto f = majority_function(3);
    const auto tree = optimal_decision_tree(f);
    const auto g = disjointness_restricted(3);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const auto [x, y] = sample_composed_input(3, g, rng);
        const auto run = bcw_compile_and_run(tree, g, {2, 1, 0.0}, x, y, trial_seed(9, trial));
        CHECK(run.output == (composed_value(f, g, x, y) == Cell::one));
    }
    CHECK_THROWS_AS(bcw_compile_and_run(tree, g, {2, 1, 0.0}, 0, 0, 1), DomainViolation);
}

TEST_CASE("repetition schedule") {
    for (int delta = 0; delta <= 64; ++delta) CHECK(repetition_schedule(delta) == frozen::kSchedule[delta]);
    CHECK(repetition_schedule(0) == 1);
    CHECK(repetition_schedule(6) == 41);
    for (int delta = 1; delta < 200; ++delta) {
        const int r = repetition_schedule(delta);
        CHECK(r % 2 == 1);
        CHECK(r <= repetition_schedule(delta + 1));
    }
    CHECK_THROWS_AS(repetition_schedule(-1), ParameterError);
}

TEST_CASE("ham cost") {
    const HamOracleConfig cfg;
    CHECK(ham_cost(cfg, 1) == 1);
    CHECK(ham_cost(cfg, 2) == 2);
    CHECK(ham_cost(cfg, 8) == 24);
    HamOracleConfig doubled;
    doubled.c_ham = 2.0;
    CHECK(ham_cost(doubled, 8) == 48);
}

TEST_CASE("symmetric protocol is exact without injected error") {
    const int n = 16;
    for (int ell1 : {1, 2, 4, 5}) {
        const auto f = top_step(n, ell1);
        REQUIRE(symmetric_profile(f).ell1 == ell1);
        const HamOracleConfig cfg;
        const auto bound = symand_cost_bound(ell1, cfg);
        std::mt19937_64 rng(ell1);
        for (int trial = 0; trial < 2000; ++trial) {
            const auto [x, y] = sample_near_top(n, 2 * ell1, rng);
            const auto run = symmetric_and_protocol(f, x, y, cfg, trial_seed(5, trial));
            CHECK(run.output == f(x & y));
            CHECK(run.ledger.total() <= bound);
        }
    }
}

TEST_CASE("negated plateau") {
    const auto f = top_step(8, 3).negation();
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 300; ++trial) {
        const auto [x, y] = sample_near_top(8, 6, rng);
        const auto run = symmetric_and_protocol(f, x, y, {}, trial);
        CHECK(run.output == f(x & y));
        CHECK_FALSE(run.ledger.notes.empty());
    }
}

TEST_CASE("AND exits after the threshold check") {
    const int n = 10;
    const auto f = and_function(n);
    const std::uint64_t full = (1u << n) - 1;
    const auto run = symmetric_and_protocol(f, full & ~std::uint64_t{4}, full, {}, 1);
    CHECK_FALSE(run.output);
    CHECK(run.ledger.total() == 2);
    CHECK(run.ledger.subprotocol_invocations.empty());
    CHECK(symmetric_and_protocol(f, full, full, {}, 1).output);
}

TEST_CASE("equal inputs give a zero distance") {
    const auto f = top_step(12, 4);
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        const auto x = sample_near_top(12, 3, rng).first;
        const auto run = symmetric_and_protocol(f, x, x, {}, trial);
        CHECK(run.output == f(x));
    }
}

TEST_CASE("injected Ham errors stay within the majority bound") {
    const auto f = top_step(16, 5);
    HamOracleConfig cfg;
    cfg.inject_error = 1.0 / 3.0;
    std::mt19937_64 rng(17);
    int wrong = 0;
    const int trials = 2000;
    for (int trial = 0; trial < trials; ++trial) {
        const auto [x, y] = sample_near_top(16, 8, rng);
        if (symmetric_and_protocol(f, x, y, cfg, trial_seed(77, trial)).output != f(x & y)) ++wrong;
    }
    CHECK(static_cast<double>(wrong) / trials <= 1.0 / 3.0 + 0.02);
}

TEST_CASE("protocol preconditions") {
    CHECK_THROWS_AS(symmetric_and_protocol(or_function(4), 0, 0, {}, 1), ParameterError);
    CHECK_THROWS_AS(symmetric_and_protocol(dictator_function(3, 0), 0, 0, {}, 1), NotSymmetric);
    HamOracleConfig bad;
    bad.inject_error = 0.5;
    CHECK_THROWS_AS(symmetric_and_protocol(and_function(3), 7, 7, bad, 1), ParameterError);
}

TEST_CASE("seeds and samplers are deterministic") {
    CHECK(trial_seed(1, 2) == trial_seed(1, 2));
    CHECK(trial_seed(1, 2) != trial_seed(1, 3));
    std::mt19937_64 a(5), b(5);
    for (int i = 0; i < 50; ++i) CHECK(sample_near_top(20, 6, a) == sample_near_top(20, 6, b));
    std::mt19937_64 c(8);
    const auto g = disjointness_restricted(3);
    for (int i = 0; i < 50; ++i) {
        const auto [x, y] = sample_composed_input(4, g, c);
        for (int blk = 0; blk < 4; ++blk) CHECK(g.defined(block_of(x, blk, 3), block_of(y, blk, 3)));
    }
}

TEST_CASE("cost model fit") {
    std::vector<std::pair<int, double>> exact;
    for (int ell1 : {2, 4, 8}) exact.emplace_back(ell1, 3.5 * symand_cost_model(ell1));
    const auto fit = fit_cost_model(exact);
    CHECK(fit.c == doctest::Approx(3.5));
    CHECK(fit.within_factor_two);

    const auto skewed = fit_cost_model({{2, 1.0}, {4, 1.0}, {8, 1000.0}});
    CHECK_FALSE(skewed.within_factor_two);
    CHECK_THROWS_AS(fit_cost_model({{1, 1.0}}), ParameterError);
    CHECK(symand_cost_model(4) == doctest::Approx(16.0));
    CHECK(symand_cost_model(16) == doctest::Approx(16.0 * 16.0 * 2.0));
}
