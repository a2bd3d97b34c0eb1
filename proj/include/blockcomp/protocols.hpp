#pragma once

#include "blockcomp/boolcube.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace blockcomp {

/// Largest arity accepted by the exhaustive decision-tree search.
inline constexpr int kMaxTreeArity = 4;

struct DecisionTree {
    struct Node {
        int variable = -1;  // -1 marks a leaf
        int child0 = -1;
        int child1 = -1;
        bool value = false;  // leaf label
    };

    int n = 0;
    int root = 0;
    std::vector<Node> nodes;

    int depth() const;
    bool evaluate(std::uint64_t x) const;
};

/// A minimum-depth tree for f, found by memoized search over subcubes.
DecisionTree optimal_decision_tree(const BooleanFunction& f);
int optimal_decision_tree_depth(const BooleanFunction& f);

struct CostLedger {
    std::int64_t bits_sent_alice = 0;
    std::int64_t bits_sent_bob = 0;
    std::vector<std::pair<std::string, std::int64_t>> subprotocol_invocations;
    std::vector<std::string> notes;
    std::uint64_t rng_seed = 0;

    void alice(std::int64_t bits) { bits_sent_alice += bits; }
    void bob(std::int64_t bits) { bits_sent_bob += bits; }
    void invoke(std::string name, std::int64_t bits) { subprotocol_invocations.emplace_back(std::move(name), bits); }
    std::int64_t subprotocol_bits() const;
    std::int64_t total() const { return bits_sent_alice + bits_sent_bob + subprotocol_bits(); }
};

struct ProtocolRun {
    bool output = false;
    CostLedger ledger;
};

/// Seeded source for injected errors. Bernoulli draws compare the top 53 bits
/// of a 64-bit word against p.
class ErrorSource {
public:
    explicit ErrorSource(std::uint64_t seed) : engine_(seed) {}
    bool flip(double p) { return p > 0.0 && static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p; }
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

struct BcwConfig {
    std::int64_t g_protocol_cost = 1;
    int repetitions = 1;
    /// Probability that one run of the g-subprotocol returns the wrong bit.
    double inject_error = 0.0;
};

/// Walks the tree; each query runs the g-subprotocol `repetitions` times and
/// takes the majority (ties read as 0). Throws DomainViolation when a queried
/// block is outside dom(g).
ProtocolRun bcw_compile_and_run(const DecisionTree& tree, const InnerFunction& g, const BcwConfig& config,
                                std::uint64_t x, std::uint64_t y, std::uint64_t seed);

/// depth * repetitions * g_protocol_cost.
std::int64_t bcw_cost_bound(const DecisionTree& tree, const BcwConfig& config);

struct HamOracleConfig {
    double c_ham = 1.0;
    /// Probability that one Ham invocation returns the wrong answer, in [0, 1/3].
    double inject_error = 0.0;
    /// Overrides the Chernoff schedule when positive.
    int repetitions = 0;
};

/// ceil(c_ham * d * log2(max(d, 2))).
std::int64_t ham_cost(const HamOracleConfig& config, int d);

/// Smallest odd r with exp(-r/18) <= 1/(3(floor(log2 max(delta_cap, 1)) + 1)); 1 when delta_cap = 0.
int repetition_schedule(int delta_cap);

/// Header bits of the symmetric protocol: 2 for the threshold flags plus
/// ceil(log2(max(ell1, 2))) for z_A.
std::int64_t symand_header_bits(int ell1);

/// (ceil(log2(Delta + 1))) probes * r * ham_cost(Delta) + header bits.
std::int64_t symand_cost_bound(int ell1, const HamOracleConfig& config);

/// f(x AND y) for symmetric f with ell0 = 0 through the threshold check and a
/// binary search for |x XOR y| with Ham oracles. Throws ParameterError when
/// ell0 != 0 or f flips outside the ell1 window, NotSymmetric otherwise.
ProtocolRun symmetric_and_protocol(const BooleanFunction& f, std::uint64_t x, std::uint64_t y,
                                   const HamOracleConfig& config, std::uint64_t seed);

/// Per-trial seed: splitmix64(master + trial).
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);

/// Each party independently gets a uniform number of zeros in [0, max_zeros]
/// at uniformly random positions.
std::pair<std::uint64_t, std::uint64_t> sample_near_top(int n, int max_zeros, std::mt19937_64& rng);

/// Uniform (x, y) over dom(f box g): each block pair drawn from the defined cells.
std::pair<std::uint64_t, std::uint64_t> sample_composed_input(int n, const InnerFunction& g, std::mt19937_64& rng);

struct CostFit {
    double c = 0.0;  // geometric mean of bits / model
    std::vector<double> ratios;
    bool within_factor_two = false;  // every ratio in [c/2, 2c]
};

/// ell1 * log2(ell1)^2 * max(1, log2 log2 ell1).
double symand_cost_model(int ell1);

CostFit fit_cost_model(const std::vector<std::pair<int, double>>& measurements);

}  // namespace blockcomp
