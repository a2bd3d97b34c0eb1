#include "blockcomp/protocols.hpp"

#include "blockcomp/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

namespace blockcomp {

int DecisionTree::depth() const {
    if (nodes.empty()) return 0;
    std::vector<int> stack{root};
    std::vector<int> level{0};
    int best = 0;
    while (!stack.empty()) {
        const int id = stack.back();
        const int d = level.back();
        stack.pop_back();
        level.pop_back();
        const Node& node = nodes[static_cast<std::size_t>(id)];
        if (node.variable < 0) {
            best = std::max(best, d);
            continue;
        }
        stack.push_back(node.child0);
        level.push_back(d + 1);
        stack.push_back(node.child1);
        level.push_back(d + 1);
    }
    return best;
}

bool DecisionTree::evaluate(std::uint64_t x) const {
    int id = root;
    for (;;) {
        const Node& node = nodes[static_cast<std::size_t>(id)];
        if (node.variable < 0) return node.value;
        id = (x >> node.variable) & 1 ? node.child1 : node.child0;
    }
}

namespace {

// Subcube state in base 3: digit i is 0, 1, or 2 (free).
class TreeSearch {
public:
    explicit TreeSearch(const BooleanFunction& f) : f_(f), n_(f.arity()) {
        std::size_t states = 1;
        for (int i = 0; i < n_; ++i) states *= 3;
        depth_.assign(states, -1);
        choice_.assign(states, -1);
        pow3_.resize(static_cast<std::size_t>(n_));
        for (int i = 0, p = 1; i < n_; ++i, p *= 3) pow3_[i] = p;
    }

    std::size_t full() const {
        std::size_t s = 0;
        for (int i = 0; i < n_; ++i) s += 2 * pow3_[i];
        return s;
    }

    int solve(std::size_t state) {
        if (depth_[state] >= 0) return depth_[state];
        if (constant_on(state)) return depth_[state] = 0;
        int best = n_ + 1;
        for (int i = 0; i < n_; ++i) {
            if (digit(state, i) != 2) continue;
            const std::size_t base = state - 2 * pow3_[i];
            const int d = 1 + std::max(solve(base), solve(base + pow3_[i]));
            if (d < best) {
                best = d;
                choice_[state] = i;
            }
        }
        return depth_[state] = best;
    }

    int build(std::size_t state, DecisionTree& tree) {
        solve(state);
        const int id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        if (depth_[state] == 0) {
            tree.nodes[id].value = f_(any_point(state));
            return id;
        }
        const int i = choice_[state];
        const std::size_t base = state - 2 * pow3_[i];
        const int c0 = build(base, tree);
        const int c1 = build(base + pow3_[i], tree);
        tree.nodes[id].variable = i;
        tree.nodes[id].child0 = c0;
        tree.nodes[id].child1 = c1;
        return id;
    }

private:
    int digit(std::size_t state, int i) const { return static_cast<int>((state / pow3_[i]) % 3); }

    std::uint64_t any_point(std::size_t state) const {
        std::uint64_t x = 0;
        for (int i = 0; i < n_; ++i)
            if (digit(state, i) == 1) x |= std::uint64_t{1} << i;
        return x;
    }

    bool constant_on(std::size_t state) const {
        std::uint64_t fixed = 0;
        std::uint64_t value = 0;
        for (int i = 0; i < n_; ++i) {
            const int d = digit(state, i);
            if (d == 2) continue;
            fixed |= std::uint64_t{1} << i;
            if (d == 1) value |= std::uint64_t{1} << i;
        }
        const bool first = f_(value);
        for (std::uint64_t x = 0; x < f_.size(); ++x)
            if ((x & fixed) == value && f_(x) != first) return false;
        return true;
    }

    const BooleanFunction& f_;
    int n_;
    std::vector<int> depth_;
    std::vector<int> choice_;
    std::vector<std::size_t> pow3_;
};

bool majority(int ones, int runs) { return 2 * ones > runs; }

}  // namespace

DecisionTree optimal_decision_tree(const BooleanFunction& f) {
    if (f.arity() > kMaxTreeArity)
        throw SizeGuardExceeded("decision-tree search limited to n <= " + std::to_string(kMaxTreeArity));
    TreeSearch search(f);
    DecisionTree tree;
    tree.n = f.arity();
    tree.root = search.build(search.full(), tree);
    return tree;
}

int optimal_decision_tree_depth(const BooleanFunction& f) { return optimal_decision_tree(f).depth(); }

std::int64_t CostLedger::subprotocol_bits() const {
    std::int64_t total = 0;
    for (const auto& [name, bits] : subprotocol_invocations) total += bits;
    return total;
}

ProtocolRun bcw_compile_and_run(const DecisionTree& tree, const InnerFunction& g, const BcwConfig& config,
                                std::uint64_t x, std::uint64_t y, std::uint64_t seed) {
    if (config.repetitions < 1) throw ParameterError("repetitions must be at least 1");
    if (config.g_protocol_cost < 0) throw ParameterError("g protocol cost must be non-negative");
    if (config.inject_error < 0.0 || config.inject_error > 1.0) throw ParameterError("error probability outside [0, 1]");
    const int k = g.bits_per_party();
    ProtocolRun run;
    run.ledger.rng_seed = seed;
    ErrorSource errors(seed);
    int id = tree.root;
    for (;;) {
        const auto& node = tree.nodes[static_cast<std::size_t>(id)];
        if (node.variable < 0) {
            run.output = node.value;
            return run;
        }
        const Cell cell = g.at(block_of(x, node.variable, k), block_of(y, node.variable, k));
        if (cell == Cell::undefined)
            throw DomainViolation("block " + std::to_string(node.variable + 1) + " is outside dom(g)");
        int ones = 0;
        for (int r = 0; r < config.repetitions; ++r) {
            const bool answer = (cell == Cell::one) != errors.flip(config.inject_error);
            ones += answer;
            run.ledger.invoke("g[" + std::to_string(node.variable + 1) + "]", config.g_protocol_cost);
        }
        id = majority(ones, config.repetitions) ? node.child1 : node.child0;
    }
}

std::int64_t bcw_cost_bound(const DecisionTree& tree, const BcwConfig& config) {
    return static_cast<std::int64_t>(tree.depth()) * config.repetitions * config.g_protocol_cost;
}

std::int64_t ham_cost(const HamOracleConfig& config, int d) {
    return static_cast<std::int64_t>(std::ceil(config.c_ham * d * std::log2(std::max(d, 2))));
}

int repetition_schedule(int delta_cap) {
    if (delta_cap < 0) throw ParameterError("Delta must be non-negative");
    if (delta_cap == 0) return 1;
    const int levels = std::bit_width(static_cast<unsigned>(delta_cap));  // floor(log2) + 1
    const double target = 1.0 / (3.0 * levels);
    int r = 1;
    while (std::exp(-r / 18.0) > target) r += 2;
    return r;
}

std::int64_t symand_header_bits(int ell1) {
    return 2 + static_cast<std::int64_t>(std::ceil(std::log2(std::max(ell1, 2))));
}

namespace {

int repetitions_for(const HamOracleConfig& config, int delta_cap) {
    return config.repetitions > 0 ? config.repetitions : repetition_schedule(delta_cap);
}

}  // namespace

std::int64_t symand_cost_bound(int ell1, const HamOracleConfig& config) {
    const int delta_cap = 2 * (ell1 - 1);
    if (delta_cap <= 0) return symand_header_bits(ell1);
    const int probes = std::bit_width(static_cast<unsigned>(delta_cap + 1));  // floor(log2(Delta+1)) + 1
    return symand_header_bits(ell1) +
           static_cast<std::int64_t>(probes) * repetitions_for(config, delta_cap) * ham_cost(config, delta_cap);
}

ProtocolRun symmetric_and_protocol(const BooleanFunction& f, std::uint64_t x, std::uint64_t y,
                                   const HamOracleConfig& config, std::uint64_t seed) {
    if (config.inject_error < 0.0 || config.inject_error > 1.0 / 3.0)
        throw ParameterError("injected Ham error must lie in [0, 1/3]");
    const SymmetricProfile profile = symmetric_profile(f);
    if (profile.ell0 != 0) throw ParameterError("the protocol needs ell0(f) = 0");
    const int n = profile.n;
    const int ell1 = profile.ell1;
    const bool low = profile.values[0] != 0;
    for (int m = 0; m <= n - ell1; ++m)
        if ((profile.values[m] != 0) != low)
            throw ParameterError("f flips at weight " + std::to_string(m) + ", outside the top ell1 window");

    ProtocolRun run;
    run.ledger.rng_seed = seed;
    if (low) run.ledger.notes.emplace_back("low plateau is 1; computing the negation and flipping the output");
    auto value = [&](int m) { return (profile.values[static_cast<std::size_t>(m)] != 0) != low; };

    const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    x &= mask;
    y &= mask;
    const int z_a = n - std::popcount(x);
    const int z_b = n - std::popcount(y);

    run.ledger.alice(1);
    run.ledger.bob(1);
    if (ell1 == 0 || z_a >= ell1 || z_b >= ell1) {
        run.output = low;
        return run;
    }

    run.ledger.alice(static_cast<std::int64_t>(std::ceil(std::log2(std::max(ell1, 2)))));
    const int delta_cap = 2 * (ell1 - 1);
    const int reps = repetitions_for(config, delta_cap);
    const int delta = std::popcount(x ^ y);
    ErrorSource errors(seed);

    // Largest d in [0, Delta] with |x xor y| >= d.
    int lo = 0;
    int hi = delta_cap;
    while (lo < hi) {
        const int mid = lo + (hi - lo + 1) / 2;
        const std::int64_t cost = ham_cost(config, mid);
        int ones = 0;
        for (int r = 0; r < reps; ++r) {
            ones += (delta >= mid) != errors.flip(config.inject_error);
            run.ledger.invoke("ham[" + std::to_string(mid) + "]", cost);
        }
        if (majority(ones, reps)) lo = mid;
        else hi = mid - 1;
    }

    const int weight = std::clamp((2 * n - z_a - z_b - lo) / 2, 0, n);
    run.output = value(weight) != low;
    return run;
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
    std::uint64_t z = master + trial + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::pair<std::uint64_t, std::uint64_t> sample_near_top(int n, int max_zeros, std::mt19937_64& rng) {
    if (n < 1 || n > 64) throw ParameterError("n must lie in [1, 64]");
    max_zeros = std::clamp(max_zeros, 0, n);
    std::vector<int> positions(static_cast<std::size_t>(n));
    std::iota(positions.begin(), positions.end(), 0);
    auto draw = [&] {
        const int zeros = static_cast<int>(rng() % static_cast<std::uint64_t>(max_zeros + 1));
        std::uint64_t v = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
        for (int i = 0; i < zeros; ++i) {
            const auto j = static_cast<std::size_t>(i) + rng() % static_cast<std::uint64_t>(n - i);
            std::swap(positions[static_cast<std::size_t>(i)], positions[j]);
            v &= ~(std::uint64_t{1} << positions[static_cast<std::size_t>(i)]);
        }
        return v;
    };
    const std::uint64_t x = draw();
    const std::uint64_t y = draw();
    return {x, y};
}

std::pair<std::uint64_t, std::uint64_t> sample_composed_input(int n, const InnerFunction& g, std::mt19937_64& rng) {
    const int k = g.bits_per_party();
    if (n * k > 64) throw SizeGuardExceeded("composed input exceeds 64 bits");
    std::vector<std::pair<std::uint64_t, std::uint64_t>> cells;
    for (std::uint64_t a = 0; a < g.side(); ++a)
        for (std::uint64_t b = 0; b < g.side(); ++b)
            if (g.defined(a, b)) cells.emplace_back(a, b);
    if (cells.empty()) throw DomainViolation("g has an empty domain");
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    for (int i = 0; i < n; ++i) {
        const auto& [a, b] = cells[rng() % cells.size()];
        x |= a << (static_cast<unsigned>(i) * static_cast<unsigned>(k));
        y |= b << (static_cast<unsigned>(i) * static_cast<unsigned>(k));
    }
    return {x, y};
}

double symand_cost_model(int ell1) {
    const double l = std::log2(static_cast<double>(ell1));
    const double ll = l > 0.0 ? std::log2(l) : 0.0;
    return ell1 * l * l * std::max(1.0, ll);
}

CostFit fit_cost_model(const std::vector<std::pair<int, double>>& measurements) {
    CostFit fit;
    if (measurements.empty()) return fit;
    double log_sum = 0.0;
    for (const auto& [ell1, bits] : measurements) {
        if (ell1 < 2) throw ParameterError("the cost model needs ell1 >= 2");
        const double ratio = bits / symand_cost_model(ell1);
        fit.ratios.push_back(ratio);
        log_sum += std::log(ratio);
    }
    fit.c = std::exp(log_sum / static_cast<double>(fit.ratios.size()));
    fit.within_factor_two = std::all_of(fit.ratios.begin(), fit.ratios.end(),
                                        [&](double r) { return r >= fit.c / 2.0 && r <= 2.0 * fit.c; });
    return fit;
}

}  // namespace blockcomp
