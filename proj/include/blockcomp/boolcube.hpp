#pragma once

#include "blockcomp/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace blockcomp {

/// Default cap on rows/columns of any materialized two-party matrix.
inline constexpr std::size_t kDefaultMaterializeLimit = 4096;

/// Largest supported arity for truth tables.
inline constexpr int kMaxArity = 24;

/// Largest per-party input length of a dense two-party value matrix.
inline constexpr int kMaxPartyBits = 14;

/// A total function {0,1}^n -> {0,1} stored as a truth table.
///
/// Input encoding: bit i of the table index is x_{i+1}, so x_1 is the
/// least-significant bit. Every module uses this convention.
class BooleanFunction {
public:
    BooleanFunction(int n, std::vector<std::uint8_t> table);

    static BooleanFunction from_predicate(int n, const std::function<bool(std::uint64_t)>& pred);

    int arity() const noexcept { return n_; }
    std::size_t size() const noexcept { return table_.size(); }
    std::span<const std::uint8_t> table() const noexcept { return table_; }

    bool operator()(std::uint64_t index) const { return table_[index] != 0; }

    /// Evaluates at an explicit bit vector x_1..x_n.
    bool evaluate(std::span<const std::uint8_t> x) const;

    bool is_constant() const noexcept;
    BooleanFunction negation() const;

    friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

private:
    int n_;
    std::vector<std::uint8_t> table_;
};

BooleanFunction constant_function(int n, bool value);
BooleanFunction or_function(int n);
BooleanFunction and_function(int n);
BooleanFunction parity_function(int n);
BooleanFunction majority_function(int n);
/// f(x) = [|x| >= t].
BooleanFunction threshold_function(int n, int t);
/// f(x) = x_{i+1} (0-based variable index).
BooleanFunction dictator_function(int n, int i);
/// Symmetric function with f(x) = values[|x|].
BooleanFunction symmetric_function(std::span<const std::uint8_t> values);

/// Character chi_w(x) = (-1)^{w.x} on table indices.
inline int character(std::uint64_t w, std::uint64_t x) {
    return (__builtin_popcountll(w & x) & 1) ? -1 : 1;
}

/// Exact Fourier coefficients hat f_w = 2^{-n} sum_x f(x) chi_w(x).
struct FourierSpectrum {
    int n = 0;
    std::vector<Rational> coeffs;  // indexed by w

    const Rational& operator[](std::uint64_t w) const { return coeffs[w]; }
    /// Smallest |w| with a non-zero coefficient; n + 1 when all vanish.
    int min_support_weight() const;
    Rational max_abs() const;
};

FourierSpectrum fourier(const BooleanFunction& f);
/// Same transform for an arbitrary rational-valued function on the cube.
FourierSpectrum fourier(int n, std::span<const Rational> values);
/// Inverse transform: sum_w coeffs[w] chi_w(x) for every x.
std::vector<Rational> inverse_fourier(const FourierSpectrum& spectrum);

enum class Cell : std::int8_t { zero = 0, one = 1, undefined = -1 };

inline Cell to_cell(bool b) { return b ? Cell::one : Cell::zero; }

/// A possibly partial function {0,1}^k x {0,1}^k -> {0,1}, stored as a dense
/// 2^k x 2^k value matrix (rows indexed by Alice's input x, columns by Bob's y).
class TwoPartyFunction {
public:
    TwoPartyFunction(int k, std::vector<Cell> cells);

    static TwoPartyFunction from_predicate(int k,
                                           const std::function<Cell(std::uint64_t, std::uint64_t)>& pred);

    int bits_per_party() const noexcept { return k_; }
    std::size_t side() const noexcept { return side_; }
    Cell at(std::uint64_t x, std::uint64_t y) const { return cells_[x * side_ + y]; }
    bool defined(std::uint64_t x, std::uint64_t y) const { return at(x, y) != Cell::undefined; }
    bool is_total() const noexcept;
    std::span<const Cell> cells() const noexcept { return cells_; }

    friend bool operator==(const TwoPartyFunction&, const TwoPartyFunction&) = default;

private:
    int k_;
    std::size_t side_;
    std::vector<Cell> cells_;
};

/// Inner functions g_k are two-party functions on k-bit blocks.
using InnerFunction = TwoPartyFunction;

InnerFunction inner_product_function(int k);
/// IP_k restricted to x != 0^k (the row set used by the IP distribution pair).
InnerFunction inner_product_nonzero_rows(int k);
/// Binary AND on one bit per party.
InnerFunction and_inner_function();
/// DISJ_k on all inputs: 1 iff the supports of x and y intersect.
InnerFunction disjointness_function(int k);
/// DISJ_k restricted to weight-(k/3) strings intersecting in at most one element.
InnerFunction disjointness_restricted(int k);
/// Uniformly random total inner function, reproducible from the seed.
InnerFunction random_inner_function(int k, std::uint64_t seed);

struct SymmetricProfile {
    int n = 0;
    std::vector<std::uint8_t> values;  // values[m] = f(1^m 0^{n-m})
    int ell0 = 0;
    int ell1 = 0;
};

bool is_symmetric(const BooleanFunction& f);

/// Throws NotSymmetric when two inputs of equal Hamming weight disagree.
SymmetricProfile symmetric_profile(const BooleanFunction& f);

/// Recomputes ell0/ell1 from a weight-profile vector alone.
SymmetricProfile profile_from_values(std::span<const std::uint8_t> values);

/// Evaluates (f box g)(x, y) without materializing; x and y are nk-bit strings
/// with block i occupying bits (i-1)k .. ik-1 of the index.
Cell composed_value(const BooleanFunction& f, const InnerFunction& g, std::uint64_t x, std::uint64_t y);

/// k-bit block i (0-based) of an nk-bit string.
inline std::uint64_t block_of(std::uint64_t x, int i, int k) {
    return (x >> (static_cast<unsigned>(i) * static_cast<unsigned>(k))) & ((std::uint64_t{1} << k) - 1);
}

/// Materializes f box g. Throws SizeGuardExceeded when 2^{nk} exceeds limit.
TwoPartyFunction block_compose(const BooleanFunction& f, const InnerFunction& g,
                               std::size_t limit = kDefaultMaterializeLimit);

/// f'(x) = f(x 1^ones 0^zeros): the suffix fills the top ones+zeros variables.
BooleanFunction pad_restrict(const BooleanFunction& f, int ones, int zeros);

}  // namespace blockcomp
