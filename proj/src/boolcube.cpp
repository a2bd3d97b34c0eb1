#include "blockcomp/boolcube.hpp"

#include "blockcomp/errors.hpp"
#include "blockcomp/kernels.hpp"

#include <random>
#include <string>

namespace blockcomp {

namespace {

void check_arity(int n) {
    if (n < 0 || n > kMaxArity)
        throw ArityMismatch("arity " + std::to_string(n) + " outside [0, " + std::to_string(kMaxArity) + "]");
}

}  // namespace

BooleanFunction::BooleanFunction(int n, std::vector<std::uint8_t> table) : n_(n), table_(std::move(table)) {
    check_arity(n);
    if (table_.size() != (std::size_t{1} << n))
        throw ArityMismatch("truth table has " + std::to_string(table_.size()) + " entries, expected 2^" +
                            std::to_string(n));
    for (auto& b : table_)
        if (b > 1) throw ParseError("truth table entries must be 0 or 1");
}

BooleanFunction BooleanFunction::from_predicate(int n, const std::function<bool(std::uint64_t)>& pred) {
    check_arity(n);
    std::vector<std::uint8_t> table(std::size_t{1} << n);
    for (std::uint64_t x = 0; x < table.size(); ++x) table[x] = pred(x) ? 1 : 0;
    return BooleanFunction(n, std::move(table));
}

bool BooleanFunction::evaluate(std::span<const std::uint8_t> x) const {
    if (static_cast<int>(x.size()) != n_)
        throw ArityMismatch("input has " + std::to_string(x.size()) + " bits, function arity is " +
                            std::to_string(n_));
    std::uint64_t index = 0;
    for (int i = 0; i < n_; ++i) {
        if (x[i] > 1) throw DomainViolation("input bits must be 0 or 1");
        index |= std::uint64_t{x[i]} << i;
    }
    return (*this)(index);
}

bool BooleanFunction::is_constant() const noexcept {
    for (auto b : table_)
        if (b != table_[0]) return false;
    return true;
}

BooleanFunction BooleanFunction::negation() const {
    auto table = table_;
    for (auto& b : table) b ^= 1;
    return BooleanFunction(n_, std::move(table));
}

BooleanFunction constant_function(int n, bool value) {
    return BooleanFunction::from_predicate(n, [value](std::uint64_t) { return value; });
}

BooleanFunction or_function(int n) {
    return BooleanFunction::from_predicate(n, [](std::uint64_t x) { return x != 0; });
}

BooleanFunction and_function(int n) {
    const std::uint64_t all = (std::uint64_t{1} << n) - 1;
    return BooleanFunction::from_predicate(n, [all](std::uint64_t x) { return x == all; });
}

BooleanFunction parity_function(int n) {
    return BooleanFunction::from_predicate(n, [](std::uint64_t x) { return __builtin_popcountll(x) & 1; });
}

BooleanFunction majority_function(int n) {
    return BooleanFunction::from_predicate(n, [n](std::uint64_t x) { return 2 * __builtin_popcountll(x) > n; });
}

BooleanFunction threshold_function(int n, int t) {
    return BooleanFunction::from_predicate(n, [t](std::uint64_t x) { return __builtin_popcountll(x) >= t; });
}

BooleanFunction dictator_function(int n, int i) {
    if (i < 0 || i >= n) throw ParameterError("dictator variable out of range");
    return BooleanFunction::from_predicate(n, [i](std::uint64_t x) { return (x >> i) & 1; });
}

BooleanFunction symmetric_function(std::span<const std::uint8_t> values) {
    if (values.empty()) throw ParameterError("symmetric profile must have n+1 entries");
    const int n = static_cast<int>(values.size()) - 1;
    return BooleanFunction::from_predicate(
        n, [&values](std::uint64_t x) { return values[static_cast<std::size_t>(__builtin_popcountll(x))] != 0; });
}

int FourierSpectrum::min_support_weight() const {
    int best = n + 1;
    for (std::uint64_t w = 0; w < coeffs.size(); ++w)
        if (coeffs[w] != 0) best = std::min(best, __builtin_popcountll(w));
    return best;
}

Rational FourierSpectrum::max_abs() const {
    Rational best = 0;
    for (const auto& c : coeffs)
        if (abs(c) > best) best = abs(c);
    return best;
}

FourierSpectrum fourier(const BooleanFunction& f) {
    std::vector<std::int64_t> data(f.table().begin(), f.table().end());
    kernels::omp::walsh_hadamard(data);
    FourierSpectrum spectrum{f.arity(), {}};
    spectrum.coeffs.reserve(data.size());
    const Integer scale = Integer(1) << f.arity();
    for (auto v : data) spectrum.coeffs.emplace_back(Integer(v), scale);
    return spectrum;
}

namespace {

void walsh_hadamard_exact(std::vector<Rational>& data) {
    for (std::size_t len = 1; len < data.size(); len <<= 1)
        for (std::size_t i = 0; i < data.size(); i += len << 1)
            for (std::size_t j = i; j < i + len; ++j) {
                Rational u = data[j];
                Rational v = data[j + len];
                data[j] = u + v;
                data[j + len] = u - v;
            }
}

}  // namespace

FourierSpectrum fourier(int n, std::span<const Rational> values) {
    check_arity(n);
    if (values.size() != (std::size_t{1} << n)) throw ArityMismatch("value vector length is not 2^n");
    std::vector<Rational> data(values.begin(), values.end());
    walsh_hadamard_exact(data);
    const Rational scale(Integer(1), Integer(1) << n);
    for (auto& v : data) v *= scale;
    return FourierSpectrum{n, std::move(data)};
}

std::vector<Rational> inverse_fourier(const FourierSpectrum& spectrum) {
    std::vector<Rational> data = spectrum.coeffs;
    walsh_hadamard_exact(data);
    return data;
}

TwoPartyFunction::TwoPartyFunction(int k, std::vector<Cell> cells) : k_(k), cells_(std::move(cells)) {
    if (k < 0 || k > kMaxPartyBits) throw ArityMismatch("two-party block length out of range");
    side_ = std::size_t{1} << k;
    if (cells_.size() != side_ * side_)
        throw ArityMismatch("two-party value matrix must be 2^k x 2^k with k=" + std::to_string(k));
}

TwoPartyFunction TwoPartyFunction::from_predicate(
    int k, const std::function<Cell(std::uint64_t, std::uint64_t)>& pred) {
    if (k < 0 || k > kMaxPartyBits) throw ArityMismatch("two-party block length out of range");
    const std::size_t side = std::size_t{1} << k;
    std::vector<Cell> cells(side * side);
    for (std::uint64_t x = 0; x < side; ++x)
        for (std::uint64_t y = 0; y < side; ++y) cells[x * side + y] = pred(x, y);
    return TwoPartyFunction(k, std::move(cells));
}

bool TwoPartyFunction::is_total() const noexcept {
    for (auto c : cells_)
        if (c == Cell::undefined) return false;
    return true;
}

InnerFunction inner_product_function(int k) {
    return InnerFunction::from_predicate(
        k, [](std::uint64_t x, std::uint64_t y) { return to_cell(__builtin_popcountll(x & y) & 1); });
}

InnerFunction inner_product_nonzero_rows(int k) {
    return InnerFunction::from_predicate(k, [](std::uint64_t x, std::uint64_t y) {
        return x == 0 ? Cell::undefined : to_cell(__builtin_popcountll(x & y) & 1);
    });
}

InnerFunction and_inner_function() {
    return InnerFunction::from_predicate(1, [](std::uint64_t x, std::uint64_t y) { return to_cell(x & y); });
}

InnerFunction disjointness_function(int k) {
    return InnerFunction::from_predicate(k, [](std::uint64_t x, std::uint64_t y) { return to_cell((x & y) != 0); });
}

InnerFunction disjointness_restricted(int k) {
    if (k < 3 || k % 3 != 0) throw ParameterError("DISJ restriction needs k >= 3 divisible by 3");
    const int p = k / 3;
    return InnerFunction::from_predicate(k, [p](std::uint64_t x, std::uint64_t y) {
        if (__builtin_popcountll(x) != p || __builtin_popcountll(y) != p) return Cell::undefined;
        const int meet = __builtin_popcountll(x & y);
        if (meet > 1) return Cell::undefined;
        return to_cell(meet == 1);
    });
}

InnerFunction random_inner_function(int k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return InnerFunction::from_predicate(k, [&rng](std::uint64_t, std::uint64_t) { return to_cell(rng() >> 63); });
}

bool is_symmetric(const BooleanFunction& f) {
    std::vector<int> seen(static_cast<std::size_t>(f.arity()) + 1, -1);
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        auto& slot = seen[static_cast<std::size_t>(__builtin_popcountll(x))];
        if (slot < 0) slot = f(x);
        else if (slot != static_cast<int>(f(x))) return false;
    }
    return true;
}

SymmetricProfile profile_from_values(std::span<const std::uint8_t> values) {
    if (values.empty()) throw ParameterError("profile needs n+1 values");
    SymmetricProfile profile;
    profile.n = static_cast<int>(values.size()) - 1;
    profile.values.assign(values.begin(), values.end());
    const int n = profile.n;
    // ell0: last flip at weight m with 1 <= m <= n/2.
    for (int m = 1; 2 * m <= n; ++m)
        if (values[m] != values[m - 1]) profile.ell0 = m;
    // ell1: flips between m and m+1 with ceil(n/2) <= m < n; keep the largest n - m.
    for (int m = (n + 1) / 2; m < n; ++m)
        if (values[m] != values[m + 1]) profile.ell1 = std::max(profile.ell1, n - m);
    return profile;
}

SymmetricProfile symmetric_profile(const BooleanFunction& f) {
    if (!is_symmetric(f)) throw NotSymmetric("function value depends on more than the Hamming weight");
    std::vector<std::uint8_t> values(static_cast<std::size_t>(f.arity()) + 1);
    for (int m = 0; m <= f.arity(); ++m) values[m] = f((std::uint64_t{1} << m) - 1);
    return profile_from_values(values);
}

Cell composed_value(const BooleanFunction& f, const InnerFunction& g, std::uint64_t x, std::uint64_t y) {
    const int k = g.bits_per_party();
    std::uint64_t z = 0;
    for (int i = 0; i < f.arity(); ++i) {
        const Cell c = g.at(block_of(x, i, k), block_of(y, i, k));
        if (c == Cell::undefined) return Cell::undefined;
        z |= std::uint64_t{c == Cell::one} << i;
    }
    return to_cell(f(z));
}

TwoPartyFunction block_compose(const BooleanFunction& f, const InnerFunction& g, std::size_t limit) {
    const int bits = f.arity() * g.bits_per_party();
    if (bits > kMaxPartyBits || (std::size_t{1} << bits) > limit)
        throw SizeGuardExceeded("composition needs 2^" + std::to_string(bits) + " rows, limit is " +
                                std::to_string(limit));
    const std::size_t side = std::size_t{1} << bits;
    std::vector<Cell> cells(side * side);
    const auto rows = static_cast<std::int64_t>(side);
#pragma omp parallel for schedule(static)
    for (std::int64_t x = 0; x < rows; ++x)
        for (std::uint64_t y = 0; y < side; ++y)
            cells[static_cast<std::size_t>(x) * side + y] = composed_value(f, g, static_cast<std::uint64_t>(x), y);
    return TwoPartyFunction(bits, std::move(cells));
}

BooleanFunction pad_restrict(const BooleanFunction& f, int ones, int zeros) {
    if (ones < 0 || zeros < 0) throw ParameterError("pad counts must be non-negative");
    const int n = f.arity() - ones - zeros;
    if (n < 1)
        throw ArityMismatch("padding " + std::to_string(ones) + " ones and " + std::to_string(zeros) +
                            " zeros leaves arity " + std::to_string(n));
    const std::uint64_t suffix = ((std::uint64_t{1} << ones) - 1) << n;
    return BooleanFunction::from_predicate(n, [&f, suffix](std::uint64_t x) { return f(x | suffix); });
}

}  // namespace blockcomp
