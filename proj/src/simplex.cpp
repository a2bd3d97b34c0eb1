#include "blockcomp/simplex.hpp"

#include "blockcomp/errors.hpp"

#include <cstdint>
#include <optional>

namespace blockcomp::lp {

namespace {

class Tableau {
public:
    Tableau(const LinearProgram& p, bool parallel)
        : m_(p.rows), n_(p.cols), width_(p.cols + p.rows + 1), parallel_(parallel),
          cells_((p.rows + 1) * width_), basis_(p.rows), sign_(p.rows, 1) {
        for (std::size_t i = 0; i < m_; ++i) {
            if (p.b[i] < 0) sign_[i] = -1;
            for (std::size_t j = 0; j < n_; ++j) at(i, j) = sign_[i] * p.at(i, j);
            at(i, n_ + i) = 1;
            rhs(i) = sign_[i] * p.b[i];
            basis_[i] = n_ + i;
        }
    }

    Rational& at(std::size_t i, std::size_t j) { return cells_[i * width_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return cells_[i * width_ + j]; }
    Rational& rhs(std::size_t i) { return at(i, width_ - 1); }
    Rational& cost(std::size_t j) { return at(m_, j); }

    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }
    std::size_t artificial(std::size_t i) const { return n_ + i; }
    std::size_t basis(std::size_t i) const { return basis_[i]; }
    int sign(std::size_t i) const { return sign_[i]; }

    /// Phase-1 objective: sum of artificials, priced out against the basis.
    void load_phase_one() {
        for (std::size_t j = 0; j < width_; ++j) cost(j) = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            cost(n_ + i) = 1;
        }
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < width_; ++j)
                if (at(i, j) != 0) cost(j) -= at(i, j);
    }

    void load_phase_two(const std::vector<Rational>& c) {
        for (std::size_t j = 0; j < width_; ++j) cost(j) = j < n_ ? c[j] : Rational(0);
        for (std::size_t i = 0; i < m_; ++i) {
            const std::size_t bj = basis_[i];
            const Rational cb = bj < n_ ? c[bj] : Rational(0);
            if (cb == 0) continue;
            for (std::size_t j = 0; j < width_; ++j)
                if (at(i, j) != 0) cost(j) -= cb * at(i, j);
        }
    }

    /// Runs Bland's rule until optimal; returns false when unbounded.
    bool run(std::size_t entering_limit, std::size_t& pivots) {
        for (;;) {
            std::optional<std::size_t> enter;
            for (std::size_t j = 0; j < entering_limit; ++j)
                if (cost(j) < 0) {
                    enter = j;
                    break;
                }
            if (!enter) return true;
            const auto leave = ratio_test(*enter);
            if (!leave) return false;
            pivot(*leave, *enter);
            ++pivots;
        }
    }

    std::optional<std::size_t> ratio_test(std::size_t j) {
        std::optional<std::size_t> best;
        Rational best_ratio;
        for (std::size_t i = 0; i < m_; ++i) {
            if (at(i, j) <= 0) continue;
            Rational ratio = rhs(i) / at(i, j);
            if (!best || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*best])) {
                best = i;
                best_ratio = std::move(ratio);
            }
        }
        return best;
    }

    void pivot(std::size_t r, std::size_t j) {
        const Rational inv = 1 / at(r, j);
        std::vector<std::size_t> support;
        for (std::size_t c = 0; c < width_; ++c) {
            if (at(r, c) == 0) continue;
            at(r, c) *= inv;
            support.push_back(c);
        }
        const auto total = static_cast<std::int64_t>(m_ + 1);
        const bool wide = parallel_ && (m_ + 1) * support.size() >= 4096;
#pragma omp parallel for schedule(dynamic, 8) if (wide)
        for (std::int64_t ii = 0; ii < total; ++ii) {
            const auto i = static_cast<std::size_t>(ii);
            if (i == r || at(i, j) == 0) continue;
            const Rational factor = at(i, j);
            for (std::size_t c : support) at(i, c) -= factor * at(r, c);
        }
        basis_[r] = j;
    }

    /// Moves zero-level artificials out of the basis where an original column
    /// allows it; rows that cannot be cleared are redundant and stay inert.
    void expel_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            for (std::size_t j = 0; j < n_; ++j)
                if (at(i, j) != 0) {
                    pivot(i, j);
                    break;
                }
        }
    }

    std::vector<Rational> primal() {
        std::vector<Rational> x(n_);
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_) x[basis_[i]] = rhs(i);
        return x;
    }

private:
    std::size_t m_;
    std::size_t n_;
    std::size_t width_;
    bool parallel_;
    std::vector<Rational> cells_;
    std::vector<std::size_t> basis_;
    std::vector<int> sign_;
};

}  // namespace

Result solve(const LinearProgram& program, const Options& options) {
    if (program.a.size() != program.rows * program.cols || program.b.size() != program.rows)
        throw ParameterError("linear program dimensions are inconsistent");
    if (!program.c.empty() && program.c.size() != program.cols)
        throw ParameterError("cost vector length does not match column count");

    Tableau t(program, options.parallel);
    Result result;
    t.load_phase_one();
    t.run(program.cols, result.pivots);

    const Rational infeasibility = -t.rhs(program.rows);
    if (infeasibility > 0) {
        result.status = Status::infeasible;
        result.objective = infeasibility;
        // Reduced cost of artificial i is 1 - y_i in the sign-normalized rows.
        result.farkas.resize(program.rows);
        for (std::size_t i = 0; i < program.rows; ++i)
            result.farkas[i] = t.sign(i) * (1 - t.cost(t.artificial(i)));
        return result;
    }

    t.expel_artificials();
    if (program.c.empty() || !options.optimize) {
        result.status = Status::optimal;
        result.x = t.primal();
        return result;
    }

    t.load_phase_two(program.c);
    if (!t.run(program.cols, result.pivots)) {
        result.status = Status::unbounded;
        result.x = t.primal();
        return result;
    }
    result.status = Status::optimal;
    result.x = t.primal();
    result.objective = -t.rhs(program.rows);
    result.duals.resize(program.rows);
    for (std::size_t i = 0; i < program.rows; ++i) result.duals[i] = -t.sign(i) * t.cost(t.artificial(i));
    return result;
}

bool is_farkas_certificate(const LinearProgram& program, const std::vector<Rational>& y) {
    if (y.size() != program.rows) return false;
    for (std::size_t j = 0; j < program.cols; ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < program.rows; ++i)
            if (y[i] != 0) s += y[i] * program.at(i, j);
        if (s > 0) return false;
    }
    Rational yb = 0;
    for (std::size_t i = 0; i < program.rows; ++i) yb += y[i] * program.b[i];
    return yb > 0;
}

bool is_feasible_point(const LinearProgram& program, const std::vector<Rational>& z) {
    if (z.size() != program.cols) return false;
    for (const auto& v : z)
        if (v < 0) return false;
    for (std::size_t i = 0; i < program.rows; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < program.cols; ++j)
            if (z[j] != 0) s += program.at(i, j) * z[j];
        if (s != program.b[i]) return false;
    }
    return true;
}

}  // namespace blockcomp::lp
