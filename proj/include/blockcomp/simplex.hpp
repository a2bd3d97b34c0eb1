#pragma once

#include "blockcomp/rational.hpp"

#include <cstddef>
#include <vector>

namespace blockcomp::lp {

/// min c^T z  subject to  A z = b,  z >= 0.
/// An empty cost vector means a pure feasibility problem.
struct LinearProgram {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Rational> a;  // row-major, rows x cols
    std::vector<Rational> b;
    std::vector<Rational> c;

    LinearProgram(std::size_t m, std::size_t n) : rows(m), cols(n), a(m * n), b(m) {}

    Rational& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

enum class Status { optimal, infeasible, unbounded };

struct Result {
    Status status = Status::infeasible;
    /// Primal point (feasible or optimal).
    std::vector<Rational> x;
    /// When infeasible: y with y^T A <= 0 componentwise and y^T b > 0.
    std::vector<Rational> farkas;
    /// When optimal with a cost vector: y with c - A^T y >= 0 and y^T b = c^T x.
    std::vector<Rational> duals;
    Rational objective = 0;
    std::size_t pivots = 0;
};

struct Options {
    /// Run the phase-2 optimization when a cost vector is present.
    bool optimize = true;
    /// Parallelize row eliminations across OpenMP threads.
    bool parallel = true;
};

/// Dense-tableau primal simplex in exact arithmetic. Bland's rule is used for
/// both entering and leaving choices, so the method cannot cycle.
Result solve(const LinearProgram& program, const Options& options = {});

/// Exact check of a Farkas certificate: y^T A <= 0 and y^T b > 0.
bool is_farkas_certificate(const LinearProgram& program, const std::vector<Rational>& y);

/// Exact check that z >= 0 and A z = b.
bool is_feasible_point(const LinearProgram& program, const std::vector<Rational>& z);

}  // namespace blockcomp::lp
