#pragma once

#include <Eigen/Dense>

#include <string>

namespace blockcomp {

/// Largest dimension handled by the dense symmetric eigensolve.
inline constexpr Eigen::Index kDenseNormLimit = 512;

struct OperatorNorm {
    double value = 0.0;
    /// "eigensolve" or "power".
    std::string method;
    long iterations = 0;
    bool converged = true;
    /// sqrt(||M||_1 ||M||_inf), always an upper bound on the true norm.
    double upper_bound = 0.0;
};

struct PowerIterationOptions {
    long max_iterations = 100000;
    double tolerance = 1e-12;
};

/// Largest singular value. Uses a dense eigensolve of the smaller Gram matrix
/// when min(rows, cols) <= kDenseNormLimit, otherwise power iteration on M^T M.
OperatorNorm operator_norm(const Eigen::MatrixXd& m, const PowerIterationOptions& options = {});

/// Power iteration on M^T M from a fixed deterministic start vector.
OperatorNorm power_iteration_norm(const Eigen::MatrixXd& m, const PowerIterationOptions& options = {});

/// Sum of singular values via a dense SVD.
double trace_norm(const Eigen::MatrixXd& m);

/// Eigenvalues of a symmetric matrix in ascending order.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m);

}  // namespace blockcomp
