#pragma once

// Data-parallel inner loops. Every kernel exists twice: a plain serial
// reference kept for testing and benchmarking, and an OpenMP version that the
// library calls. Both must agree exactly (integer kernels) or to rounding
// (floating kernels); tests/test_kernels.cpp holds them to that.

#include <Eigen/Dense>

#include <cstdint>
#include <span>

namespace blockcomp::kernels {

namespace serial {

/// In-place unnormalized Walsh-Hadamard transform; size must be a power of two.
void walsh_hadamard(std::span<std::int64_t> data);

/// y = A x.
void matvec(const Eigen::MatrixXd& a, std::span<const double> x, std::span<double> y);

/// y = A^T x.
void matvec_transpose(const Eigen::MatrixXd& a, std::span<const double> x, std::span<double> y);

/// max over row subsets R and column subsets C of |sum_{R x C} s(i,j)|.
double max_rectangle_bias(const Eigen::MatrixXd& s);

/// h(r, c) = sum_z q(z) prod_i mu_{z_i}(a_i, b_i), where r and c are read as
/// base-K_A / base-K_B digit strings (a_1 least significant).
Eigen::MatrixXd expand_witness(std::span<const double> q, const Eigen::MatrixXd& mu0,
                               const Eigen::MatrixXd& mu1, int n);

}  // namespace serial

namespace omp {

void walsh_hadamard(std::span<std::int64_t> data);
void matvec(const Eigen::MatrixXd& a, std::span<const double> x, std::span<double> y);
void matvec_transpose(const Eigen::MatrixXd& a, std::span<const double> x, std::span<double> y);
double max_rectangle_bias(const Eigen::MatrixXd& s);
Eigen::MatrixXd expand_witness(std::span<const double> q, const Eigen::MatrixXd& mu0,
                               const Eigen::MatrixXd& mu1, int n);

}  // namespace omp

/// Number of threads OpenMP would use (1 when built without OpenMP).
int max_threads();

}  // namespace blockcomp::kernels
