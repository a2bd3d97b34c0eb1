#include "blockcomp/linalg.hpp"

#include "blockcomp/kernels.hpp"

#include <cmath>
#include <vector>

namespace blockcomp {

namespace {

double norm_product_bound(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0.0;
    const double max_col = m.cwiseAbs().colwise().sum().maxCoeff();
    const double max_row = m.cwiseAbs().rowwise().sum().maxCoeff();
    return std::sqrt(max_col * max_row);
}

}  // namespace

OperatorNorm power_iteration_norm(const Eigen::MatrixXd& m, const PowerIterationOptions& options) {
    OperatorNorm out;
    out.method = "power";
    out.upper_bound = norm_product_bound(m);
    if (m.size() == 0) return out;

    const auto cols = static_cast<std::size_t>(m.cols());
    const auto rows = static_cast<std::size_t>(m.rows());
    // All-ones plus a fixed ripple: the plain all-ones vector lies in the
    // kernel of balanced matrices such as the IP difference mu0 - mu1.
    std::vector<double> v(cols);
    for (std::size_t j = 0; j < cols; ++j) v[j] = 1.0 + 0.5 * std::sin(static_cast<double>(j) + 1.0);
    std::vector<double> w(rows);
    std::vector<double> u(cols);

    auto normalize = [](std::vector<double>& x) {
        double s = 0.0;
        for (double e : x) s += e * e;
        s = std::sqrt(s);
        if (s > 0)
            for (double& e : x) e /= s;
        return s;
    };
    normalize(v);
    double lambda = 0.0;
    out.converged = false;
    for (long it = 1; it <= options.max_iterations; ++it) {
        kernels::omp::matvec(m, v, w);
        double rq = 0.0;
        for (double e : w) rq += e * e;
        kernels::omp::matvec_transpose(m, w, u);
        out.iterations = it;
        const double drift = std::abs(rq - lambda);
        lambda = rq;
        if (normalize(u) == 0.0) {
            out.converged = true;
            break;
        }
        v.swap(u);
        if (it > 1 && drift <= options.tolerance * std::max(1.0, lambda)) {
            out.converged = true;
            break;
        }
    }
    out.value = std::sqrt(lambda);
    return out;
}

OperatorNorm operator_norm(const Eigen::MatrixXd& m, const PowerIterationOptions& options) {
    if (std::min(m.rows(), m.cols()) > kDenseNormLimit) return power_iteration_norm(m, options);
    OperatorNorm out;
    out.method = "eigensolve";
    out.upper_bound = norm_product_bound(m);
    if (m.size() == 0) return out;
    const Eigen::MatrixXd gram = m.rows() <= m.cols() ? Eigen::MatrixXd(m * m.transpose())
                                                      : Eigen::MatrixXd(m.transpose() * m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
    out.value = std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
    return out;
}

double trace_norm(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0.0;
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues().sum();
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

}  // namespace blockcomp
