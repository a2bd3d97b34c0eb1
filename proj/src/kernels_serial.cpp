#include "blockcomp/kernels.hpp"

#include <cmath>
#include <vector>

namespace blockcomp::kernels::serial {

void walsh_hadamard(std::span<std::int64_t> data) {
    const std::size_t size = data.size();
    for (std::size_t len = 1; len < size; len <<= 1) {
        for (std::size_t i = 0; i < size; i += len << 1) {
            for (std::size_t j = i; j < i + len; ++j) {
                const std::int64_t u = data[j];
                const std::int64_t v = data[j + len];
                data[j] = u + v;
                data[j + len] = u - v;
            }
        }
    }
}

void matvec(const Eigen::MatrixXd& a, std::span<const double> x, std::span<double> y) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        double acc = 0.0;
        for (Eigen::Index j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
}

void matvec_transpose(const Eigen::MatrixXd& a, std::span<const double> x, std::span<double> y) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < a.rows(); ++i) acc += a(i, j) * x[i];
        y[j] = acc;
    }
}

double max_rectangle_bias(const Eigen::MatrixXd& s) {
    // Enumerate subsets of the shorter side; the best subset of the other side
    // takes either all positive or all negative partial sums.
    const Eigen::MatrixXd m = s.rows() <= s.cols() ? s : Eigen::MatrixXd(s.transpose());
    const auto rows = static_cast<unsigned>(m.rows());
    const Eigen::Index cols = m.cols();
    std::vector<double> sums(static_cast<std::size_t>(cols), 0.0);
    double best = 0.0;
    const std::uint64_t count = std::uint64_t{1} << rows;
    for (std::uint64_t t = 1; t < count; ++t) {
        const auto flipped = static_cast<Eigen::Index>(__builtin_ctzll(t));
        const bool added = ((t ^ (t >> 1)) >> flipped) & 1;
        const double sign = added ? 1.0 : -1.0;
        double pos = 0.0;
        double neg = 0.0;
        for (Eigen::Index j = 0; j < cols; ++j) {
            sums[j] += sign * m(flipped, j);
            if (sums[j] > 0) pos += sums[j];
            else neg -= sums[j];
        }
        best = std::max(best, std::max(pos, neg));
    }
    return best;
}

Eigen::MatrixXd expand_witness(std::span<const double> q, const Eigen::MatrixXd& mu0,
                               const Eigen::MatrixXd& mu1, int n) {
    const Eigen::Index ka = mu0.rows();
    const Eigen::Index kb = mu0.cols();
    Eigen::Index rows = 1;
    Eigen::Index cols = 1;
    for (int i = 0; i < n; ++i) {
        rows *= ka;
        cols *= kb;
    }
    Eigen::MatrixXd h(rows, cols);
    std::vector<double> fold(q.size());
    std::vector<Eigen::Index> a(static_cast<std::size_t>(n));
    std::vector<Eigen::Index> b(static_cast<std::size_t>(n));
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index rr = r, i = 0; i < n; ++i, rr /= ka) a[i] = rr % ka;
        for (Eigen::Index c = 0; c < cols; ++c) {
            for (Eigen::Index cc = c, i = 0; i < n; ++i, cc /= kb) b[i] = cc % kb;
            // Contract the top variable first: fold[z'] over the remaining prefix.
            std::copy(q.begin(), q.end(), fold.begin());
            std::size_t live = fold.size();
            for (int i = n - 1; i >= 0; --i) {
                const double m0 = mu0(a[i], b[i]);
                const double m1 = mu1(a[i], b[i]);
                live >>= 1;
                for (std::size_t z = 0; z < live; ++z) fold[z] = m0 * fold[z] + m1 * fold[z + live];
            }
            h(r, c) = fold[0];
        }
    }
    return h;
}

}  // namespace blockcomp::kernels::serial
