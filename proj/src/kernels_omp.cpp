#include "blockcomp/kernels.hpp"

#include <algorithm>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace blockcomp::kernels {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace omp {

void walsh_hadamard(std::span<std::int64_t> data) {
    const auto size = static_cast<std::int64_t>(data.size());
    for (int shift = 0; (std::int64_t{1} << shift) < size; ++shift) {
        const std::int64_t len = std::int64_t{1} << shift;
        // Each butterfly pair (j, j + len) is touched by exactly one iteration.
#pragma omp parallel for schedule(static) if (size >= 4096)
        for (std::int64_t p = 0; p < size / 2; ++p) {
            const std::int64_t j = ((p >> shift) << (shift + 1)) | (p & (len - 1));
            const std::int64_t u = data[j];
            const std::int64_t v = data[j + len];
            data[j] = u + v;
            data[j + len] = u - v;
        }
    }
}

void matvec(const Eigen::MatrixXd& a, std::span<const double> x, std::span<double> y) {
    const Eigen::Index rows = a.rows();
#pragma omp parallel for schedule(static) if (rows * a.cols() >= 65536)
    for (Eigen::Index i = 0; i < rows; ++i) {
        double acc = 0.0;
        for (Eigen::Index j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
}

void matvec_transpose(const Eigen::MatrixXd& a, std::span<const double> x, std::span<double> y) {
    const Eigen::Index cols = a.cols();
#pragma omp parallel for schedule(static) if (a.rows() * cols >= 65536)
    for (Eigen::Index j = 0; j < cols; ++j) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < a.rows(); ++i) acc += a(i, j) * x[i];
        y[j] = acc;
    }
}

double max_rectangle_bias(const Eigen::MatrixXd& s) {
    const Eigen::MatrixXd m = s.rows() <= s.cols() ? s : Eigen::MatrixXd(s.transpose());
    const auto rows = static_cast<unsigned>(m.rows());
    const Eigen::Index cols = m.cols();
    const std::int64_t count = std::int64_t{1} << rows;
    const std::int64_t chunk = std::max<std::int64_t>(64, count / 256);
    const std::int64_t chunks = (count + chunk - 1) / chunk;
    double best = 0.0;

#pragma omp parallel for schedule(dynamic) reduction(max : best)
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::int64_t lo = std::max<std::int64_t>(1, c * chunk);
        const std::int64_t hi = std::min(count, (c + 1) * chunk);
        if (lo >= hi) continue;
        std::vector<double> sums(static_cast<std::size_t>(cols), 0.0);
        const auto start = static_cast<std::uint64_t>(lo ^ (lo >> 1));
        for (unsigned i = 0; i < rows; ++i)
            if ((start >> i) & 1)
                for (Eigen::Index j = 0; j < cols; ++j) sums[j] += m(i, j);
        auto score = [&] {
            double pos = 0.0;
            double neg = 0.0;
            for (double v : sums) {
                if (v > 0) pos += v;
                else neg -= v;
            }
            return std::max(pos, neg);
        };
        double local = score();
        for (std::int64_t t = lo + 1; t < hi; ++t) {
            const auto flipped = static_cast<Eigen::Index>(__builtin_ctzll(static_cast<std::uint64_t>(t)));
            const bool added = ((t ^ (t >> 1)) >> flipped) & 1;
            const double sign = added ? 1.0 : -1.0;
            for (Eigen::Index j = 0; j < cols; ++j) sums[j] += sign * m(flipped, j);
            local = std::max(local, score());
        }
        best = std::max(best, local);
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

#pragma omp parallel
    {
        std::vector<double> fold(q.size());
        std::vector<Eigen::Index> a(static_cast<std::size_t>(n));
        std::vector<Eigen::Index> b(static_cast<std::size_t>(n));
#pragma omp for schedule(static)
        for (Eigen::Index r = 0; r < rows; ++r) {
            for (Eigen::Index rr = r, i = 0; i < n; ++i, rr /= ka) a[i] = rr % ka;
            for (Eigen::Index c = 0; c < cols; ++c) {
                for (Eigen::Index cc = c, i = 0; i < n; ++i, cc /= kb) b[i] = cc % kb;
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
    }
    return h;
}

}  // namespace omp
}  // namespace blockcomp::kernels
