#include "opoly/moments.hpp"

#include <algorithm>
#include <cmath>

namespace opoly {

MomentFunctional moments_from_recurrence(const RecurrencePair& rec, int max_order)
{
    return basic_moments_from_recurrence<double>(rec, max_order);
}

namespace {

// Determinant by Gaussian elimination with partial pivoting.
double determinant(std::vector<std::vector<double>> a)
{
    const std::size_t n = a.size();
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) {
                pivot = r;
            }
        }
        if (a[pivot][col] == 0.0) {
            return 0.0;
        }
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) {
                a[r][c] -= factor * a[col][c];
            }
        }
    }
    return det;
}

} // namespace

QuasiDefiniteReport is_quasi_definite(const MomentFunctional& f, int n, double tol)
{
    if (2 * n - 2 > f.max_order()) {
        throw RangeError("Hankel minor of size " + std::to_string(n) + " needs moments to order " +
                         std::to_string(2 * n - 2));
    }
    QuasiDefiniteReport report;
    report.quasi_definite = true;
    for (int m = 1; m <= n; ++m) {
        std::vector<std::vector<double>> h(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(m)));
        double scale = 1.0;
        for (int i = 0; i < m; ++i) {
            double row = 0.0;
            for (int j = 0; j < m; ++j) {
                const double v = f[static_cast<std::size_t>(i + j)];
                h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
                row += v * v;
            }
            scale *= std::sqrt(row);
        }
        HankelMinor minor{m, determinant(std::move(h)), 0.0};
        minor.relative = scale > 0.0 ? std::abs(minor.determinant) / scale : 0.0;
        report.minors.push_back(minor);
        if (report.quasi_definite && !(minor.relative > tol)) {
            report.quasi_definite = false;
            report.first_failure = m;
        }
    }
    return report;
}

} // namespace opoly
