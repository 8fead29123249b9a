#include "opoly/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "opoly/errors.hpp"

namespace opoly {

void sort_roots(std::vector<Complex>& roots)
{
    std::sort(roots.begin(), roots.end(), [](const Complex& l, const Complex& r) {
        if (l.real() != r.real()) {
            return l.real() < r.real();
        }
        return l.imag() < r.imag();
    });
}

std::vector<Complex> polynomial_roots(const Poly& p, int max_iterations)
{
    const int n = p.degree();
    if (n < 1) {
        throw DomainError("root finding needs degree >= 1");
    }
    const Poly dp = p.derivative();
    const double lead = p.leading();

    // Fujiwara-type bound on root magnitudes.
    double radius = 0.0;
    for (int i = 0; i < n; ++i) {
        const double c = std::abs(p[static_cast<std::size_t>(i)] / lead);
        if (c > 0.0) {
            radius = std::max(radius, 2.0 * std::pow(c, 1.0 / (n - i)));
        }
    }
    if (radius == 0.0) {
        return std::vector<Complex>(static_cast<std::size_t>(n), Complex{0.0, 0.0});
    }

    std::vector<Complex> z(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        z[static_cast<std::size_t>(j)] = std::polar(radius, 2.0 * std::numbers::pi * j / n + 0.4);
    }

    std::vector<double> abs_coeffs;
    for (double c : p.coeffs()) {
        abs_coeffs.push_back(std::abs(c));
    }
    const Poly bound(abs_coeffs);
    const double noise = 4.0 * (n + 1) * std::numeric_limits<double>::epsilon();

    std::vector<bool> done(z.size(), false);
    bool converged = false;
    for (int iter = 0; iter < max_iterations && !converged; ++iter) {
        converged = true;
        for (std::size_t i = 0; i < z.size(); ++i) {
            if (done[i]) {
                continue;
            }
            const Complex pv = p.eval(z[i]);
            // |p(z)| at rounding level: z is as good as double evaluation can tell.
            if (std::abs(pv) <= noise * bound(std::abs(z[i]))) {
                done[i] = true;
                continue;
            }
            const Complex ratio = pv / dp.eval(z[i]);
            Complex repulsion{0.0, 0.0};
            for (std::size_t j = 0; j < z.size(); ++j) {
                if (j != i) {
                    repulsion += 1.0 / (z[i] - z[j]);
                }
            }
            const Complex step = ratio / (1.0 - ratio * repulsion);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
                continue;
            }
            z[i] -= step;
            if (std::abs(step) > 1e-14 * (1.0 + std::abs(z[i]))) {
                converged = false;
            }
        }
    }
    if (!converged) {
        throw NumericError("Aberth iteration did not converge in " + std::to_string(max_iterations) +
                           " iterations");
    }
    for (auto& r : z) {
        if (std::abs(r.imag()) <= 1e-14 * (1.0 + std::abs(r.real()))) {
            r = Complex{r.real(), 0.0};
        }
    }
    sort_roots(z);
    return z;
}

double multiset_distance(const std::vector<Complex>& a, const std::vector<Complex>& b)
{
    if (a.size() != b.size()) {
        return std::numeric_limits<double>::infinity();
    }
    std::vector<bool> used(b.size(), false);
    double worst = 0.0;
    for (const auto& x : a) {
        std::size_t best = b.size();
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (!used[j] && std::abs(x - b[j]) < best_d) {
                best_d = std::abs(x - b[j]);
                best = j;
            }
        }
        used[best] = true;
        worst = std::max(worst, best_d);
    }
    return worst;
}

} // namespace opoly
