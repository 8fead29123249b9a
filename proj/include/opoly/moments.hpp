#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "opoly/errors.hpp"
#include "opoly/poly.hpp"
#include "opoly/recurrence.hpp"

namespace opoly {

/// Extended-precision scalar used by the orthogonality oracle.
using OracleScalar = boost::multiprecision::cpp_bin_float_quad;

/**
 * Moment sequence u_0..u_M of a linear functional, u_k = <u, x^k>.
 * M is the highest available order.
 */
template <class T>
class BasicMomentFunctional {
public:
    explicit BasicMomentFunctional(std::vector<T> moments) : moments_(std::move(moments))
    {
        if (moments_.empty() || moments_[0] == T(0)) {
            throw DomainError("moment functional needs u_0 != 0");
        }
    }

    [[nodiscard]] int max_order() const { return static_cast<int>(moments_.size()) - 1; }
    [[nodiscard]] const T& operator[](std::size_t i) const { return moments_.at(i); }
    [[nodiscard]] const std::vector<T>& moments() const { return moments_; }

private:
    std::vector<T> moments_;
};

using MomentFunctional = BasicMomentFunctional<double>;

/**
 * Moments u_0..u_{max_order} of the functional that makes `rec` orthogonal,
 * normalized to u_0 = 1.
 *
 * x^s is carried in the P basis and multiplied by x through the recurrence;
 * u_s is its P_0 coefficient. Components on P_j with j > max_order - s can no
 * longer reach P_0 and are dropped, so only beta_j, gamma_j with
 * j <= max_order / 2 are touched.
 */
template <class T>
BasicMomentFunctional<T> basic_moments_from_recurrence(const RecurrencePair& rec, int max_order)
{
    if (max_order < 0 || max_order > 2 * rec.horizon()) {
        throw RangeError("moment order " + std::to_string(max_order) + " needs horizon >= " +
                         std::to_string((max_order + 1) / 2) + ", have " + std::to_string(rec.horizon()));
    }
    std::vector<T> u(static_cast<std::size_t>(max_order) + 1, T(0));
    std::vector<T> coef{T(1)};
    u[0] = T(1);
    for (int s = 1; s <= max_order; ++s) {
        const int keep = std::min(s, max_order - s);
        std::vector<T> next(static_cast<std::size_t>(keep) + 1, T(0));
        for (int j = 0; j < static_cast<int>(coef.size()); ++j) {
            const T c = coef[static_cast<std::size_t>(j)];
            if (j + 1 <= keep) {
                next[static_cast<std::size_t>(j) + 1] += c;
            }
            if (j <= keep) {
                next[static_cast<std::size_t>(j)] += c * T(rec.beta(j));
            }
            if (j >= 1 && j - 1 <= keep) {
                next[static_cast<std::size_t>(j) - 1] += c * T(rec.gamma(j));
            }
        }
        coef = std::move(next);
        u[static_cast<std::size_t>(s)] = coef[0];
    }
    return BasicMomentFunctional<T>(std::move(u));
}

MomentFunctional moments_from_recurrence(const RecurrencePair& rec, int max_order);

/// <u, p> = sum_i p_i u_i.
template <class T>
T apply(const BasicMomentFunctional<T>& f, const BasicPoly<T>& p)
{
    if (p.degree() > f.max_order()) {
        throw RangeError("polynomial degree " + std::to_string(p.degree()) + " exceeds available moments (" +
                         std::to_string(f.max_order()) + ")");
    }
    T acc(0);
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        acc += p.coeffs()[i] * f[i];
    }
    return acc;
}

template <class T>
T inner(const BasicMomentFunctional<T>& f, const BasicPoly<T>& p, const BasicPoly<T>& q)
{
    // Canonical operand order keeps the rounding, and hence the result, symmetric.
    if (q.degree() < p.degree() || (q.degree() == p.degree() && q.coeffs() < p.coeffs())) {
        return apply(f, q * p);
    }
    return apply(f, p * q);
}

struct HankelMinor {
    int size = 0;
    double determinant = 0.0;
    /// |det| divided by the product of row 2-norms.
    double relative = 0.0;
};

struct QuasiDefiniteReport {
    bool quasi_definite = false;
    /// Size of the first singular leading minor, -1 when none.
    int first_failure = -1;
    std::vector<HankelMinor> minors;
};

/// Checks det H_m != 0 for the m x m leading Hankel minors, 1 <= m <= n.
QuasiDefiniteReport is_quasi_definite(const MomentFunctional& f, int n, double tol = 1e-13);

struct GramFailure {
    int i = 0;
    int j = 0;
    double value = 0.0;
    /// |G_ij| / sqrt(|G_ii G_jj|), or |G_ii| / max diagonal when i == j.
    double normalized = 0.0;
};

struct GramReport {
    bool pass = false;
    std::vector<std::vector<double>> gram;
    double worst_off_diagonal = 0.0;
    std::vector<GramFailure> failures;
};

/**
 * Gram matrix G_ij = <f, p_i p_j>. Passes when every off-diagonal entry
 * satisfies |G_ij| <= tol sqrt(|G_ii G_jj|) and every diagonal entry exceeds
 * tol times the largest one in magnitude.
 */
template <class T>
GramReport gram_orthogonality_check(const BasicMomentFunctional<T>& f, const std::vector<BasicPoly<T>>& polys,
                                    double tol)
{
    using std::abs;
    using std::sqrt;
    const std::size_t n = polys.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (polys[i].degree() <= polys[i - 1].degree()) {
            throw DomainError("Gram check needs strictly increasing degrees");
        }
    }
    std::vector<std::vector<T>> g(n, std::vector<T>(n, T(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            g[i][j] = inner(f, polys[i], polys[j]);
            g[j][i] = g[i][j];
        }
    }
    GramReport report;
    report.gram.assign(n, std::vector<double>(n, 0.0));
    T max_diag(0);
    for (std::size_t i = 0; i < n; ++i) {
        if (abs(g[i][i]) > max_diag) {
            max_diag = abs(g[i][i]);
        }
        for (std::size_t j = 0; j < n; ++j) {
            report.gram[i][j] = static_cast<double>(g[i][j]);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const T diag = abs(g[i][i]);
        if (!(diag > T(tol) * max_diag)) {
            report.failures.push_back({static_cast<int>(i), static_cast<int>(i), static_cast<double>(g[i][i]),
                                       max_diag > T(0) ? static_cast<double>(diag / max_diag) : 0.0});
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            const T denom = sqrt(abs(g[i][i] * g[j][j]));
            const double normalized =
                denom > T(0) ? static_cast<double>(abs(g[i][j]) / denom) : (g[i][j] == T(0) ? 0.0 : INFINITY);
            report.worst_off_diagonal = std::max(report.worst_off_diagonal, normalized);
            if (!(normalized <= tol)) {
                report.failures.push_back(
                    {static_cast<int>(i), static_cast<int>(j), static_cast<double>(g[i][j]), normalized});
            }
        }
    }
    report.pass = report.failures.empty();
    return report;
}

/**
 * Functional v with v_0 = 1 and <v, q_m> = 0 for m >= 1, where q_m is a monic
 * polynomial of degree m. This is the only candidate for a functional making
 * the sequence orthogonal.
 */
template <class T>
BasicMomentFunctional<T> functional_annihilating(const std::vector<BasicPoly<T>>& monic_sequence)
{
    std::vector<T> v(monic_sequence.size(), T(0));
    v[0] = T(1);
    for (std::size_t m = 1; m < monic_sequence.size(); ++m) {
        const auto& q = monic_sequence[m];
        if (q.degree() != static_cast<int>(m) || q.leading() != T(1)) {
            throw DomainError("annihilating functional needs monic q_m of degree m");
        }
        T acc(0);
        for (std::size_t i = 0; i < m; ++i) {
            acc += q[i] * v[i];
        }
        v[m] = -acc;
    }
    return BasicMomentFunctional<T>(std::move(v));
}

} // namespace opoly
