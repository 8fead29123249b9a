#include "opoly/oracle.hpp"

#include <string>

namespace opoly {

namespace {

using Q = OracleScalar;
using QPoly = BasicPoly<Q>;

} // namespace

OracleReport combination_oracle(const RecurrencePair& rec, std::span<const double> a, int n_max, double tol)
{
    const int k = static_cast<int>(a.size());
    const int top = std::max(2 * n_max, k + 2);
    if (top > rec.horizon() + 1) {
        throw RangeError("oracle needs P_" + std::to_string(top) + ", horizon is " + std::to_string(rec.horizon()));
    }
    const auto p = p_sequence<Q>(rec, top);
    std::vector<QPoly> q(static_cast<std::size_t>(top) + 1);
    for (int n = k + 1; n <= top; ++n) {
        QPoly v = p[static_cast<std::size_t>(n)];
        for (int j = 1; j <= k; ++j) {
            v += p[static_cast<std::size_t>(n - j)] * Q(a[static_cast<std::size_t>(j) - 1]);
        }
        q[static_cast<std::size_t>(n)] = std::move(v);
    }

    OracleReport report;
    for (int m = k + 1; m >= 1; --m) {
        const auto& next = q[static_cast<std::size_t>(m) + 1];
        const auto& cur = q[static_cast<std::size_t>(m)];
        QPoly rest = cur.shift_up() - next;
        rest -= cur * rest[static_cast<std::size_t>(m)];
        const Q gamma = rest[static_cast<std::size_t>(m) - 1];
        using std::abs;
        if (abs(gamma) <= Q(1e-25)) {
            report.completion_breakdown = m;
            report.pass = false;
            return report;
        }
        std::vector<Q> c(static_cast<std::size_t>(m), Q(0));
        for (int i = 0; i < m - 1; ++i) {
            c[static_cast<std::size_t>(i)] = rest[static_cast<std::size_t>(i)] / gamma;
        }
        c[static_cast<std::size_t>(m) - 1] = Q(1);
        if (m - 1 <= k) {
            q[static_cast<std::size_t>(m) - 1] = QPoly(std::move(c));
        }
    }

    const auto v = functional_annihilating(q);
    std::vector<QPoly> tested(q.begin(), q.begin() + n_max + 1);
    report.gram = gram_orthogonality_check(v, tested, tol);
    report.pass = report.gram.pass;
    return report;
}

GramReport family_oracle(const RecurrencePair& rec, int n_max, double tol)
{
    const auto f = basic_moments_from_recurrence<Q>(rec, 2 * n_max);
    return gram_orthogonality_check(f, p_sequence<Q>(rec, n_max), tol);
}

} // namespace opoly
