#include "opoly/lincomb.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace opoly {

CombCoeffs::CombCoeffs(std::vector<double> a) : a_(std::move(a))
{
    if (a_.empty()) {
        throw DomainError("combination needs k >= 1 coefficients");
    }
    for (double v : a_) {
        if (!std::isfinite(v)) {
            throw DomainError("combination coefficient is not finite");
        }
    }
    if (a_.back() == 0.0) {
        throw DomainError("last combination coefficient a_k must be nonzero");
    }
}

namespace {

// P_n + a_1 P_{n-1} + ... + a_k P_{n-k} from a precomputed P table.
Poly combine(const std::vector<Poly>& p, const CombCoeffs& comb, int n)
{
    Poly q = p[static_cast<std::size_t>(n)];
    for (int j = 1; j <= comb.k(); ++j) {
        q += p[static_cast<std::size_t>(n - j)] * comb.a(j);
    }
    return q;
}

double scaled(double gamma) { return std::max(1.0, std::abs(gamma)); }

} // namespace

FavardResult downward_favard(const Poly& q_next, const Poly& q_cur, double tol)
{
    const int m = q_cur.degree();
    if (m < 1 || q_next.degree() != m + 1 || q_cur.leading() != 1.0 || q_next.leading() != 1.0) {
        throw DomainError("downward step needs monic Q_{m+1}, Q_m with m >= 1");
    }
    const Poly xq = q_cur.shift_up();
    Poly rest = xq - q_next;
    // x Q_m - Q_{m+1} has degree <= m; its x^m coefficient is beta~_m.
    const double beta = rest[static_cast<std::size_t>(m)];
    rest -= q_cur * beta;
    const double gamma = rest[static_cast<std::size_t>(m) - 1];
    double magnitude = 1.0;
    for (double c : xq.coeffs()) {
        magnitude = std::max(magnitude, std::abs(c));
    }
    if (std::abs(gamma) <= tol * magnitude) {
        throw DegeneracyError("downward step at degree " + std::to_string(m) + ": gamma~ vanishes");
    }
    // Drop rounding residue above degree m-1 so the quotient is exactly monic.
    std::vector<double> c(static_cast<std::size_t>(m), 0.0);
    for (int i = 0; i < m - 1; ++i) {
        c[static_cast<std::size_t>(i)] = rest[static_cast<std::size_t>(i)] / gamma;
    }
    c[static_cast<std::size_t>(m) - 1] = 1.0;
    return {beta, gamma, Poly(std::move(c))};
}

ConditionReport check_conditions(const RecurrencePair& rec, const CombCoeffs& comb, int horizon, double tol)
{
    const int k = comb.k();
    if (horizon > rec.horizon()) {
        throw RangeError("condition horizon " + std::to_string(horizon) + " exceeds recurrence horizon " +
                         std::to_string(rec.horizon()));
    }
    if (horizon < k + 2) {
        throw RangeError("condition horizon must be at least k+2 = " + std::to_string(k + 2));
    }
    ConditionReport report;
    report.k = k;
    report.horizon = horizon;
    report.tol = tol;

    bool ii_ok = true;
    for (int n = k + 2; n <= horizon; ++n) {
        LargeIndexResidual row{n, std::vector<double>(static_cast<std::size_t>(k), 0.0), true};
        row.residuals[0] =
            rec.gamma(n) + comb.a(1) * (rec.beta(n - 1) - rec.beta(n)) - rec.gamma(n - k);
        for (int j = 2; j <= k; ++j) {
            row.residuals[static_cast<std::size_t>(j) - 1] =
                comb.a(j - 1) * (rec.gamma(n - k) - rec.gamma(n - j + 1)) -
                comb.a(j) * (rec.beta(n - j) - rec.beta(n));
        }
        for (double r : row.residuals) {
            if (!(std::abs(r) <= tol * scaled(rec.gamma(n)))) {
                row.pass = false;
            }
        }
        ii_ok = ii_ok && row.pass;
        report.cond_ii.push_back(std::move(row));
    }

    for (int n = k + 1; n <= horizon; ++n) {
        const double gt = rec.gamma(n) + comb.a(1) * (rec.beta(n - 1) - rec.beta(n));
        if (!(std::abs(gt) > tol * scaled(rec.gamma(n)))) {
            report.vanishing_gamma_tilde = n;
            break;
        }
    }

    report.pivot = rec.gamma(k + 1) + comb.a(1) * (rec.beta(k) - rec.beta(k + 1));
    report.pivot_ok = std::abs(report.pivot) > tol * scaled(rec.gamma(k + 1));
    if (!report.pivot_ok) {
        report.verdict = false;
        return report;
    }

    const double g = report.pivot;
    report.fourier.assign(static_cast<std::size_t>(k), 0.0);
    for (int j = 1; j < k; ++j) {
        report.fourier[static_cast<std::size_t>(j) - 1] =
            (comb.a(j) * rec.gamma(k - j + 1) + comb.a(j + 1) * (rec.beta(k - j) - rec.beta(k + 1))) / g;
    }
    report.fourier[static_cast<std::size_t>(k) - 1] = comb.a(k) * rec.gamma(1) / g;

    const auto p = p_sequence<double>(rec, k + 2);
    const Poly q_k2 = combine(p, comb, k + 2);
    const Poly q_k1 = combine(p, comb, k + 1);
    Poly q_k = p[static_cast<std::size_t>(k)];
    for (int j = 1; j <= k; ++j) {
        q_k += p[static_cast<std::size_t>(k - j)] * report.fourier[static_cast<std::size_t>(j) - 1];
    }

    // Independent route to Q_k: one downward step from (Q_{k+2}, Q_{k+1}).
    report.cond_iii_ok = false;
    try {
        const FavardResult top = downward_favard(q_k2, q_k1, tol);
        const std::vector<double> fb = to_p_basis(rec, top.q_prev);
        auto fourier_b = [&](int j) { return fb[static_cast<std::size_t>(k - j)]; };
        report.cond_iii_ok = true;
        for (int j = 1; j <= k; ++j) {
            double r = 0.0;
            if (j < k) {
                r = comb.a(j) * rec.gamma(k - j + 1) + comb.a(j + 1) * (rec.beta(k - j) - rec.beta(k + 1)) -
                    fourier_b(j) * g;
            } else {
                r = comb.a(k) * rec.gamma(1) - fourier_b(k) * g;
            }
            report.cond_iii.push_back(r);
            if (!(std::abs(r) <= tol * scaled(rec.gamma(k + 1)))) {
                report.cond_iii_ok = false;
            }
        }
    } catch (const DegeneracyError&) {
        report.cond_iii_ok = false;
    }

    std::vector<Poly> q(static_cast<std::size_t>(k) + 2);
    q[static_cast<std::size_t>(k) + 1] = q_k1;
    q[static_cast<std::size_t>(k)] = q_k;
    report.beta_tilde_low.assign(static_cast<std::size_t>(k) + 1, 0.0);
    report.gamma_tilde_low.assign(static_cast<std::size_t>(k), 0.0);
    bool i_ok = true;
    for (int m = k; m >= 1; --m) {
        FavardStep step{m, 0.0, 0.0, false};
        try {
            FavardResult r = downward_favard(q[static_cast<std::size_t>(m) + 1], q[static_cast<std::size_t>(m)], tol);
            step.beta_tilde = r.beta;
            step.gamma_tilde = r.gamma;
            step.pass = true;
            q[static_cast<std::size_t>(m) - 1] = std::move(r.q_prev);
        } catch (const DegeneracyError&) {
            i_ok = false;
        }
        report.cond_i.push_back(step);
        if (!step.pass) {
            break;
        }
        report.beta_tilde_low[static_cast<std::size_t>(m)] = step.beta_tilde;
        report.gamma_tilde_low[static_cast<std::size_t>(m) - 1] = step.gamma_tilde;
    }
    std::reverse(report.cond_i.begin(), report.cond_i.end());
    if (i_ok) {
        report.beta_tilde_low[0] = -q[1][0];
        q.pop_back();
        report.completion = std::move(q);
    }

    report.verdict = ii_ok && report.pivot_ok && report.cond_iii_ok && i_ok && report.vanishing_gamma_tilde < 0;
    return report;
}

Poly q_poly(const RecurrencePair& rec, const CombCoeffs& comb, int n)
{
    if (n <= comb.k()) {
        throw StateError("Q_" + std::to_string(n) + " is not determined by the combination alone (n <= k)");
    }
    if (n > rec.horizon() + 1) {
        throw RangeError("Q_" + std::to_string(n) + " exceeds recurrence horizon");
    }
    return combine(p_sequence<double>(rec, n), comb, n);
}

Poly q_poly(const RecurrencePair& rec, const CombCoeffs& comb, const ConditionReport& report, int n)
{
    if (n > comb.k()) {
        return q_poly(rec, comb, n);
    }
    if (n < 0) {
        throw RangeError("negative degree");
    }
    if (!report.verdict || report.k != comb.k()) {
        throw StateError("Q_" + std::to_string(n) + " needs a passing condition report");
    }
    return report.completion[static_cast<std::size_t>(n)];
}

std::vector<Poly> q_sequence(const RecurrencePair& rec, const CombCoeffs& comb, const ConditionReport& report,
                             int n_max)
{
    if (!report.verdict || report.k != comb.k()) {
        throw StateError("Q sequence needs a passing condition report");
    }
    if (n_max > rec.horizon() + 1) {
        throw RangeError("Q_" + std::to_string(n_max) + " exceeds recurrence horizon");
    }
    std::vector<Poly> out(report.completion.begin(),
                          report.completion.begin() + std::min(n_max, comb.k()) + 1);
    if (n_max > comb.k()) {
        const auto p = p_sequence<double>(rec, n_max);
        for (int n = comb.k() + 1; n <= n_max; ++n) {
            out.push_back(combine(p, comb, n));
        }
    }
    return out;
}

RecurrencePair tilde_recurrence(const RecurrencePair& rec, const CombCoeffs& comb, const ConditionReport& report)
{
    if (!report.verdict || report.k != comb.k()) {
        throw StateError("tilde recurrence needs a passing condition report");
    }
    const int k = comb.k();
    const auto n_max = static_cast<std::size_t>(report.horizon);
    std::vector<double> beta(n_max + 1, 0.0);
    std::vector<double> gamma(n_max, 0.0);
    for (int n = 0; n <= report.horizon; ++n) {
        beta[static_cast<std::size_t>(n)] = n <= k ? report.beta_tilde_low[static_cast<std::size_t>(n)] : rec.beta(n);
    }
    for (int n = 1; n <= report.horizon; ++n) {
        gamma[static_cast<std::size_t>(n) - 1] = n <= k ? report.gamma_tilde_low[static_cast<std::size_t>(n) - 1]
                                                        : rec.gamma(n) + comb.a(1) * (rec.beta(n - 1) - rec.beta(n));
    }
    return {std::move(beta), std::move(gamma)};
}

RecurrencePair tilde_recurrence(const RecurrencePair& rec, const CombCoeffs& comb, int horizon)
{
    const ConditionReport report = check_conditions(rec, comb, horizon);
    if (!report.verdict) {
        throw StateError("combination does not produce an orthogonal sequence");
    }
    return tilde_recurrence(rec, comb, report);
}

double three_term_residual(const std::vector<Poly>& q, const RecurrencePair& tilde, int n)
{
    if (n < 1 || n + 1 >= static_cast<int>(q.size())) {
        throw RangeError("three-term residual at n = " + std::to_string(n) + " needs Q_0..Q_{n+1}");
    }
    const auto i = static_cast<std::size_t>(n);
    const std::array<Poly, 4> terms{q[i].shift_up(), q[i + 1], q[i] * tilde.beta(n), q[i - 1] * tilde.gamma(n)};
    double scale = 0.0;
    for (const auto& t : terms) {
        for (double c : t.coeffs()) {
            scale = std::max(scale, std::abs(c));
        }
    }
    const Poly r = terms[0] - terms[1] - terms[2] - terms[3];
    return scale > 0.0 ? coeff_distance(r, Poly{}) / scale : 0.0;
}

} // namespace opoly
