#include "opoly/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace opoly {

TriDiag::TriDiag(std::vector<double> diag, std::vector<double> sub) : diag_(std::move(diag)), sub_(std::move(sub))
{
    if (diag_.empty() || sub_.size() + 1 != diag_.size()) {
        throw DomainError("tridiagonal matrix needs m diagonal and m-1 subdiagonal entries");
    }
}

Eigen::MatrixXd TriDiag::dense() const
{
    const int m = size();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        a(i, i) = diag_[static_cast<std::size_t>(i)];
        if (i + 1 < m) {
            a(i, i + 1) = 1.0;
            a(i + 1, i) = sub_[static_cast<std::size_t>(i)];
        }
    }
    return a;
}

Poly TriDiag::characteristic_polynomial() const
{
    Poly prev = Poly::constant(1.0);
    Poly cur({-diag_[0], 1.0});
    for (std::size_t i = 1; i < diag_.size(); ++i) {
        Poly next = cur.shift_up() - cur * diag_[i] - prev * sub_[i - 1];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

BandMatrix::BandMatrix(int k, std::vector<std::vector<double>> rows) : k_(k), rows_(std::move(rows))
{
    for (std::size_t n = 0; n < rows_.size(); ++n) {
        const auto expected = std::min<std::size_t>(n, static_cast<std::size_t>(k_)) + 1;
        if (rows_[n].size() != expected || rows_[n][0] != 1.0) {
            throw DomainError("band row " + std::to_string(n) + " malformed");
        }
    }
}

double BandMatrix::band(int n, int j) const
{
    const auto& r = row(n);
    return (j >= 0 && j < static_cast<int>(r.size())) ? r[static_cast<std::size_t>(j)] : 0.0;
}

Eigen::MatrixXd BandMatrix::dense() const
{
    const int m = size();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    for (int n = 0; n < m; ++n) {
        const auto& r = row(n);
        for (int j = 0; j < static_cast<int>(r.size()); ++j) {
            a(n, n - j) = r[static_cast<std::size_t>(j)];
        }
    }
    return a;
}

TriDiag jacobi_truncation(const RecurrencePair& rec, int m)
{
    if (m < 1 || m > rec.horizon() + 1) {
        throw RangeError("Jacobi truncation of size " + std::to_string(m) + " needs horizon >= " +
                         std::to_string(m - 1));
    }
    std::vector<double> diag(rec.betas().begin(), rec.betas().begin() + m);
    std::vector<double> sub(rec.gammas().begin(), rec.gammas().begin() + (m - 1));
    return {std::move(diag), std::move(sub)};
}

BandMatrix change_basis_matrix(const RecurrencePair& rec, const CombCoeffs& comb, const ConditionReport& report,
                               int m)
{
    if (!report.verdict || report.k != comb.k()) {
        throw StateError("change of basis needs a passing condition report");
    }
    if (m < 1 || m > rec.horizon() + 2) {
        throw RangeError("change of basis of size " + std::to_string(m) + " exceeds horizon");
    }
    const int k = comb.k();
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(m));
    for (int n = 0; n < m; ++n) {
        if (n > k) {
            std::vector<double> r(static_cast<std::size_t>(k) + 1, 1.0);
            for (int j = 1; j <= k; ++j) {
                r[static_cast<std::size_t>(j)] = comb.a(j);
            }
            rows.push_back(std::move(r));
        } else {
            const std::vector<double> coeff = to_p_basis(rec, report.completion[static_cast<std::size_t>(n)]);
            std::vector<double> r(static_cast<std::size_t>(n) + 1);
            for (int j = 0; j <= n; ++j) {
                r[static_cast<std::size_t>(j)] = coeff[static_cast<std::size_t>(n - j)];
            }
            r[0] = 1.0;
            rows.push_back(std::move(r));
        }
    }
    return {k, std::move(rows)};
}

Eigen::MatrixXd perturbation_L(const CombCoeffs& comb, int m)
{
    const int k = comb.k();
    if (m < k + 1) {
        throw RangeError("perturbation needs m >= k+1 = " + std::to_string(k + 1));
    }
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(m, m);
    for (int j = 1; j <= k; ++j) {
        l(m - 1, m - j) = comb.a(j);
    }
    return l;
}

ZerosResult zeros_q(const RecurrencePair& rec, const CombCoeffs& comb, int m, double tol)
{
    if (m < comb.k() + 1) {
        throw RangeError("zeros of Q_m need m >= k+1");
    }
    const Eigen::MatrixXd a = jacobi_truncation(rec, m).dense() - perturbation_L(comb, m);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
    if (solver.info() != Eigen::Success) {
        throw NumericError("Hessenberg QR did not converge for " + std::to_string(m) + "x" + std::to_string(m) +
                           " matrix within " + std::to_string(solver.getMaxIterations() * m) + " iterations");
    }
    ZerosResult out;
    for (int i = 0; i < m; ++i) {
        Complex z = solver.eigenvalues()(i);
        if (std::abs(z.imag()) <= 1e-14 * (1.0 + std::abs(z.real()))) {
            z = Complex{z.real(), 0.0};
        }
        out.eigenvalues.push_back(z);
    }
    sort_roots(out.eigenvalues);
    out.roots = polynomial_roots(q_poly(rec, comb, m));
    out.distance = multiset_distance(out.eigenvalues, out.roots);
    out.agree = out.distance <= tol;
    return out;
}

std::vector<double> norm_diagonal(const RecurrencePair& rec, int m, double u0)
{
    if (m < 1 || m - 1 > rec.horizon()) {
        throw RangeError("norm diagonal of size " + std::to_string(m) + " exceeds horizon");
    }
    std::vector<double> d(static_cast<std::size_t>(m));
    d[0] = u0;
    for (int n = 1; n < m; ++n) {
        d[static_cast<std::size_t>(n)] = d[static_cast<std::size_t>(n) - 1] * rec.gamma(n);
    }
    return d;
}

namespace {

double max_abs_rows(const Eigen::MatrixXd& a, int last_row)
{
    if (last_row < 0) {
        return 0.0;
    }
    return a.topRows(last_row + 1).cwiseAbs().maxCoeff();
}

// sum_i c_i J^i, built on a truncation `extra` rows larger and cut back to m.
Eigen::MatrixXd poly_of_matrix(const std::vector<double>& c, const Eigen::MatrixXd& big, int m)
{
    const auto size = big.rows();
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(size, size);
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(size, size);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i > 0) {
            power = power * big;
        }
        acc += c[i] * power;
    }
    return acc.topLeftCorner(m, m);
}

void require_passing(const ConditionReport& report, const CombCoeffs& comb)
{
    if (!report.verdict || report.k != comb.k()) {
        throw StateError("operation needs a passing condition report");
    }
}

} // namespace

IdentityCheck verify_intertwining(const RecurrencePair& rec, const CombCoeffs& comb, const ConditionReport& report,
                                  int m, double tol)
{
    require_passing(report, comb);
    if (m < comb.k() + 3) {
        throw RangeError("intertwining check needs m >= k+3");
    }
    const Eigen::MatrixXd mm = change_basis_matrix(rec, comb, report, m).dense();
    const Eigen::MatrixXd jp = jacobi_truncation(rec, m).dense();
    const Eigen::MatrixXd jq = jacobi_truncation(tilde_recurrence(rec, comb, report), m).dense();
    const double r = max_abs_rows(mm * jp - jq * mm, m - comb.k() - 2);
    return {r <= tol, r};
}

TriDiag jacobi_q_from_intertwining(const RecurrencePair& rec, const CombCoeffs& comb, const ConditionReport& report,
                                   int m)
{
    require_passing(report, comb);
    const int big = m + 1;
    const Eigen::MatrixXd mm = change_basis_matrix(rec, comb, report, big).dense();
    const Eigen::MatrixXd jp = jacobi_truncation(rec, big).dense();
    // J_Q = M J_P M^{-1}; rows 0..big-2 are exact.
    const Eigen::MatrixXd mjp = mm * jp;
    const Eigen::MatrixXd jq =
        mm.transpose().triangularView<Eigen::UnitUpper>().solve(mjp.transpose()).transpose();
    std::vector<double> diag(static_cast<std::size_t>(m));
    std::vector<double> sub(static_cast<std::size_t>(m) - 1);
    for (int i = 0; i < m; ++i) {
        diag[static_cast<std::size_t>(i)] = jq(i, i);
        if (i > 0) {
            sub[static_cast<std::size_t>(i) - 1] = jq(i, i - 1);
        }
    }
    return {std::move(diag), std::move(sub)};
}

HkSolution solve_hk(const RecurrencePair& rec, const CombCoeffs& comb, const ConditionReport& report, int m,
                    double tol)
{
    require_passing(report, comb);
    const int k = comb.k();
    if (m < 3 * k + 3) {
        throw RangeError("h_k fit needs m >= 3k+3 = " + std::to_string(3 * k + 3));
    }
    if (m + k > rec.horizon()) {
        throw RangeError("h_k fit at m = " + std::to_string(m) + " needs horizon >= " + std::to_string(m + k));
    }

    // (1) J_Q from M J_P = J_Q M.
    const TriDiag jq = jacobi_q_from_intertwining(rec, comb, report, m);
    // (2) D_P and D_Q from the subdiagonals.
    const std::vector<double> dp = norm_diagonal(rec, m);
    std::vector<double> dq(static_cast<std::size_t>(m), 1.0);
    for (int n = 1; n < m; ++n) {
        dq[static_cast<std::size_t>(n)] = dq[static_cast<std::size_t>(n) - 1] * jq.sub()[static_cast<std::size_t>(n) - 1];
    }
    // (3) fit h_k(J_P) = D_P M^T D_Q^{-1} M.
    const Eigen::MatrixXd mm = change_basis_matrix(rec, comb, report, m).dense();
    const Eigen::VectorXd dp_vec = Eigen::Map<const Eigen::VectorXd>(dp.data(), m);
    const Eigen::VectorXd dq_inv = Eigen::Map<const Eigen::VectorXd>(dq.data(), m).cwiseInverse();
    const Eigen::MatrixXd rhs = dp_vec.asDiagonal() * mm.transpose() * dq_inv.asDiagonal() * mm;

    const Eigen::MatrixXd jp_big = jacobi_truncation(rec, m + k).dense();
    std::vector<Eigen::MatrixXd> powers;
    powers.emplace_back(Eigen::MatrixXd::Identity(m + k, m + k));
    for (int i = 1; i <= k; ++i) {
        powers.push_back(powers.back() * jp_big);
    }

    const int last_row = m - k - 2;
    std::vector<std::pair<int, int>> entries;
    for (int r = 0; r <= last_row; ++r) {
        for (int c = std::max(0, r - k); c <= r + k; ++c) {
            entries.emplace_back(r, c);
        }
    }
    Eigen::MatrixXd a(static_cast<Eigen::Index>(entries.size()), k + 1);
    Eigen::VectorXd b(static_cast<Eigen::Index>(entries.size()));
    for (std::size_t e = 0; e < entries.size(); ++e) {
        const auto [r, c] = entries[e];
        for (int i = 0; i <= k; ++i) {
            a(static_cast<Eigen::Index>(e), i) = powers[static_cast<std::size_t>(i)](r, c);
        }
        b(static_cast<Eigen::Index>(e)) = rhs(r, c);
    }
    Eigen::VectorXd col_scale = a.colwise().norm().transpose();
    for (Eigen::Index i = 0; i < col_scale.size(); ++i) {
        if (col_scale(i) == 0.0) {
            col_scale(i) = 1.0;
        }
    }
    const Eigen::MatrixXd scaled = a * col_scale.cwiseInverse().asDiagonal();
    const Eigen::MatrixXd normal = scaled.transpose() * scaled;
    const Eigen::VectorXd y = normal.ldlt().solve(scaled.transpose() * b);
    const Eigen::VectorXd c = y.cwiseQuotient(col_scale);

    HkSolution out;
    out.coeffs.assign(c.data(), c.data() + c.size());
    out.residual = (a * c - b).norm();
    if (!(out.residual <= tol)) {
        throw InconsistencyError("h_k fit residual " + std::to_string(out.residual) +
                                 " exceeds tolerance; u = h_k v does not hold");
    }
    if (out.coeffs.back() == 0.0) {
        throw InconsistencyError("fitted h_k has degree below k");
    }
    const RecurrencePair qrec(jq.diag(), jq.sub());
    const MomentFunctional v = moments_from_recurrence(qrec, std::min(2 * qrec.horizon(), k));
    out.scale = 1.0 / apply(v, out.poly());
    return out;
}

FunctionalRelationCheck verify_functional_relation(const MomentFunctional& u, const MomentFunctional& v,
                                                   const Poly& h, double tol)
{
    FunctionalRelationCheck out;
    const int last = std::min(u.max_order(), v.max_order() - std::max(h.degree(), 0));
    if (last < 0) {
        throw RangeError("not enough moments to compare u with h v");
    }
    auto shifted = [&](int j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < h.coeffs().size(); ++i) {
            acc += h.coeffs()[i] * v[i + static_cast<std::size_t>(j)];
        }
        return acc;
    };
    const double hv0 = shifted(0);
    if (hv0 == 0.0) {
        return out;
    }
    out.scale = u[0] / hv0;
    for (int j = 0; j <= last; ++j) {
        const double uj = u[static_cast<std::size_t>(j)];
        const double r = std::abs(uj - out.scale * shifted(j)) / (1.0 + std::abs(uj));
        out.max_residual = std::max(out.max_residual, r);
    }
    out.orders_checked = last + 1;
    out.pass = out.max_residual <= tol;
    return out;
}

IdentityCheck verify_hk_similarity(const RecurrencePair& rec, const CombCoeffs& comb, const ConditionReport& report,
                                   const HkSolution& h, int m, double tol)
{
    require_passing(report, comb);
    const int k = comb.k();
    const Eigen::MatrixXd mm = change_basis_matrix(rec, comb, report, m).dense();
    const std::vector<double> dp = norm_diagonal(rec, m);
    const std::vector<double> dq = norm_diagonal(tilde_recurrence(rec, comb, report), m);
    const Eigen::VectorXd dp_vec = Eigen::Map<const Eigen::VectorXd>(dp.data(), m);
    const Eigen::VectorXd dq_inv = Eigen::Map<const Eigen::VectorXd>(dq.data(), m).cwiseInverse();
    const Eigen::MatrixXd lhs = mm * dp_vec.asDiagonal() * mm.transpose() * dq_inv.asDiagonal();

    const Eigen::MatrixXd hjp = poly_of_matrix(h.coeffs, jacobi_truncation(rec, m + k).dense(), m);
    const Eigen::MatrixXd mh = mm * hjp;
    const Eigen::MatrixXd rhs =
        mm.transpose().triangularView<Eigen::UnitUpper>().solve(mh.transpose()).transpose();
    const double r = max_abs_rows(lhs - rhs, m - k - 1);
    return {r <= tol, r};
}

IdentityCheck orthonormal_identity_check(const RecurrencePair& rec, const CombCoeffs& comb,
                                         const ConditionReport& report, int m, double tol)
{
    require_passing(report, comb);
    const int k = comb.k();
    const RecurrencePair tilde = tilde_recurrence(rec, comb, report);
    for (int n = 1; n < m + k; ++n) {
        if (!(rec.gamma(n) > 0.0)) {
            throw DomainError("orthonormal identity needs gamma_" + std::to_string(n) + " > 0");
        }
    }
    for (int n = 1; n < m; ++n) {
        if (!(tilde.gamma(n) > 0.0)) {
            throw DomainError("orthonormal identity needs gamma~_" + std::to_string(n) + " > 0");
        }
    }
    const HkSolution h = solve_hk(rec, comb, report, m);

    const int big = m + k;
    Eigen::MatrixXd sym = Eigen::MatrixXd::Zero(big, big);
    for (int i = 0; i < big; ++i) {
        sym(i, i) = rec.beta(i);
        if (i + 1 < big) {
            sym(i, i + 1) = sym(i + 1, i) = std::sqrt(rec.gamma(i + 1));
        }
    }
    const Eigen::MatrixXd lhs = poly_of_matrix(h.coeffs, sym, m);

    const Eigen::MatrixXd mm = change_basis_matrix(rec, comb, report, m).dense();
    const std::vector<double> dp = norm_diagonal(rec, m);
    const std::vector<double> dq = norm_diagonal(tilde, m);
    Eigen::VectorXd dp_half(m);
    Eigen::VectorXd dq_inv_half(m);
    for (int i = 0; i < m; ++i) {
        dp_half(i) = std::sqrt(dp[static_cast<std::size_t>(i)]);
        dq_inv_half(i) = 1.0 / std::sqrt(dq[static_cast<std::size_t>(i)]);
    }
    const Eigen::MatrixXd mt = dq_inv_half.asDiagonal() * mm * dp_half.asDiagonal();
    const double r = max_abs_rows(lhs - mt.transpose() * mt, m - k - 2);
    return {r <= tol, r};
}

} // namespace opoly
