#pragma once

#include <vector>

#include <Eigen/Dense>

#include "opoly/lincomb.hpp"
#include "opoly/moments.hpp"
#include "opoly/recurrence.hpp"
#include "opoly/roots.hpp"

namespace opoly {

/// m x m monic Jacobi matrix: diagonal beta, subdiagonal gamma, unit superdiagonal.
class TriDiag {
public:
    TriDiag(std::vector<double> diag, std::vector<double> sub);

    [[nodiscard]] int size() const { return static_cast<int>(diag_.size()); }
    [[nodiscard]] const std::vector<double>& diag() const { return diag_; }
    /// sub()[i] sits at row i+1, column i.
    [[nodiscard]] const std::vector<double>& sub() const { return sub_; }

    [[nodiscard]] Eigen::MatrixXd dense() const;
    /// det(x I - J) by the three-term determinant recurrence.
    [[nodiscard]] Poly characteristic_polynomial() const;

private:
    std::vector<double> diag_;
    std::vector<double> sub_;
};

/**
 * Unit lower triangular change of basis Q = M P with lower bandwidth k.
 * Row n stores the P-basis coefficients of Q_n: band(n, j) multiplies P_{n-j}.
 */
class BandMatrix {
public:
    BandMatrix(int k, std::vector<std::vector<double>> rows);

    [[nodiscard]] int size() const { return static_cast<int>(rows_.size()); }
    [[nodiscard]] int bandwidth() const { return k_; }
    [[nodiscard]] double band(int n, int j) const;
    [[nodiscard]] const std::vector<double>& row(int n) const { return rows_.at(static_cast<std::size_t>(n)); }
    [[nodiscard]] Eigen::MatrixXd dense() const;

private:
    int k_;
    std::vector<std::vector<double>> rows_;
};

struct HkSolution {
    /// c_0..c_k of h_k(x) = c_0 + c_1 x + ... + c_k x^k.
    std::vector<double> coeffs;
    /// 2-norm residual of the least-squares fit.
    double residual = 0.0;
    /// u_0 / <v, h_k>; 1 when u = h_k v holds exactly under u_0 = v_0 = 1.
    double scale = 1.0;

    [[nodiscard]] Poly poly() const { return Poly(coeffs); }
};

struct IdentityCheck {
    bool pass = false;
    double residual = 0.0;
};

struct ZerosResult {
    /// Eigenvalues of (J_P)_m - L_m.
    std::vector<Complex> eigenvalues;
    /// Roots of the explicit Q_m.
    std::vector<Complex> roots;
    double distance = 0.0;
    bool agree = false;
};

struct FunctionalRelationCheck {
    bool pass = false;
    double scale = 0.0;
    double max_residual = 0.0;
    int orders_checked = 0;
};

inline constexpr double kZerosTol = 1e-8;
inline constexpr double kHkTol = 1e-8;

TriDiag jacobi_truncation(const RecurrencePair& rec, int m);

BandMatrix change_basis_matrix(const RecurrencePair& rec, const CombCoeffs& comb, const ConditionReport& report,
                               int m);

/// Zero except the last row, which carries a_k, ..., a_1 in columns m-k, ..., m-1.
Eigen::MatrixXd perturbation_L(const CombCoeffs& comb, int m);

/// Zeros of Q_m (m >= k+1) as eigenvalues of (J_P)_m - L_m, cross-checked
/// against the roots of the explicit polynomial.
ZerosResult zeros_q(const RecurrencePair& rec, const CombCoeffs& comb, int m, double tol = kZerosTol);

/// D[n] = u0 gamma_1 ... gamma_n for 0 <= n < m.
std::vector<double> norm_diagonal(const RecurrencePair& rec, int m, double u0 = 1.0);

/// max |M J_P - J_Q M| over rows 0..m-k-2.
IdentityCheck verify_intertwining(const RecurrencePair& rec, const CombCoeffs& comb, const ConditionReport& report,
                                  int m, double tol = 1e-12);

/// (J_Q)_m read off M J_P M^{-1}, computed on a larger truncation.
TriDiag jacobi_q_from_intertwining(const RecurrencePair& rec, const CombCoeffs& comb, const ConditionReport& report,
                                   int m);

/**
 * Polynomial h_k with u = h_k v, from h_k(J_P) = D_P M^T D_Q^{-1} M.
 *
 * J_Q is taken from the intertwining relation, D_P and D_Q from the gamma
 * products under u_0 = v_0 = 1, and c_0..c_k are fitted by least squares
 * over rows 0..m-k-2 inside the band. Needs m >= 3k+3 and horizon >= m+k.
 */
HkSolution solve_hk(const RecurrencePair& rec, const CombCoeffs& comb, const ConditionReport& report, int m,
                    double tol = 1e-9);

/// Checks u_j = s <v, h x^j> for every order available to both sides, s fitted at j = 0.
FunctionalRelationCheck verify_functional_relation(const MomentFunctional& u, const MomentFunctional& v,
                                                   const Poly& h, double tol = kHkTol);

/// h_k(J_Q) = M D_P M^T D_Q^{-1} against M h_k(J_P) M^{-1} on rows 0..m-k-1.
IdentityCheck verify_hk_similarity(const RecurrencePair& rec, const CombCoeffs& comb, const ConditionReport& report,
                                   const HkSolution& h, int m, double tol = 1e-9);

/// h_k(J~_P) = M~^T M~ in the orthonormal bases on rows 0..m-k-2.
IdentityCheck orthonormal_identity_check(const RecurrencePair& rec, const CombCoeffs& comb,
                                         const ConditionReport& report, int m, double tol = 1e-9);

} // namespace opoly
