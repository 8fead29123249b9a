#pragma once

#include <span>
#include <vector>

#include "opoly/poly.hpp"
#include "opoly/recurrence.hpp"

namespace opoly {

/// Constant coefficients a_1..a_k of Q_n = P_n + a_1 P_{n-1} + ... + a_k P_{n-k}, a_k != 0.
class CombCoeffs {
public:
    explicit CombCoeffs(std::vector<double> a);

    [[nodiscard]] int k() const { return static_cast<int>(a_.size()); }
    /// a_j for 1 <= j <= k; zero outside that range.
    [[nodiscard]] double a(int j) const
    {
        return (j >= 1 && j <= k()) ? a_[static_cast<std::size_t>(j) - 1] : 0.0;
    }
    [[nodiscard]] std::span<const double> values() const { return a_; }

private:
    std::vector<double> a_;
};

/// One downward recurrence step for the completion Q_k, ..., Q_0.
struct FavardStep {
    int j = 0;
    double beta_tilde = 0.0;
    double gamma_tilde = 0.0;
    bool pass = false;
};

/// Residuals of the k equations of the large-n conditions at one index n.
struct LargeIndexResidual {
    int n = 0;
    /// Element 0: gamma_n + a_1(beta_{n-1} - beta_n) - gamma_{n-k}.
    /// Element j-1 (j >= 2): a_{j-1}(gamma_{n-k} - gamma_{n-j+1}) - a_j(beta_{n-j} - beta_n).
    std::vector<double> residuals;
    bool pass = false;
};

/**
 * Outcome of the orthogonality test for {Q_n}.
 *
 * cond_i     downward steps j = k..1 producing the completion Q_{k-1}..Q_0.
 * cond_ii    residuals for k+2 <= n <= N.
 * pivot      gamma_{k+1} + a_1(beta_k - beta_{k+1}), which must be nonzero.
 * fourier    a_j^{(k)}, the P-basis coefficients of Q_k, solved from the
 *            index-(k+1) equations.
 * cond_iii   those k equations re-evaluated with the P-basis coefficients of
 *            Q_k obtained independently by one downward step from
 *            (Q_{k+2}, Q_{k+1}).
 */
struct ConditionReport {
    int k = 0;
    int horizon = 0;
    double tol = 0.0;
    std::vector<FavardStep> cond_i;
    std::vector<LargeIndexResidual> cond_ii;
    double pivot = 0.0;
    bool pivot_ok = false;
    std::vector<double> cond_iii;
    bool cond_iii_ok = false;
    std::vector<double> fourier;
    /// Q_0..Q_k; empty when the completion broke down.
    std::vector<Poly> completion;
    /// beta~_0..beta~_k and gamma~_1..gamma~_k from the completion.
    std::vector<double> beta_tilde_low;
    std::vector<double> gamma_tilde_low;
    /// First n > k with gamma~_n = 0, -1 when none.
    int vanishing_gamma_tilde = -1;
    bool verdict = false;
};

inline constexpr double kConditionTol = 1e-10;

ConditionReport check_conditions(const RecurrencePair& rec, const CombCoeffs& comb, int horizon,
                                 double tol = kConditionTol);

struct FavardResult {
    double beta = 0.0;
    double gamma = 0.0;
    Poly q_prev;
};

/**
 * Given monic Q_{m+1} and Q_m (m >= 1), recovers beta~_m, gamma~_m and the
 * monic Q_{m-1} with x Q_m = Q_{m+1} + beta~_m Q_m + gamma~_m Q_{m-1}.
 * Throws DegeneracyError when gamma~_m vanishes.
 */
FavardResult downward_favard(const Poly& q_next, const Poly& q_cur, double tol = 1e-12);

/// Q_n for k+1 <= n <= N+1 straight from the combination.
Poly q_poly(const RecurrencePair& rec, const CombCoeffs& comb, int n);

/// Q_n for any 0 <= n <= N+1; n <= k needs a passing report.
Poly q_poly(const RecurrencePair& rec, const CombCoeffs& comb, const ConditionReport& report, int n);

/// Q_0..Q_{n_max}.
std::vector<Poly> q_sequence(const RecurrencePair& rec, const CombCoeffs& comb, const ConditionReport& report,
                             int n_max);

/// Recurrence coefficients of {Q_n} to the report's horizon.
RecurrencePair tilde_recurrence(const RecurrencePair& rec, const CombCoeffs& comb, const ConditionReport& report);

/// Largest coefficient of x Q_n - Q_{n+1} - beta~_n Q_n - gamma~_n Q_{n-1}, divided by
/// the largest coefficient of the four terms. Needs q[0..n+1].
double three_term_residual(const std::vector<Poly>& q, const RecurrencePair& tilde, int n);

/// Runs check_conditions at `horizon` and throws StateError when it fails.
RecurrencePair tilde_recurrence(const RecurrencePair& rec, const CombCoeffs& comb, int horizon);

} // namespace opoly
