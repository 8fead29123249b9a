#pragma once

#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "opoly/errors.hpp"
#include "opoly/poly.hpp"

namespace opoly {

/// Smallest |gamma_n| accepted as nonzero when a recurrence is assembled.
inline constexpr double kGammaFloor = 1e-14;

/**
 * Recurrence coefficients of a monic orthogonal family,
 *
 *     x P_n = P_{n+1} + beta_n P_n + gamma_n P_{n-1},   P_0 = 1, P_1 = x - beta_0,
 *
 * stored to an explicit horizon N: beta_0..beta_N and gamma_1..gamma_N.
 * Every gamma_n must be nonzero (quasi-definite family).
 */
class RecurrencePair {
public:
    /// `beta` holds beta_0..beta_N, `gamma` holds gamma_1..gamma_N.
    RecurrencePair(std::vector<double> beta, std::vector<double> gamma);

    [[nodiscard]] int horizon() const { return static_cast<int>(beta_.size()) - 1; }

    [[nodiscard]] double beta(int n) const;
    [[nodiscard]] double gamma(int n) const;

    [[nodiscard]] std::span<const double> betas() const { return beta_; }
    /// gamma_1..gamma_N; element 0 is gamma_1.
    [[nodiscard]] std::span<const double> gammas() const { return gamma_; }

    /// Same family cut to a smaller horizon.
    [[nodiscard]] RecurrencePair truncated(int horizon) const;

    [[nodiscard]] bool positive_definite() const;

    friend bool operator==(const RecurrencePair&, const RecurrencePair&) = default;

private:
    std::vector<double> beta_;
    std::vector<double> gamma_;
};

/// P_n(x) by forward recurrence, 0 <= n <= N+1.
double eval_p(const RecurrencePair& rec, int n, double x);

/// P_0..P_{n_max} in the monomial basis, 0 <= n_max <= N+1.
template <class T>
std::vector<BasicPoly<T>> p_sequence(const RecurrencePair& rec, int n_max)
{
    if (n_max < 0 || n_max > rec.horizon() + 1) {
        throw RangeError("polynomial degree " + std::to_string(n_max) + " outside 0.." +
                         std::to_string(rec.horizon() + 1));
    }
    std::vector<BasicPoly<T>> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    out.push_back(BasicPoly<T>::constant(T(1)));
    if (n_max >= 1) {
        out.push_back(BasicPoly<T>({T(-rec.beta(0)), T(1)}));
    }
    for (int n = 1; n < n_max; ++n) {
        const auto& cur = out[static_cast<std::size_t>(n)];
        const auto& prev = out[static_cast<std::size_t>(n) - 1];
        out.push_back(cur.shift_up() - cur * T(rec.beta(n)) - prev * T(rec.gamma(n)));
    }
    return out;
}

/// Monomial coefficients of P_n.
Poly poly_p(const RecurrencePair& rec, int n);

/// Coefficients of p in the basis P_0..P_deg(p), index j multiplies P_j.
std::vector<double> to_p_basis(const RecurrencePair& rec, const Poly& p);

/**
 * Monic Chebyshev families on [-1, 1].
 *
 * kind 1: beta = 0, gamma_1 = 1/2, gamma_n = 1/4 after.
 * kind 2: beta = 0, gamma = 1/4.
 * kind 3: beta_0 = +1/2, weight sqrt((1+x)/(1-x)).
 * kind 4: beta_0 = -1/2, weight sqrt((1-x)/(1+x)).
 * Kinds 3 and 4 have beta_n = 0 for n >= 1 and gamma = 1/4.
 */
RecurrencePair chebyshev_family(int kind, int horizon);

// ---------------------------------------------------------------------------
// k = 2 classification: families {P_n} for which P_n + a1 P_{n-1} + a2 P_{n-2}
// is again orthogonal.

enum class K2Case { A1Zero, EqualRoots, RealRoots, ComplexRoots };

std::string to_string(K2Case c);
K2Case k2_case_from_string(const std::string& s);

/**
 * Parameters of one solution family.
 *
 * For EqualRoots, RealRoots and ComplexRoots, n >= 2 follows
 *     beta_n  = A + B r_n + C s_n,   gamma_n = D + E r_n + F s_n
 * with (r_n, s_n) = (n, n^2), (lambda^n, lambda^-n) or (e^{in theta}, e^{-in theta}).
 * B, C, E, F carry complex values only in the ComplexRoots case, where
 * C = conj(B) and F = conj(E). For A1Zero the period-2 values at n = 2, 3
 * are given directly. beta_0, beta_1, gamma_1 are free seeds in every case.
 */
struct K2Params {
    K2Case case_tag = K2Case::EqualRoots;
    double A = 0.0;
    double D = 0.0;
    std::complex<double> B{};
    std::complex<double> C{};
    std::complex<double> E{};
    std::complex<double> F{};
    std::array<double, 2> beta_period{};  // beta_2, beta_3
    std::array<double, 2> gamma_period{}; // gamma_2, gamma_3
    double beta0 = 0.0;
    double beta1 = 0.0;
    double gamma1 = 1.0;
};

/// Root of a1^2 lambda = a2 (1 + lambda)^2 that drives the solution family.
struct CharacteristicRoot {
    K2Case kind;
    /// 1 for EqualRoots, in (-1, 1) for RealRoots, e^{i theta} with
    /// theta in (0, pi) for ComplexRoots, 0 for A1Zero.
    std::complex<double> lambda;
};

/// Classifies (a1, a2); a1^2 - 4 a2 within 1e-12 (relative) of zero counts as EqualRoots.
CharacteristicRoot characteristic_root(double a1, double a2);

struct K2Family {
    RecurrencePair recurrence;
    K2Case kind;
    std::complex<double> lambda;
    /// Largest |Im| seen before taking real parts (ComplexRoots only).
    double imag_residue = 0.0;
};

K2Family k2_family(double a1, double a2, const K2Params& params, int horizon);

/// Largest residual of y_n + c y_{n-1} - c y_{n-2} - y_{n-3} with c = 1 - a1^2/a2,
/// over first <= n <= last, relative to max(1, |y_n|, ..., |y_{n-3}|).
double difference_equation_residual(std::span<const double> y, int first, int last, double a1,
                                    double a2);

/// General k = 1 family: gamma_1..gamma_N given, beta_n = beta_2 + (gamma_n - gamma_2)/a1 for n >= 3.
RecurrencePair k1_family(std::span<const double> gammas, double beta0, double beta1, double beta2,
                         double a1, int horizon);

} // namespace opoly
