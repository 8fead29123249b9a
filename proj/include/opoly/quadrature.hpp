#pragma once

#include <vector>

#include "opoly/jacobi.hpp"
#include "opoly/lincomb.hpp"
#include "opoly/moments.hpp"
#include "opoly/recurrence.hpp"

namespace opoly {

struct QuadratureRule {
    /// Strictly increasing.
    std::vector<double> nodes;
    std::vector<double> weights;
    int degree_of_precision = -1;
};

inline constexpr double kQuadratureTol = 1e-10;

/// n-point Gauss rule of a positive-definite family; nodes from the
/// symmetrized Jacobi truncation, weights from christoffel_numbers.
QuadratureRule gauss_rule(const RecurrencePair& rec, const MomentFunctional& f, int n);

/**
 * Christoffel-Cotes numbers lambda_k = <f, q(x) / ((x - c_k) q'(c_k))> with
 * q = prod (x - c_j). q / (x - c_k) is formed by synthetic division.
 */
std::vector<double> christoffel_numbers(const MomentFunctional& f, const std::vector<double>& nodes);

struct PrecisionReport {
    /// Largest d with every order m <= d integrated exactly; -1 if order 0 fails.
    int degree = -1;
    /// n - 1 <= d <= 2n - 1.
    bool within_bounds = false;
    /// |sum lambda c^m - u_m| / (1 + |u_m|) per order m = 0..max_degree.
    std::vector<double> errors;
};

/// max_degree < 0 selects 2n + 2.
PrecisionReport degree_of_precision(const MomentFunctional& f, const QuadratureRule& rule, int max_degree = -1,
                                    double tol = kQuadratureTol);

struct ShohatReport {
    bool pass = false;
    int degree = -1;
    int expected = -1;
    QuadratureRule rule;
};

/// Quadrature on the zeros of Q_n must have degree of precision exactly 2n - 1 - k.
/// Throws InapplicableError when Q_n has complex or coincident zeros.
ShohatReport shohat_check(const RecurrencePair& rec, const CombCoeffs& comb, const MomentFunctional& f, int n,
                          double tol = kQuadratureTol);

} // namespace opoly
