#pragma once

#include <span>
#include <vector>

#include "opoly/moments.hpp"
#include "opoly/recurrence.hpp"

namespace opoly {

/**
 * Brute-force orthogonality test for Q_n = P_n + a_1 P_{n-1} + ... + a_k P_{n-k}
 * that never looks at the recurrence conditions.
 *
 * Everything runs in OracleScalar. Q_n for n >= k+1 is formed directly;
 * Q_k, ..., Q_0 are the only monic polynomials compatible with a three-term
 * recurrence starting from (Q_{k+2}, Q_{k+1}). The candidate functional v is
 * fixed by v_0 = 1 and <v, Q_m> = 0 for 1 <= m <= 2 n_max, and the Gram matrix
 * of Q_0..Q_{n_max} under v is then tested. Needs horizon >= 2 n_max - 1.
 */
struct OracleReport {
    bool pass = false;
    /// Degree at which the downward completion hit gamma~ = 0, -1 when none.
    int completion_breakdown = -1;
    GramReport gram;
};

OracleReport combination_oracle(const RecurrencePair& rec, std::span<const double> a, int n_max, double tol);

/// Gram test of the extended-precision P_0..P_{n_max} against the recurrence moments.
GramReport family_oracle(const RecurrencePair& rec, int n_max, double tol);

} // namespace opoly
