#pragma once

#include <complex>
#include <vector>

#include "opoly/poly.hpp"

namespace opoly {

using Complex = std::complex<double>;

/// All complex roots of p (degree >= 1) by Aberth-Ehrlich simultaneous
/// iteration, sorted by real part then imaginary part.
std::vector<Complex> polynomial_roots(const Poly& p, int max_iterations = 500);

/// Bottleneck distance between two equal-size multisets of complex numbers,
/// matching greedily by nearest unused element.
double multiset_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

void sort_roots(std::vector<Complex>& roots);

} // namespace opoly
