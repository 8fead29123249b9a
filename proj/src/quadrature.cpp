#include "opoly/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace opoly {

std::vector<double> christoffel_numbers(const MomentFunctional& f, const std::vector<double>& nodes)
{
    const auto n = nodes.size();
    if (n == 0) {
        return {};
    }
    if (static_cast<int>(n) - 1 > f.max_order()) {
        throw RangeError("Christoffel numbers for " + std::to_string(n) + " nodes need moments to order " +
                         std::to_string(n - 1));
    }
    double reach = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        reach = std::max(reach, std::abs(nodes[i]));
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(nodes[i] - nodes[j]) <= 1e-14 * (1.0 + std::abs(nodes[i]))) {
                throw DomainError("repeated quadrature node " + std::to_string(nodes[i]));
            }
        }
    }
    const Poly q = from_roots(nodes);
    const double floor = 1e-13 * std::pow(reach, static_cast<double>(n) - 1.0);
    std::vector<double> weights(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Poly lagrange = q.deflate(nodes[i]);
        const double derivative = lagrange(nodes[i]);
        if (std::abs(derivative) <= floor) {
            throw ConditioningError("q'(c) too small at node " + std::to_string(nodes[i]));
        }
        weights[i] = apply(f, lagrange) / derivative;
    }
    return weights;
}

QuadratureRule gauss_rule(const RecurrencePair& rec, const MomentFunctional& f, int n)
{
    if (n < 1 || n > rec.horizon()) {
        throw RangeError("Gauss rule with " + std::to_string(n) + " nodes exceeds horizon");
    }
    for (int j = 1; j <= n; ++j) {
        if (!(rec.gamma(j) > 0.0)) {
            throw DomainError("Gauss rule needs gamma_" + std::to_string(j) + " > 0");
        }
    }
    Eigen::VectorXd diag(n);
    Eigen::VectorXd off(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) {
        diag(i) = rec.beta(i);
        if (i + 1 < n) {
            off(i) = std::sqrt(rec.gamma(i + 1));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericError("symmetric tridiagonal QL did not converge");
    }
    QuadratureRule rule;
    rule.nodes.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    rule.weights = christoffel_numbers(f, rule.nodes);
    rule.degree_of_precision = 2 * n - 1;
    return rule;
}

PrecisionReport degree_of_precision(const MomentFunctional& f, const QuadratureRule& rule, int max_degree,
                                    double tol)
{
    const int n = static_cast<int>(rule.nodes.size());
    if (max_degree < 0) {
        max_degree = 2 * n + 2;
    }
    if (max_degree > f.max_order()) {
        throw RangeError("degree of precision up to " + std::to_string(max_degree) + " needs more moments");
    }
    PrecisionReport report;
    bool exact_so_far = true;
    for (int m = 0; m <= max_degree; ++m) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            sum += rule.weights[static_cast<std::size_t>(i)] * std::pow(rule.nodes[static_cast<std::size_t>(i)], m);
        }
        const double um = f[static_cast<std::size_t>(m)];
        const double err = std::abs(sum - um) / (1.0 + std::abs(um));
        report.errors.push_back(err);
        if (exact_so_far && err <= tol) {
            report.degree = m;
        } else {
            exact_so_far = false;
        }
    }
    report.within_bounds = report.degree >= n - 1 && report.degree <= 2 * n - 1;
    return report;
}

ShohatReport shohat_check(const RecurrencePair& rec, const CombCoeffs& comb, const MomentFunctional& f, int n,
                          double tol)
{
    const ZerosResult zeros = zeros_q(rec, comb, n);
    std::vector<double> nodes;
    for (const auto& z : zeros.eigenvalues) {
        if (std::abs(z.imag()) > 1e-10 * (1.0 + std::abs(z.real()))) {
            throw InapplicableError("Q_" + std::to_string(n) + " has complex zeros");
        }
        nodes.push_back(z.real());
    }
    std::sort(nodes.begin(), nodes.end());
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (nodes[i] - nodes[i - 1] <= 1e-10 * (1.0 + std::abs(nodes[i]))) {
            throw InapplicableError("Q_" + std::to_string(n) + " has coincident zeros");
        }
    }
    ShohatReport out;
    out.rule.nodes = std::move(nodes);
    out.rule.weights = christoffel_numbers(f, out.rule.nodes);
    const PrecisionReport precision = degree_of_precision(f, out.rule, 2 * n + 2, tol);
    out.rule.degree_of_precision = precision.degree;
    out.degree = precision.degree;
    out.expected = 2 * n - 1 - comb.k();
    out.pass = out.degree == out.expected;
    return out;
}

} // namespace opoly
