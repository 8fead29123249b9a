#include "opoly/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace opoly {

namespace {

constexpr double kConstraintTol = 1e-12;

bool close(std::complex<double> lhs, std::complex<double> rhs)
{
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return std::abs(lhs - rhs) <= kConstraintTol * scale;
}

void require_real(std::complex<double> v, const char* name)
{
    if (v.imag() != 0.0) {
        throw ConstraintError(std::string("parameter ") + name + " must be real in this case");
    }
}

} // namespace

RecurrencePair::RecurrencePair(std::vector<double> beta, std::vector<double> gamma)
    : beta_(std::move(beta)), gamma_(std::move(gamma))
{
    if (beta_.empty()) {
        throw DomainError("recurrence needs at least beta_0");
    }
    if (gamma_.size() + 1 != beta_.size()) {
        throw DomainError("recurrence needs N+1 betas and N gammas, got " + std::to_string(beta_.size()) +
                          " and " + std::to_string(gamma_.size()));
    }
    for (std::size_t n = 0; n < beta_.size(); ++n) {
        if (!std::isfinite(beta_[n])) {
            throw DomainError("beta_" + std::to_string(n) + " is not finite");
        }
    }
    for (std::size_t n = 0; n < gamma_.size(); ++n) {
        if (!std::isfinite(gamma_[n])) {
            throw DomainError("gamma_" + std::to_string(n + 1) + " is not finite");
        }
        if (std::abs(gamma_[n]) <= kGammaFloor) {
            throw DegeneracyError("gamma_" + std::to_string(n + 1) + " vanishes");
        }
    }
}

double RecurrencePair::beta(int n) const
{
    if (n < 0 || n > horizon()) {
        throw RangeError("beta_" + std::to_string(n) + " outside horizon " + std::to_string(horizon()));
    }
    return beta_[static_cast<std::size_t>(n)];
}

double RecurrencePair::gamma(int n) const
{
    if (n < 1 || n > horizon()) {
        throw RangeError("gamma_" + std::to_string(n) + " outside horizon " + std::to_string(horizon()));
    }
    return gamma_[static_cast<std::size_t>(n) - 1];
}

RecurrencePair RecurrencePair::truncated(int h) const
{
    if (h < 0 || h > horizon()) {
        throw RangeError("cannot truncate horizon " + std::to_string(horizon()) + " to " + std::to_string(h));
    }
    return {std::vector<double>(beta_.begin(), beta_.begin() + h + 1),
            std::vector<double>(gamma_.begin(), gamma_.begin() + h)};
}

bool RecurrencePair::positive_definite() const
{
    return std::all_of(gamma_.begin(), gamma_.end(), [](double g) { return g > 0.0; });
}

double eval_p(const RecurrencePair& rec, int n, double x)
{
    if (n < 0 || n > rec.horizon() + 1) {
        throw RangeError("P_" + std::to_string(n) + " outside 0.." + std::to_string(rec.horizon() + 1));
    }
    double prev = 1.0;
    if (n == 0) {
        return prev;
    }
    double cur = x - rec.beta(0);
    for (int j = 1; j < n; ++j) {
        const double next = (x - rec.beta(j)) * cur - rec.gamma(j) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

Poly poly_p(const RecurrencePair& rec, int n)
{
    return p_sequence<double>(rec, n).back();
}

std::vector<double> to_p_basis(const RecurrencePair& rec, const Poly& p)
{
    if (p.is_zero()) {
        return {};
    }
    const auto basis = p_sequence<double>(rec, p.degree());
    std::vector<double> out(static_cast<std::size_t>(p.degree()) + 1, 0.0);
    std::vector<double> rest = p.coeffs();
    for (int d = p.degree(); d >= 0; --d) {
        const double lead = rest[static_cast<std::size_t>(d)];
        out[static_cast<std::size_t>(d)] = lead;
        const auto& b = basis[static_cast<std::size_t>(d)].coeffs();
        for (std::size_t i = 0; i < b.size(); ++i) {
            rest[i] -= lead * b[i];
        }
    }
    return out;
}

RecurrencePair chebyshev_family(int kind, int horizon)
{
    if (kind < 1 || kind > 4) {
        throw DomainError("Chebyshev kind must be 1..4, got " + std::to_string(kind));
    }
    if (horizon < 2) {
        throw RangeError("Chebyshev horizon must be at least 2");
    }
    const auto n = static_cast<std::size_t>(horizon);
    std::vector<double> beta(n + 1, 0.0);
    std::vector<double> gamma(n, 0.25);
    switch (kind) {
    case 1:
        gamma[0] = 0.5;
        break;
    case 3:
        beta[0] = 0.5;
        break;
    case 4:
        beta[0] = -0.5;
        break;
    default:
        break;
    }
    return {std::move(beta), std::move(gamma)};
}

std::string to_string(K2Case c)
{
    switch (c) {
    case K2Case::A1Zero:
        return "a1_zero";
    case K2Case::EqualRoots:
        return "equal_roots";
    case K2Case::RealRoots:
        return "real_roots";
    case K2Case::ComplexRoots:
        return "complex_roots";
    }
    return "unknown";
}

K2Case k2_case_from_string(const std::string& s)
{
    if (s == "a1_zero") {
        return K2Case::A1Zero;
    }
    if (s == "equal_roots") {
        return K2Case::EqualRoots;
    }
    if (s == "real_roots") {
        return K2Case::RealRoots;
    }
    if (s == "complex_roots") {
        return K2Case::ComplexRoots;
    }
    throw DomainError("unknown k=2 case '" + s + "'");
}

CharacteristicRoot characteristic_root(double a1, double a2)
{
    if (a2 == 0.0) {
        throw DomainError("a2 must be nonzero");
    }
    if (a1 == 0.0) {
        return {K2Case::A1Zero, {0.0, 0.0}};
    }
    const double a1sq = a1 * a1;
    const double disc = a1sq - 4.0 * a2;
    if (std::abs(disc) <= kConstraintTol * std::max(1.0, a1sq)) {
        return {K2Case::EqualRoots, {1.0, 0.0}};
    }
    // a2 t^2 + (2 a2 - a1^2) t + a2 = 0; the two roots multiply to 1.
    const double b = 2.0 * a2 - a1sq;
    if (disc > 0.0) {
        const double root_disc = std::abs(a1) * std::sqrt(disc);
        const double q = -0.5 * (b + std::copysign(root_disc, b));
        const double big = q / a2;
        const double small = a2 / q;
        return {K2Case::RealRoots, {std::abs(small) < std::abs(big) ? small : big, 0.0}};
    }
    const double cos_theta = std::clamp(-b / (2.0 * a2), -1.0, 1.0);
    return {K2Case::ComplexRoots, std::polar(1.0, std::acos(cos_theta))};
}

K2Family k2_family(double a1, double a2, const K2Params& p, int horizon)
{
    if (horizon < 3) {
        throw RangeError("k=2 family needs horizon >= 3");
    }
    const CharacteristicRoot root = characteristic_root(a1, a2);
    if (root.kind != p.case_tag) {
        throw ConstraintError("parameters tagged " + to_string(p.case_tag) + " but (a1, a2) falls in case " +
                              to_string(root.kind));
    }
    const std::complex<double> lambda = root.lambda;
    const std::complex<double> one{1.0, 0.0};

    switch (p.case_tag) {
    case K2Case::A1Zero:
        break;
    case K2Case::EqualRoots:
        for (auto [v, name] : {std::pair{p.B, "B"}, {p.C, "C"}, {p.E, "E"}, {p.F, "F"}}) {
            require_real(v, name);
        }
        if (!close(a1 * p.C, 2.0 * p.F)) {
            throw ConstraintError("equal-roots case requires a1*C = 2F");
        }
        if (!close(a1 * p.B, 2.0 * p.E - 2.0 * p.F)) {
            throw ConstraintError("equal-roots case requires a1*B = 2E - 2F");
        }
        break;
    case K2Case::RealRoots:
        for (auto [v, name] : {std::pair{p.B, "B"}, {p.C, "C"}, {p.E, "E"}, {p.F, "F"}}) {
            require_real(v, name);
        }
        if (!close(a1 * p.C, (one + lambda) * p.F)) {
            throw ConstraintError("real-roots case requires a1*C = (1+lambda)F");
        }
        if (!close(a1 * lambda * p.B, (one + lambda) * p.E)) {
            throw ConstraintError("real-roots case requires a1*lambda*B = (1+lambda)E");
        }
        break;
    case K2Case::ComplexRoots:
        if (!close(p.C, std::conj(p.B)) || !close(p.F, std::conj(p.E))) {
            throw ConstraintError("complex-roots case requires C = conj(B) and F = conj(E)");
        }
        if (!close(a1 * lambda * p.B, (one + lambda) * p.E)) {
            throw ConstraintError("complex-roots case requires a1*lambda*B = (1+lambda)E");
        }
        break;
    }

    const auto size = static_cast<std::size_t>(horizon);
    std::vector<double> beta(size + 1, 0.0);
    std::vector<double> gamma(size, 0.0);
    beta[0] = p.beta0;
    beta[1] = p.beta1;
    gamma[0] = p.gamma1;
    double imag_residue = 0.0;

    for (int n = 2; n <= horizon; ++n) {
        std::complex<double> bn;
        std::complex<double> gn;
        switch (p.case_tag) {
        case K2Case::A1Zero:
            bn = p.beta_period[static_cast<std::size_t>(n % 2)];
            gn = p.gamma_period[static_cast<std::size_t>(n % 2)];
            break;
        case K2Case::EqualRoots: {
            const double dn = n;
            bn = p.A + p.B * dn + p.C * (dn * dn);
            gn = p.D + p.E * dn + p.F * (dn * dn);
            break;
        }
        case K2Case::RealRoots: {
            const double r = std::pow(lambda.real(), n);
            bn = p.A + p.B * r + p.C / r;
            gn = p.D + p.E * r + p.F / r;
            break;
        }
        case K2Case::ComplexRoots: {
            const std::complex<double> r = std::polar(1.0, n * std::arg(lambda));
            const std::complex<double> s = std::conj(r);
            bn = p.A + p.B * r + p.C * s;
            gn = p.D + p.E * r + p.F * s;
            imag_residue = std::max({imag_residue, std::abs(bn.imag()), std::abs(gn.imag())});
            break;
        }
        }
        beta[static_cast<std::size_t>(n)] = bn.real();
        gamma[static_cast<std::size_t>(n) - 1] = gn.real();
    }
    if (imag_residue >= kConstraintTol) {
        throw ConstraintError("complex-roots family is not real (imaginary residue " +
                              std::to_string(imag_residue) + ")");
    }
    for (std::size_t n = 0; n < gamma.size(); ++n) {
        if (std::abs(gamma[n]) <= kGammaFloor) {
            throw DegeneracyError("generated gamma_" + std::to_string(n + 1) +
                                  " vanishes; family is not quasi-definite at this horizon");
        }
    }
    return {RecurrencePair(std::move(beta), std::move(gamma)), root.kind, lambda, imag_residue};
}

double difference_equation_residual(std::span<const double> y, int first, int last, double a1, double a2)
{
    if (first < 3 || last >= static_cast<int>(y.size())) {
        throw RangeError("difference equation window outside the sequence");
    }
    const double c = 1.0 - a1 * a1 / a2;
    double worst = 0.0;
    for (int n = first; n <= last; ++n) {
        const auto i = static_cast<std::size_t>(n);
        const double r = y[i] + c * y[i - 1] - c * y[i - 2] - y[i - 3];
        const double scale =
            std::max({1.0, std::abs(y[i]), std::abs(y[i - 1]), std::abs(y[i - 2]), std::abs(y[i - 3])});
        worst = std::max(worst, std::abs(r) / scale);
    }
    return worst;
}

RecurrencePair k1_family(std::span<const double> gammas, double beta0, double beta1, double beta2, double a1,
                         int horizon)
{
    if (a1 == 0.0) {
        throw DomainError("k=1 family needs a1 != 0");
    }
    if (horizon < 2) {
        throw RangeError("k=1 family needs horizon >= 2");
    }
    if (static_cast<int>(gammas.size()) < horizon) {
        throw RangeError("k=1 family needs gamma_1..gamma_" + std::to_string(horizon) + ", got " +
                         std::to_string(gammas.size()) + " values");
    }
    const double g2 = gammas[1];
    if (std::abs(g2 + a1 * (beta1 - beta2)) <= kGammaFloor) {
        throw DegeneracyError("gamma_2 + a1 (beta_1 - beta_2) vanishes");
    }
    const auto size = static_cast<std::size_t>(horizon);
    std::vector<double> beta(size + 1, 0.0);
    beta[0] = beta0;
    beta[1] = beta1;
    beta[2] = beta2;
    for (std::size_t n = 3; n <= size; ++n) {
        beta[n] = beta2 + (gammas[n - 1] - g2) / a1;
    }
    return {std::move(beta), std::vector<double>(gammas.begin(), gammas.begin() + horizon)};
}

} // namespace opoly
