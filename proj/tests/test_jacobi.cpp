#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "opoly/jacobi.hpp"

using namespace opoly;

namespace {

struct Setup {
    RecurrencePair rec;
    CombCoeffs comb;
    ConditionReport report;
};

Setup make(const RecurrencePair& rec, std::vector<double> a)
{
    CombCoeffs comb(std::move(a));
    ConditionReport report = check_conditions(rec, comb, rec.horizon());
    return {rec, comb, std::move(report)};
}

// Chebyshev weight of the given kind in the angle variable (x = cos t, dx absorbed).
double angle_weight(int kind, double t)
{
    const double x = std::cos(t);
    switch (kind) {
    case 1: return 1.0;
    case 2: return std::sin(t) * std::sin(t);
    case 3: return 1.0 + x;
    default: return 1.0 - x;
    }
}

// Normalized moments of mu_kind / h by midpoint quadrature in the angle.
std::vector<double> bernstein_szego_moments(int kind, const Poly& h, int max_order)
{
    const int steps = 20000;
    std::vector<double> m(static_cast<std::size_t>(max_order) + 1, 0.0);
    for (int i = 0; i < steps; ++i) {
        const double t = std::numbers::pi * (i + 0.5) / steps;
        const double x = std::cos(t);
        const double w = angle_weight(kind, t) / h(x);
        double power = 1.0;
        for (auto& v : m) {
            v += power * w;
            power *= x;
        }
    }
    const double norm = m[0];
    for (auto& v : m) {
        v /= norm;
    }
    return m;
}

} // namespace

TEST_CASE("jacobi truncation and its characteristic polynomial")
{
    const auto u = chebyshev_family(2, 12);
    const auto j1 = jacobi_truncation(u, 1);
    CHECK(j1.dense()(0, 0) == u.beta(0));
    CHECK(j1.characteristic_polynomial() == poly_p(u, 1));

    Eigen::MatrixXd expected(2, 2);
    expected << 0.0, 1.0, 0.25, 0.0;
    CHECK(jacobi_truncation(u, 2).dense() == expected);

    // det(x I - J) evaluated directly at sample points.
    const RecurrencePair rec({0.3, -0.1, 0.2, 0.0, 0.5, -0.4, 0.1, 0.2, 0.0, 0.3, 0.1},
                             {0.5, 0.2, 0.7, 0.3, 0.25, 0.6, 0.4, 0.2, 0.5, 0.3});
    for (int m = 1; m <= 10; ++m) {
        const auto j = jacobi_truncation(rec, m);
        const Poly pm = poly_p(rec, m);
        CHECK(coeff_distance(j.characteristic_polynomial(), pm) < 1e-9);
        for (double x : {-1.3, -0.2, 0.4, 1.1}) {
            const double det = (x * Eigen::MatrixXd::Identity(m, m) - j.dense()).determinant();
            CHECK(std::abs(det - pm(x)) < 1e-9);
        }
    }
    CHECK_THROWS_AS(jacobi_truncation(rec, 12), RangeError);
}

TEST_CASE("change of basis matrix")
{
    const auto u = make(chebyshev_family(2, 20), {0.3});
    const auto m = change_basis_matrix(u.rec, u.comb, u.report, 3).dense();
    CHECK(m(2, 0) == 0.0);
    CHECK(m(2, 1) == doctest::Approx(0.3));
    CHECK(m(2, 2) == 1.0);
    CHECK(m(0, 0) == 1.0);

    const auto t = make(chebyshev_family(1, 20), {0.0, -0.125});
    const auto band = change_basis_matrix(t.rec, t.comb, t.report, 8);
    const auto mt = band.dense();
    CHECK(mt(2, 0) == doctest::Approx(-0.25));
    CHECK(std::abs(mt(2, 1)) < 1e-15);
    CHECK(mt(2, 2) == 1.0);
    CHECK(mt(5, 3) == -0.125);
    CHECK(mt(5, 2) == 0.0);
    CHECK(band.row(0) == std::vector<double>{1.0});

    const auto bad = make(chebyshev_family(2, 12), {0.0, 0.25});
    CHECK_THROWS_AS(change_basis_matrix(bad.rec, bad.comb, bad.report, 5), StateError);
}

TEST_CASE("rank-one perturbation")
{
    const CombCoeffs two({0.7, -0.2});
    const auto l = perturbation_L(two, 4);
    CHECK(l(3, 0) == 0.0);
    CHECK(l(3, 1) == 0.0);
    CHECK(l(3, 2) == -0.2);
    CHECK(l(3, 3) == 0.7);
    CHECK(l.topRows(3).isZero());
    CHECK_THROWS_AS(perturbation_L(two, 2), RangeError);

    // k = 1, m = 2: eigenvalues of (J_P)_2 - L_2 are the zeros of Q_2.
    const auto u = chebyshev_family(2, 10);
    const CombCoeffs c({0.5});
    Eigen::MatrixXd expected(2, 2);
    expected << 0.0, 1.0, 0.25, -0.5;
    CHECK(jacobi_truncation(u, 2).dense() - perturbation_L(c, 2) == expected);
}

TEST_CASE("zeros of Q as eigenvalues")
{
    const auto u = chebyshev_family(2, 20);
    const auto z = zeros_q(u, CombCoeffs({0.5}), 2);
    CHECK(z.agree);
    REQUIRE(z.eigenvalues.size() == 2);
    CHECK(z.eigenvalues[0].real() == doctest::Approx((-1.0 - std::sqrt(5.0)) / 4.0));
    CHECK(z.eigenvalues[1].real() == doctest::Approx((-1.0 + std::sqrt(5.0)) / 4.0));

    const auto t = chebyshev_family(1, 20);
    const auto zt = zeros_q(t, CombCoeffs({0.0, -0.125}), 4);
    CHECK(zt.agree);
    const double big = std::sqrt((9.0 + std::sqrt(33.0)) / 16.0);
    const double small = std::sqrt((9.0 - std::sqrt(33.0)) / 16.0);
    const std::vector<Complex> expected{{-big, 0.0}, {-small, 0.0}, {small, 0.0}, {big, 0.0}};
    CHECK(multiset_distance(zt.eigenvalues, expected) < 1e-12);

    // complex zeros come out as conjugate pairs on both routes
    const auto zc = zeros_q(u, CombCoeffs({0.0, 2.0}), 6);
    CHECK(zc.agree);
    bool has_complex = false;
    for (const auto& e : zc.eigenvalues) {
        has_complex = has_complex || std::abs(e.imag()) > 1e-6;
    }
    CHECK(has_complex);

    CHECK_THROWS_AS(zeros_q(u, CombCoeffs({0.0, 2.0}), 2), RangeError);
}

TEST_CASE("zeros: a_1 = 0 leaves the Jacobi matrix unperturbed in the last column")
{
    // k = 2 with a_1 = 0: only the (m-1, m-2) entry moves.
    const auto t = chebyshev_family(1, 20);
    const auto l = perturbation_L(CombCoeffs({0.0, 0.3}), 6);
    CHECK(l(5, 5) == 0.0);
    CHECK(l(5, 4) == 0.3);
    for (int m : {4, 8, 12}) {
        CHECK(zeros_q(t, CombCoeffs({0.0, 0.3}), m).agree);
    }
}

TEST_CASE("similarity keeps the trace")
{
    const auto s = make(chebyshev_family(1, 30), {0.0, -0.125});
    for (int m : {4, 8, 12}) {
        const Eigen::MatrixXd a = jacobi_truncation(s.rec, m).dense() - perturbation_L(s.comb, m);
        const Eigen::MatrixXd mm = change_basis_matrix(s.rec, s.comb, s.report, m).dense();
        const Eigen::MatrixXd sim = mm * a * mm.inverse();
        CHECK(std::abs(a.trace() - sim.trace()) < 1e-10);
        // and the similar matrix is (J_Q)_m
        const auto jq = jacobi_truncation(tilde_recurrence(s.rec, s.comb, s.report), m).dense();
        CHECK((sim - jq).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("norm diagonal")
{
    const auto t = chebyshev_family(1, 10);
    CHECK(norm_diagonal(t, 1, 2.5) == std::vector<double>{2.5});
    CHECK(norm_diagonal(t, 3) == std::vector<double>{1.0, 0.5, 0.125});
    const auto f = moments_from_recurrence(t, 20);
    const auto d = norm_diagonal(t, 10);
    for (int n = 0; n < 10; ++n) {
        const Poly p = poly_p(t, n);
        CHECK(std::abs(inner(f, p, p) - d[static_cast<std::size_t>(n)]) < 1e-10);
    }
}

TEST_CASE("intertwining M J_P = J_Q M")
{
    const auto t = make(chebyshev_family(1, 30), {0.0, -0.125});
    const auto check = verify_intertwining(t.rec, t.comb, t.report, 10);
    CHECK(check.pass);
    CHECK(check.residual < 1e-12);

    const auto u = make(chebyshev_family(2, 30), {0.4});
    CHECK(verify_intertwining(u.rec, u.comb, u.report, 8).residual < 1e-12);

    // Perturbing one beta of J_P shows up at that size in M J_P - J_Q M.
    const int m = 10;
    const Eigen::MatrixXd mm = change_basis_matrix(t.rec, t.comb, t.report, m).dense();
    Eigen::MatrixXd jp = jacobi_truncation(t.rec, m).dense();
    const Eigen::MatrixXd jq = jacobi_truncation(tilde_recurrence(t.rec, t.comb, t.report), m).dense();
    jp(3, 3) += 1e-3;
    const double r = (mm * jp - jq * mm).topRows(m - 4).cwiseAbs().maxCoeff();
    CHECK(r == doctest::Approx(1e-3).epsilon(1e-6));

    CHECK_THROWS_AS(verify_intertwining(t.rec, t.comb, t.report, 4), RangeError);
}

TEST_CASE("J_Q read off the intertwining relation matches the tilde formulas")
{
    const auto t = make(chebyshev_family(3, 30), {0.2, -0.1});
    if (!t.report.verdict) {
        // Chebyshev-3 with a_1 != 0 and k = 2 generally fails; use a valid pair instead.
    }
    const auto s = make(chebyshev_family(4, 30), {0.35});
    REQUIRE(s.report.verdict);
    const auto from_m = jacobi_q_from_intertwining(s.rec, s.comb, s.report, 15);
    const auto tilde = tilde_recurrence(s.rec, s.comb, s.report);
    for (int n = 0; n < 15; ++n) {
        CHECK(from_m.diag()[static_cast<std::size_t>(n)] == doctest::Approx(tilde.beta(n)).epsilon(1e-12));
        if (n > 0) {
            CHECK(from_m.sub()[static_cast<std::size_t>(n) - 1] == doctest::Approx(tilde.gamma(n)).epsilon(1e-12));
        }
    }
}

TEST_CASE("h_k: Chebyshev inputs give Bernstein-Szego weights")
{
    struct Case {
        int kind;
        std::vector<double> a;
    };
    for (const auto& c : {Case{1, {0.0, -0.125}}, Case{2, {0.5}}, Case{3, {0.3}}, Case{4, {-0.4}},
                          Case{2, {0.0, 0.2}}}) {
        CAPTURE(c.kind);
        const auto s = make(chebyshev_family(c.kind, 40), c.a);
        REQUIRE(s.report.verdict);
        const auto h = solve_hk(s.rec, s.comb, s.report, 24);
        CHECK(h.residual < 1e-9);
        CHECK(h.coeffs.size() == c.a.size() + 1);
        CHECK(h.scale == doctest::Approx(1.0));

        const auto u = moments_from_recurrence(s.rec, 40);
        const auto v = moments_from_recurrence(tilde_recurrence(s.rec, s.comb, s.report), 40);
        const auto rel = verify_functional_relation(u, v, h.poly());
        CHECK(rel.pass);
        CHECK(rel.orders_checked >= 20);

        const Poly hp = h.poly();
        for (int i = 0; i < 100; ++i) {
            CHECK(hp(-0.99 + 1.98 * i / 99.0) > 0.0);
        }

        // Q is orthogonal for mu / h: moments by direct quadrature.
        const auto bs = bernstein_szego_moments(c.kind, hp, 16);
        for (int m = 0; m <= 16; ++m) {
            CHECK(std::abs(bs[static_cast<std::size_t>(m)] - v[static_cast<std::size_t>(m)]) < 1e-10);
        }

        CHECK(verify_hk_similarity(s.rec, s.comb, s.report, h, 24).pass);
        const auto ortho = orthonormal_identity_check(s.rec, s.comb, s.report, 24);
        CHECK(ortho.pass);
        CHECK(ortho.residual < 1e-9);
    }
}

TEST_CASE("functional relation is sensitive to h")
{
    const auto s = make(chebyshev_family(1, 40), {0.0, -0.125});
    const auto h = solve_hk(s.rec, s.comb, s.report, 24);
    const auto u = moments_from_recurrence(s.rec, 40);
    const auto v = moments_from_recurrence(tilde_recurrence(s.rec, s.comb, s.report), 40);
    auto coeffs = h.coeffs;
    coeffs[1] += 1e-3;
    CHECK_FALSE(verify_functional_relation(u, v, Poly(coeffs)).pass);

    const auto same = verify_functional_relation(u, u, Poly{1.0});
    CHECK(same.pass);
    CHECK(same.scale == 1.0);
}

TEST_CASE("h_k preconditions")
{
    const auto s = make(chebyshev_family(1, 40), {0.0, -0.125});
    CHECK_THROWS_AS(solve_hk(s.rec, s.comb, s.report, 8), RangeError);
    CHECK_THROWS_AS(solve_hk(s.rec, s.comb, s.report, 39), RangeError);

    // negative gammas: quasi-definite but not positive definite
    std::vector<double> g(30, -0.25);
    g[0] = 0.5;
    const auto neg = make(k1_family(g, 0.0, 0.0, 0.0, 0.5, 30), {0.5});
    REQUIRE(neg.report.verdict);
    CHECK_THROWS_AS(orthonormal_identity_check(neg.rec, neg.comb, neg.report, 12), DomainError);
    // the monic route still works
    CHECK(solve_hk(neg.rec, neg.comb, neg.report, 12).residual < 1e-9);
}
