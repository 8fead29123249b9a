#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "opoly/recurrence.hpp"

using namespace opoly;

namespace {

RecurrencePair constant_family(double beta, double gamma, int horizon)
{
    return {std::vector<double>(static_cast<std::size_t>(horizon) + 1, beta),
            std::vector<double>(static_cast<std::size_t>(horizon), gamma)};
}

} // namespace

TEST_CASE("recurrence pair rejects malformed data")
{
    CHECK_THROWS_AS(RecurrencePair({0.0, 0.0}, {0.25, 0.25}), DomainError);
    CHECK_THROWS_AS(RecurrencePair({0.0, 0.0}, {0.0}), DegeneracyError);
    CHECK_THROWS_AS(RecurrencePair({NAN, 0.0}, {0.25}), DomainError);
    const RecurrencePair rec({0.1, 0.2}, {0.3});
    CHECK(rec.horizon() == 1);
    CHECK_THROWS_AS((void)rec.beta(2), RangeError);
    CHECK_THROWS_AS((void)rec.gamma(0), RangeError);
}

TEST_CASE("eval_p")
{
    const auto u = chebyshev_family(2, 10);
    CHECK(eval_p(u, 0, 3.7) == 1.0);
    CHECK(eval_p(u, 2, 0.5) == doctest::Approx(0.0));
    // P_3 = x^3 - x/2 for beta = 0, gamma = 1/4.
    CHECK(eval_p(constant_family(0.0, 0.25, 5), 3, 1.0) == doctest::Approx(0.5));
    CHECK(eval_p(u, 11, 0.3) == doctest::Approx(poly_p(u, 11)(0.3)));
    CHECK_THROWS_AS(eval_p(u, 12, 0.0), RangeError);
    CHECK_THROWS_AS(eval_p(u, -1, 0.0), RangeError);
}

TEST_CASE("poly_p")
{
    const auto t = chebyshev_family(1, 10);
    CHECK(poly_p(t, 0) == Poly{1.0});
    const RecurrencePair r({0.25, 0.0, 0.0}, {1.0, 1.0});
    CHECK(poly_p(r, 1) == Poly{-0.25, 1.0});
    CHECK(poly_p(t, 2) == Poly{-0.5, 0.0, 1.0});
    CHECK_THROWS_AS(poly_p(t, 12), RangeError);
}

TEST_CASE("poly_p agrees with eval_p at random points")
{
    std::mt19937_64 rng(0xC0FFEE);
    std::uniform_real_distribution<double> beta(-0.5, 0.5);
    std::uniform_real_distribution<double> gamma(0.1, 0.6);
    std::uniform_real_distribution<double> point(-2.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> b(13);
        std::vector<double> g(12);
        for (auto& v : b) {
            v = beta(rng);
        }
        for (auto& v : g) {
            v = gamma(rng);
        }
        const RecurrencePair rec(b, g);
        for (int n = 0; n <= 13; ++n) {
            const Poly p = poly_p(rec, n);
            CHECK(p.degree() == n);
            CHECK(p.leading() == 1.0);
            for (int i = 0; i < 20; ++i) {
                const double x = point(rng);
                const double direct = eval_p(rec, n, x);
                CHECK(std::abs(p(x) - direct) <= 1e-10 * std::max(1.0, std::abs(direct)));
            }
        }
    }
}

TEST_CASE("to_p_basis inverts the P expansion")
{
    const auto rec = chebyshev_family(3, 8);
    const Poly p = poly_p(rec, 5) + poly_p(rec, 3) * 2.0 - poly_p(rec, 0) * 0.5;
    const auto c = to_p_basis(rec, p);
    REQUIRE(c.size() == 6);
    CHECK(c[5] == doctest::Approx(1.0));
    CHECK(c[4] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(c[3] == doctest::Approx(2.0));
    CHECK(c[0] == doctest::Approx(-0.5));
}

TEST_CASE("chebyshev families")
{
    const auto u = chebyshev_family(2, 8);
    CHECK(u.beta(5) == 0.0);
    CHECK(u.gamma(5) == 0.25);
    const auto t = chebyshev_family(1, 8);
    CHECK(t.gamma(1) == 0.5);
    CHECK(t.gamma(2) == 0.25);
    const auto v = chebyshev_family(3, 8);
    CHECK(v.beta(0) == 0.5);
    CHECK(v.beta(1) == 0.0);
    CHECK(chebyshev_family(4, 8).beta(0) == -0.5);
    CHECK_THROWS_AS(chebyshev_family(5, 8), DomainError);
    CHECK_THROWS_AS(chebyshev_family(0, 8), DomainError);
    CHECK_THROWS_AS(chebyshev_family(1, 1), RangeError);
}

TEST_CASE("characteristic root classification")
{
    CHECK(characteristic_root(0.0, -0.125).kind == K2Case::A1Zero);
    CHECK(characteristic_root(2.0, 1.0).kind == K2Case::EqualRoots);
    // within 1e-12 of the boundary counts as equal roots
    CHECK(characteristic_root(2.0, 1.0 + 1e-14).kind == K2Case::EqualRoots);

    const auto real = characteristic_root(1.0, 0.2);
    CHECK(real.kind == K2Case::RealRoots);
    const double lambda = real.lambda.real();
    CHECK(lambda == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-15));
    CHECK(std::abs(1.0 * lambda - 0.2 * (1 + lambda) * (1 + lambda)) < 1e-12);

    // a2 < 0 gives a negative root inside (-1, 0)
    const auto neg = characteristic_root(0.5, -0.3);
    CHECK(neg.kind == K2Case::RealRoots);
    CHECK(neg.lambda.real() < 0.0);
    CHECK(neg.lambda.real() > -1.0);

    const auto cplx = characteristic_root(1.0, 0.5);
    CHECK(cplx.kind == K2Case::ComplexRoots);
    CHECK(std::abs(cplx.lambda) == doctest::Approx(1.0));
    CHECK(cplx.lambda.imag() > 0.0);
    const auto res = 1.0 * cplx.lambda - 0.5 * (1.0 + cplx.lambda) * (1.0 + cplx.lambda);
    CHECK(std::abs(res) < 1e-12);

    CHECK_THROWS_AS(characteristic_root(1.0, 0.0), DomainError);
}

TEST_CASE("k2 generator: a1 = 0 gives period-2 coefficients")
{
    K2Params p;
    p.case_tag = K2Case::A1Zero;
    p.beta_period = {0.0, 0.0};
    p.gamma_period = {0.25, 0.25};
    p.gamma1 = 0.5;
    const auto fam = k2_family(0.0, -0.125, p, 20);
    const auto& rec = fam.recurrence;
    CHECK(rec == chebyshev_family(1, 20));
    for (int n = 4; n <= 20; ++n) {
        CHECK(rec.gamma(n) == rec.gamma(n - 2));
        CHECK(rec.beta(n) == rec.beta(n - 2));
    }

    p.beta_period = {0.1, -0.2};
    p.gamma_period = {0.3, 0.2};
    const auto alt = k2_family(0.0, 0.7, p, 11).recurrence;
    CHECK(alt.beta(10) == 0.1);
    CHECK(alt.beta(11) == -0.2);
    CHECK(alt.gamma(10) == 0.3);
    CHECK(alt.gamma(11) == 0.2);
}

TEST_CASE("k2 generator: equal roots")
{
    K2Params p;
    p.case_tag = K2Case::EqualRoots;
    p.A = 0.0;
    p.D = 0.25;
    const auto rec = k2_family(2.0, 1.0, p, 12).recurrence;
    for (int n = 2; n <= 12; ++n) {
        CHECK(rec.beta(n) == 0.0);
        CHECK(rec.gamma(n) == 0.25);
    }

    // a1 = 1, a2 = 1/4: C = 2F, B = 2E - 2F.
    p.F = 0.01;
    p.C = 0.02;
    p.E = 0.05;
    p.B = 2.0 * 0.05 - 2.0 * 0.01;
    p.D = 1.0;
    p.A = 0.3;
    const auto fam = k2_family(1.0, 0.25, p, 30);
    CHECK(fam.recurrence.beta(4) == doctest::Approx(0.3 + 0.08 * 4 + 0.02 * 16));
    CHECK(fam.recurrence.gamma(4) == doctest::Approx(1.0 + 0.05 * 4 + 0.01 * 16));
    CHECK(difference_equation_residual(fam.recurrence.betas(), 5, 30, 1.0, 0.25) < 1e-12);

    p.B = 0.0;
    CHECK_THROWS_AS(k2_family(1.0, 0.25, p, 30), ConstraintError);
}

TEST_CASE("k2 generator: real and complex roots")
{
    const double a1 = 1.0;
    const double a2 = 0.2;
    const double lambda = characteristic_root(a1, a2).lambda.real();
    K2Params p;
    p.case_tag = K2Case::RealRoots;
    p.A = 0.1;
    p.B = 0.4;
    p.E = a1 * lambda * 0.4 / (1.0 + lambda);
    p.D = 0.3;
    const auto fam = k2_family(a1, a2, p, 40);
    CHECK(fam.kind == K2Case::RealRoots);
    CHECK(fam.recurrence.beta(3) == doctest::Approx(0.1 + 0.4 * std::pow(lambda, 3)));

    std::vector<double> gammas(fam.recurrence.gammas().begin(), fam.recurrence.gammas().end());
    gammas.insert(gammas.begin(), 0.0);
    CHECK(difference_equation_residual(fam.recurrence.betas(), 5, 40, a1, a2) < 1e-12);
    CHECK(difference_equation_residual(gammas, 5, 40, a1, a2) < 1e-12);

    p.E = 0.0;
    CHECK_THROWS_AS(k2_family(a1, a2, p, 40), ConstraintError);

    K2Params c;
    c.case_tag = K2Case::ComplexRoots;
    const auto root = characteristic_root(1.0, 0.5).lambda;
    c.A = 0.0;
    c.D = 0.25;
    c.B = {0.02, 0.01};
    c.E = 1.0 * root * c.B / (1.0 + root);
    c.C = std::conj(c.B);
    c.F = std::conj(c.E);
    const auto cf = k2_family(1.0, 0.5, c, 40);
    CHECK(cf.imag_residue < 1e-12);
    const double theta = std::arg(root);
    CHECK(cf.recurrence.beta(7) ==
          doctest::Approx(2.0 * (c.B * std::polar(1.0, 7 * theta)).real()).epsilon(1e-14));

    c.C = c.B;
    CHECK_THROWS_AS(k2_family(1.0, 0.5, c, 40), ConstraintError);
}

TEST_CASE("k2 generator rejects mismatched cases and degenerate output")
{
    K2Params p;
    p.case_tag = K2Case::RealRoots;
    CHECK_THROWS_AS(k2_family(2.0, 1.0, p, 10), ConstraintError);
    p.case_tag = K2Case::A1Zero;
    CHECK_THROWS_AS(k2_family(1.0, 0.1, p, 10), ConstraintError);

    K2Params zero;
    zero.case_tag = K2Case::EqualRoots;
    zero.D = 0.0;
    CHECK_THROWS_AS(k2_family(2.0, 1.0, zero, 10), DegeneracyError);
}

TEST_CASE("k1 family")
{
    const std::vector<double> flat(20, 0.25);
    const auto rec = k1_family(flat, 0.0, 0.0, 0.0, 0.3, 20);
    for (int n = 0; n <= 20; ++n) {
        CHECK(rec.beta(n) == 0.0);
    }

    std::vector<double> t(20, 0.25);
    t[0] = 0.5;
    const auto rt = k1_family(t, 0.0, 0.0, 0.0, 1.0, 20);
    for (int n = 3; n <= 20; ++n) {
        CHECK(rt.beta(n) == 0.0);
    }

    std::vector<double> bumped(10, 0.25);
    bumped[2] = 0.35; // gamma_3 = gamma_2 + 0.1
    const auto rb = k1_family(bumped, 0.0, 0.0, 0.0, 0.5, 10);
    CHECK(rb.beta(3) == doctest::Approx(0.2));

    // gamma_2 + a1 (beta_1 - beta_2) = 0.25 + 0.5 * (-0.5) = 0
    CHECK_THROWS_AS(k1_family(flat, 0.0, 0.0, 0.5, 0.5, 20), DegeneracyError);
    CHECK_THROWS_AS(k1_family(flat, 0.0, 0.0, 0.0, 0.0, 20), DomainError);
    CHECK_THROWS_AS(k1_family(flat, 0.0, 0.0, 0.0, 0.3, 25), RangeError);
}
