#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "opoly/errors.hpp"
#include "opoly/roots.hpp"

using namespace opoly;

TEST_CASE("roots of known polynomials")
{
    const auto r = polynomial_roots(Poly{-0.25, 0.5, 1.0});
    REQUIRE(r.size() == 2);
    CHECK(r[0].real() == doctest::Approx((-1.0 - std::sqrt(5.0)) / 4.0));
    CHECK(r[1].real() == doctest::Approx((-1.0 + std::sqrt(5.0)) / 4.0));
    CHECK(r[0].imag() == 0.0);

    const auto c = polynomial_roots(Poly{1.0, 0.0, 1.0});
    REQUIRE(c.size() == 2);
    CHECK(c[0].real() == doctest::Approx(0.0));
    CHECK(std::abs(c[0].imag()) == doctest::Approx(1.0));
    CHECK(c[0].imag() == doctest::Approx(-c[1].imag()));

    CHECK(polynomial_roots(Poly{3.0, 2.0})[0].real() == doctest::Approx(-1.5));
    CHECK_THROWS_AS(polynomial_roots(Poly{2.0}), DomainError);
}

TEST_CASE("random real roots are recovered")
{
    std::mt19937_64 rng(0xC0FFEE);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int deg = 1; deg <= 12; ++deg) {
        std::vector<Complex> roots;
        for (int i = 0; i < deg; ++i) {
            roots.emplace_back(dist(rng), 0.0);
        }
        std::vector<double> re;
        for (const auto& z : roots) {
            re.push_back(z.real());
        }
        const auto got = polynomial_roots(from_roots(re));
        CHECK(multiset_distance(got, roots) < 1e-8);
    }
}

TEST_CASE("multiset distance")
{
    const std::vector<Complex> a{{0.0, 0.0}, {1.0, 0.0}};
    const std::vector<Complex> b{{1.0, 1e-3}, {0.0, 0.0}};
    CHECK(multiset_distance(a, b) == doctest::Approx(1e-3));
    CHECK(multiset_distance(a, a) == 0.0);

    auto s = std::vector<Complex>{{1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
    sort_roots(s);
    CHECK(s[0] == Complex(0.0, -1.0));
    CHECK(s[2] == Complex(1.0, 0.0));
}
