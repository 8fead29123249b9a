#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace opoly {

/**
 * Dense polynomial in the monomial basis, coefficient i multiplies x^i.
 *
 * Trailing zeros are never stored, so degree() is the index of the last
 * coefficient and the zero polynomial has no coefficients (degree -1).
 * The scalar type is a template parameter so the orthogonality oracle can
 * run the same algebra in extended precision.
 */
template <class T>
class BasicPoly {
public:
    using value_type = T;

    BasicPoly() = default;
    BasicPoly(std::initializer_list<T> c) : coeffs_(c) { trim(); }
    explicit BasicPoly(std::vector<T> c) : coeffs_(std::move(c)) { trim(); }

    static BasicPoly constant(T c) { return BasicPoly(std::vector<T>{c}); }

    /// x^n
    static BasicPoly monomial(std::size_t n)
    {
        std::vector<T> c(n + 1, T(0));
        c[n] = T(1);
        return BasicPoly(std::move(c));
    }

    [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
    [[nodiscard]] const std::vector<T>& coeffs() const { return coeffs_; }

    /// Coefficient of x^i; zero beyond the degree.
    [[nodiscard]] T operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : T(0); }

    [[nodiscard]] T leading() const { return coeffs_.empty() ? T(0) : coeffs_.back(); }

    [[nodiscard]] T operator()(const T& x) const
    {
        T acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * x + *it;
        }
        return acc;
    }

    /// Horner evaluation at a point of a different (e.g. complex) type.
    template <class U>
    [[nodiscard]] U eval(const U& x) const
    {
        U acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * x + U(*it);
        }
        return acc;
    }

    [[nodiscard]] BasicPoly derivative() const
    {
        if (coeffs_.size() <= 1) {
            return {};
        }
        std::vector<T> d(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) {
            d[i - 1] = T(static_cast<double>(i)) * coeffs_[i];
        }
        return BasicPoly(std::move(d));
    }

    /// Multiplication by x.
    [[nodiscard]] BasicPoly shift_up() const
    {
        if (is_zero()) {
            return {};
        }
        std::vector<T> c(coeffs_.size() + 1, T(0));
        std::copy(coeffs_.begin(), coeffs_.end(), c.begin() + 1);
        return BasicPoly(std::move(c));
    }

    /// Synthetic division by (x - root). Returns the quotient; the remainder
    /// p(root) is written to *remainder when requested.
    [[nodiscard]] BasicPoly deflate(const T& root, T* remainder = nullptr) const
    {
        if (coeffs_.empty()) {
            if (remainder) {
                *remainder = T(0);
            }
            return {};
        }
        const std::size_t n = coeffs_.size() - 1;
        std::vector<T> q(n, T(0));
        T carry = coeffs_[n];
        for (std::size_t i = n; i-- > 0;) {
            q[i] = carry;
            carry = coeffs_[i] + carry * root;
        }
        if (remainder) {
            *remainder = carry;
        }
        return BasicPoly(std::move(q));
    }

    BasicPoly& operator+=(const BasicPoly& o)
    {
        if (o.coeffs_.size() > coeffs_.size()) {
            coeffs_.resize(o.coeffs_.size(), T(0));
        }
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
            coeffs_[i] += o.coeffs_[i];
        }
        trim();
        return *this;
    }

    BasicPoly& operator-=(const BasicPoly& o)
    {
        if (o.coeffs_.size() > coeffs_.size()) {
            coeffs_.resize(o.coeffs_.size(), T(0));
        }
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
            coeffs_[i] -= o.coeffs_[i];
        }
        trim();
        return *this;
    }

    BasicPoly& operator*=(const T& s)
    {
        for (auto& c : coeffs_) {
            c *= s;
        }
        trim();
        return *this;
    }

    friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
    friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }
    friend BasicPoly operator*(BasicPoly a, const T& s) { return a *= s; }
    friend BasicPoly operator*(const T& s, BasicPoly a) { return a *= s; }

    friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<T> c(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                c[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return BasicPoly(std::move(c));
    }

    friend bool operator==(const BasicPoly&, const BasicPoly&) = default;

    /// Same polynomial in another scalar type.
    template <class U>
    [[nodiscard]] BasicPoly<U> cast() const
    {
        std::vector<U> c;
        c.reserve(coeffs_.size());
        for (const auto& v : coeffs_) {
            c.push_back(U(v));
        }
        return BasicPoly<U>(std::move(c));
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back() == T(0)) {
            coeffs_.pop_back();
        }
    }

    std::vector<T> coeffs_;
};

using Poly = BasicPoly<double>;

/// Largest coefficient magnitude of a - b.
template <class T>
T coeff_distance(const BasicPoly<T>& a, const BasicPoly<T>& b)
{
    using std::abs;
    T worst(0);
    const int n = std::max(a.degree(), b.degree());
    for (int i = 0; i <= n; ++i) {
        const T d = abs(a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)]);
        if (d > worst) {
            worst = d;
        }
    }
    return worst;
}

/// Monic polynomial with the given roots.
template <class T>
BasicPoly<T> from_roots(const std::vector<T>& roots)
{
    BasicPoly<T> p = BasicPoly<T>::constant(T(1));
    for (const auto& r : roots) {
        p = p.shift_up() - p * r;
    }
    return p;
}

} // namespace opoly
