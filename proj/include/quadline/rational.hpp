#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace quadline {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p", "-p", "p/q". Throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

inline int sign(const Rational& r) { return sgn(r); }

// Largest rational square root if q is a perfect square of a rational.
bool rational_sqrt(const Rational& q, Rational& root);

// Value p + r*sqrt(q), q >= 0. Doubles as an element of the field Q(sqrt q):
// arithmetic between two Surds requires the same q unless one side is rational.
class Surd {
public:
    Surd() = default;
    Surd(const Rational& p) : p_(p) {}  // NOLINT: rationals embed implicitly
    Surd(long p) : p_(p) {}             // NOLINT
    Surd(Rational p, Rational r, Rational q);

    const Rational& p() const { return p_; }
    const Rational& r() const { return r_; }
    const Rational& q() const { return q_; }
    bool is_rational() const { return r_ == 0; }

    int sign() const;
    Surd conjugate() const;
    // (p + r sqrt q)(p - r sqrt q), always rational.
    Rational norm() const { return p_ * p_ - r_ * r_ * q_; }
    double to_double() const;

    Surd& operator+=(const Surd& o);
    Surd& operator-=(const Surd& o);
    Surd& operator*=(const Surd& o);
    Surd& operator/=(const Surd& o);
    Surd operator-() const;

    friend Surd operator+(Surd a, const Surd& b) { return a += b; }
    friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
    friend Surd operator*(Surd a, const Surd& b) { return a *= b; }
    friend Surd operator/(Surd a, const Surd& b) { return a /= b; }
    friend bool operator==(const Surd& a, const Surd& b) {
        return a.p_ == b.p_ && a.r_ == b.r_ && (a.r_ == 0 || a.q_ == b.q_);
    }
    // Exact order; mixed radicands are handled by at most two squarings.
    friend std::strong_ordering operator<=>(const Surd& a, const Surd& b);

    std::string str() const;

private:
    void normalize();
    const Rational& field_q(const Surd& o) const;

    Rational p_{0};
    Rational r_{0};
    Rational q_{0};
};

std::ostream& operator<<(std::ostream& os, const Surd& s);

// Sign of u + v*sqrt(w) with u, v in Q(sqrt q) and w in Q(sqrt q), w >= 0.
int sign_nested(const Surd& u, const Surd& v, const Surd& w);

}  // namespace quadline
