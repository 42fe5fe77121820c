#pragma once

// Closed real intervals with MPFR endpoints and outward rounding. Used for
// certified sign decisions; callers escalate precision when a sign is
// undetermined.

#include "quadline/rational.hpp"

#include <mpfr.h>

#include <optional>
#include <string>

namespace quadline {

class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 64);
    Interval(const Rational& v, mpfr_prec_t prec);
    Interval(const Rational& lo, const Rational& hi, mpfr_prec_t prec);
    Interval(const Surd& v, mpfr_prec_t prec);
    Interval(const Interval& o);
    Interval(Interval&& o) noexcept;
    Interval& operator=(const Interval& o);
    Interval& operator=(Interval&& o) noexcept;
    ~Interval();

    mpfr_prec_t precision() const { return prec_; }

    // +1 / -1 when the interval excludes zero, nullopt otherwise.
    std::optional<int> sign() const;
    bool contains_zero() const { return !sign().has_value(); }
    bool overlaps(const Interval& o) const;
    // Exact rational endpoints.
    Rational lower() const;
    Rational upper() const;
    double mid_double() const;
    double width_double() const;

    Interval& operator+=(const Interval& o);
    Interval& operator-=(const Interval& o);
    Interval& operator*=(const Interval& o);
    Interval& operator/=(const Interval& o);
    Interval operator-() const;
    friend Interval operator+(Interval a, const Interval& b) { return a += b; }
    friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
    friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
    friend Interval operator/(Interval a, const Interval& b) { return a /= b; }

    Interval square() const;
    Interval sqrt() const;  // of the nonnegative part
    static Interval hull(const Interval& a, const Interval& b);

    std::string str() const;

private:
    mpfr_t lo_;
    mpfr_t hi_;
    mpfr_prec_t prec_;
};

// Interval of x with its exact value, useful for Q(sqrt q) coefficients.
Interval to_interval(const Rational& v, mpfr_prec_t prec);
Interval to_interval(const Surd& v, mpfr_prec_t prec);

}  // namespace quadline
