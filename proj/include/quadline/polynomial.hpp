#pragma once

// Dense univariate polynomials over an exact coefficient ring, plus the
// subresultant resultant and Sturm machinery used for root counting.
// Coefficients are stored constant term first.

#include "quadline/rational.hpp"

#include <concepts>
#include <type_traits>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace quadline {

inline int sign_of(const Rational& x) { return sgn(x); }
inline int sign_of(const Surd& x) { return x.sign(); }

// Rational upper bound on |x|.
inline Rational abs_upper(const Rational& x) { return abs(x); }
inline Rational abs_upper(const Surd& x) {
    Integer s = sqrt(x.q().get_num() / x.q().get_den() + 1) + 1;
    return abs(x.p()) + abs(x.r()) * Rational(s);
}

template <class T>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }
    // Integer constants, so that Poly can itself serve as a coefficient ring.
    template <std::integral I>
    explicit Poly(I v) {
        if (v != 0) c_.push_back(T(static_cast<long>(v)));
    }
    static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }
    static Poly monomial(const T& v, std::size_t k) {
        std::vector<T> c(k + 1, T(0));
        c[k] = v;
        return Poly(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
    const T& lc() const { return c_.back(); }

    template <class U>
    auto eval(const U& x) const {
        using R = std::conditional_t<std::is_same_v<T, U> || !std::is_convertible_v<T, U>, T, U>;
        R acc = R(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly derivative() const {
        std::vector<T> d;
        for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * T(static_cast<long>(k)));
        return Poly(std::move(d));
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    Poly& operator*=(const T& s) {
        for (auto& v : c_) v *= s;
        trim();
        return *this;
    }
    Poly operator-() const {
        Poly r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const T& s) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
    }
    std::vector<T> c_;
};

using QPoly = Poly<Rational>;
using SurdPoly = Poly<Surd>;

// Division with remainder over a field.
template <class T>
std::pair<Poly<T>, Poly<T>> divmod(const Poly<T>& a, const Poly<T>& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<T> r = a.coeffs();
    int db = b.degree();
    int dq = a.degree() - db;
    if (dq < 0) return {Poly<T>{}, a};
    std::vector<T> q(static_cast<std::size_t>(dq) + 1, T(0));
    for (int k = dq; k >= 0; --k) {
        T f = r[static_cast<std::size_t>(k + db)] / b.lc();
        q[static_cast<std::size_t>(k)] = f;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
    }
    r.resize(static_cast<std::size_t>(db));
    return {Poly<T>(std::move(q)), Poly<T>(std::move(r))};
}

// Exact division in a domain whose elements support divmod-free division
// (fields) or where the quotient is known to be exact (polynomial rings).
template <class T>
T exact_div(const T& a, const T& b) {
    return a / b;
}
template <class T>
Poly<T> exact_div(const Poly<T>& a, const Poly<T>& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
    return q;
}

template <class T>
T power(const T& x, int e) {
    T r = T(1);
    for (int i = 0; i < e; ++i) r = r * x;
    return r;
}
template <class T>
Poly<T> power(const Poly<T>& x, int e) {
    Poly<T> r = Poly<T>::constant(T(1));
    for (int i = 0; i < e; ++i) r = r * x;
    return r;
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, without division.
template <class T>
Poly<T> prem(const Poly<T>& a, const Poly<T>& b) {
    std::vector<T> r = a.coeffs();
    int db = b.degree();
    int da = a.degree();
    if (da < db) return a;
    const T& l = b.lc();
    for (int k = da; k >= db; --k) {
        T f = r[static_cast<std::size_t>(k)];
        for (auto& v : r) v = v * l;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
    }
    r.resize(static_cast<std::size_t>(db));
    return Poly<T>(std::move(r));
}

// Resultant by the subresultant polynomial remainder sequence. Works over any
// integral domain with exact division (Q, Q(sqrt q), Q[x]).
template <class T>
T resultant(Poly<T> a, Poly<T> b) {
    if (a.is_zero() || b.is_zero()) return T(0);
    T s = T(1);
    if (a.degree() < b.degree()) {
        if (a.degree() % 2 == 1 && b.degree() % 2 == 1) s = -s;
        std::swap(a, b);
    }
    if (b.degree() == 0) return s * power(b.lc(), a.degree());
    T g = T(1), h = T(1);
    while (true) {
        int delta = a.degree() - b.degree();
        if (a.degree() % 2 == 1 && b.degree() % 2 == 1) s = -s;
        Poly<T> r = prem(a, b);
        a = std::move(b);
        if (r.is_zero()) return T(0);
        T den = g * power(h, delta);
        std::vector<T> rc = r.coeffs();
        for (auto& v : rc) v = exact_div(v, den);
        b = Poly<T>(std::move(rc));
        g = a.lc();
        if (delta == 0) {
            // h unchanged
        } else {
            h = exact_div(power(g, delta), power(h, delta - 1));
        }
        if (b.degree() == 0) {
            int da = a.degree();
            T hb = exact_div(power(b.lc(), da), power(h, da - 1));
            return s * hb;
        }
    }
}

template <class T>
Poly<T> make_monic(const Poly<T>& p) {
    if (p.is_zero()) return p;
    return p * (T(1) / p.lc());
}

template <class T>
Poly<T> gcd(Poly<T> a, Poly<T> b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = make_monic(r);
    }
    return make_monic(a);
}

// p / gcd(p, p').
template <class T>
Poly<T> squarefree_part(const Poly<T>& p) {
    if (p.degree() <= 0) return p;
    auto g = gcd(p, p.derivative());
    if (g.degree() == 0) return p;
    return divmod(p, g).first;
}

template <class T>
bool is_squarefree(const Poly<T>& p) {
    return p.degree() <= 0 || gcd(p, p.derivative()).degree() == 0;
}

// An endpoint of a root-counting interval; nullopt stands for infinity.
using Bound = std::optional<Rational>;

template <class T>
class SturmSequence {
public:
    explicit SturmSequence(const Poly<T>& p) {
        if (p.is_zero()) return;
        seq_.push_back(normalized(p));
        if (p.degree() == 0) return;
        seq_.push_back(normalized(p.derivative()));
        while (true) {
            auto r = divmod(seq_[seq_.size() - 2], seq_.back()).second;
            if (r.is_zero()) break;
            seq_.push_back(normalized(-r));
        }
    }

    const std::vector<Poly<T>>& polys() const { return seq_; }

    // Sign variations at x (finite).
    int variations(const Rational& x) const {
        int v = 0, last = 0;
        for (const auto& q : seq_) {
            int s = sign_of(q.eval(x));
            if (s == 0) continue;
            if (last != 0 && s != last) ++v;
            last = s;
        }
        return v;
    }
    // Sign variations at +infinity (dir = +1) or -infinity (dir = -1).
    int variations_at_infinity(int dir) const {
        int v = 0, last = 0;
        for (const auto& q : seq_) {
            int s = sign_of(q.lc());
            if (dir < 0 && q.degree() % 2 == 1) s = -s;
            if (last != 0 && s != last) ++v;
            last = s;
        }
        return v;
    }

    // Distinct real roots in the half-open interval (lo, hi].
    int count(const Bound& lo, const Bound& hi) const {
        if (seq_.empty()) return 0;
        int vl = lo ? variations(*lo) : variations_at_infinity(-1);
        int vh = hi ? variations(*hi) : variations_at_infinity(+1);
        return vl - vh;
    }

private:
    static Poly<T> normalized(const Poly<T>& p) {
        // Dividing by |lc| keeps all signs and tames coefficient growth.
        T l = p.lc();
        if (sign_of(l) < 0) l = -l;
        return p * (T(1) / l);
    }
    std::vector<Poly<T>> seq_;
};

// Number of distinct real roots of p in (lo, hi]; squarefree reduction is
// applied internally.
template <class T>
int sturm_count(const Poly<T>& p, const Bound& lo = std::nullopt, const Bound& hi = std::nullopt) {
    if (p.is_zero()) throw std::domain_error("sturm_count of the zero polynomial");
    return SturmSequence<T>(squarefree_part(p)).count(lo, hi);
}

// Closed isolating interval [lo, hi]; lo == hi marks an exact rational root.
struct RootInterval {
    Rational lo;
    Rational hi;
    bool exact() const { return lo == hi; }
    Rational width() const { return hi - lo; }
};

template <class T>
Rational cauchy_bound(const Poly<T>& p) {
    Rational m = 0;
    Rational l = abs_upper(p.lc());
    // |a_i / a_n| <= |a_i|_upper / |a_n|_lower; bound |a_n| below via its norm.
    Rational low;
    if constexpr (std::is_same_v<T, Surd>) {
        // |u| >= |norm(u)| / |conjugate(u)|
        Rational n = abs(p.lc().norm());
        low = n / abs_upper(p.lc().conjugate());
    } else {
        low = l;
    }
    for (int k = 0; k < p.degree(); ++k) {
        Rational v = abs_upper(p.coeff(static_cast<std::size_t>(k))) / low;
        if (v > m) m = v;
    }
    return m + 1;
}

template <class T>
class RootIsolator {
public:
    // p must be squarefree.
    explicit RootIsolator(Poly<T> p) : p_(std::move(p)), sturm_(p_) {}

    std::vector<RootInterval> isolate() const {
        std::vector<RootInterval> out;
        if (p_.degree() <= 0) return out;
        Rational b = cauchy_bound(p_);
        split(-b, b, sturm_.count(Rational(-b), Rational(b)), out);
        return out;
    }

    // Shrinks an isolating interval below the requested width by bisection.
    void refine(RootInterval& iv, const Rational& width) const {
        if (iv.exact()) return;
        int slo = sign_of(p_.eval(iv.lo));
        while (iv.width() > width) {
            Rational mid = (iv.lo + iv.hi) / 2;
            int sm = sign_of(p_.eval(mid));
            if (sm == 0) {
                iv.lo = iv.hi = mid;
                return;
            }
            if (sm == slo) {
                iv.lo = mid;
            } else {
                iv.hi = mid;
            }
        }
    }

    const Poly<T>& poly() const { return p_; }

private:
    // Roots in (lo, hi]; count known.
    void split(const Rational& lo, const Rational& hi, int n, std::vector<RootInterval>& out) const {
        if (n == 0) return;
        if (n == 1) {
            RootInterval iv{lo, hi};
            if (sign_of(p_.eval(hi)) == 0) {
                iv.lo = hi;
            } else {
                // Pull the left end off the excluded root candidate at lo.
                if (sign_of(p_.eval(lo)) == 0) {
                    Rational l2 = lo;
                    Rational step = (hi - lo) / 2;
                    while (sturm_.count(lo, lo + step) != 0) step /= 2;
                    l2 = lo + step;
                    iv.lo = l2;
                }
            }
            out.push_back(iv);
            return;
        }
        Rational mid = (lo + hi) / 2;
        int left = sturm_.count(lo, mid);
        split(lo, mid, left, out);
        split(mid, hi, n - left, out);
    }

    Poly<T> p_;
    SturmSequence<T> sturm_;
};

}  // namespace quadline
