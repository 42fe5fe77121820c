#include "quadline/rational.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace quadline {

namespace {

bool parse_integer(std::string_view s, Integer& out) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (std::size_t k = i; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9') return false;
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return out.set_str(digits, 10) == 0;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    Integer num, den{1};
    if (!parse_integer(text.substr(0, slash), num))
        throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    if (slash != std::string_view::npos) {
        auto d = text.substr(slash + 1);
        if (d.empty() || d[0] == '-' || d[0] == '+' || !parse_integer(d, den) || den == 0)
            throw std::invalid_argument("bad denominator in '" + std::string(text) + "'");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

bool rational_sqrt(const Rational& q, Rational& root) {
    if (q < 0) return false;
    const Integer& n = q.get_num();
    const Integer& d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
    Integer rn = sqrt(n), rd = sqrt(d);
    root = Rational(rn, rd);
    root.canonicalize();
    return true;
}

Surd::Surd(Rational p, Rational r, Rational q) : p_(std::move(p)), r_(std::move(r)), q_(std::move(q)) {
    if (q_ < 0) throw std::domain_error("Surd radicand must be nonnegative");
    normalize();
}

void Surd::normalize() {
    if (r_ == 0 || q_ == 0) {
        r_ = 0;
        q_ = 0;
        return;
    }
    Rational root;
    if (rational_sqrt(q_, root)) {
        p_ += r_ * root;
        r_ = 0;
        q_ = 0;
    }
}

const Rational& Surd::field_q(const Surd& o) const {
    if (r_ == 0) return o.q_;
    if (o.r_ != 0 && o.q_ != q_) throw std::logic_error("Surd arithmetic across different radicands");
    return q_;
}

int Surd::sign() const {
    int sp = sgn(p_), sr = sgn(r_);
    if (sr == 0) return sp;
    if (sp == 0 || sp == sr) return sr;
    // opposite signs: compare p^2 against r^2 q
    int c = cmp(p_ * p_, r_ * r_ * q_);
    return c == 0 ? 0 : (c > 0 ? sp : sr);
}

Surd Surd::conjugate() const {
    Surd s = *this;
    s.r_ = -s.r_;
    return s;
}

double Surd::to_double() const { return p_.get_d() + r_.get_d() * std::sqrt(q_.get_d()); }

Surd& Surd::operator+=(const Surd& o) {
    Rational q = field_q(o);
    p_ += o.p_;
    r_ += o.r_;
    q_ = q;
    normalize();
    return *this;
}

Surd& Surd::operator-=(const Surd& o) { return *this += -o; }

Surd& Surd::operator*=(const Surd& o) {
    Rational q = field_q(o);
    Rational np = p_ * o.p_ + r_ * o.r_ * q;
    Rational nr = p_ * o.r_ + r_ * o.p_;
    p_ = std::move(np);
    r_ = std::move(nr);
    q_ = q;
    normalize();
    return *this;
}

Surd& Surd::operator/=(const Surd& o) {
    Rational n = o.norm();
    if (n == 0) throw std::domain_error("Surd division by zero");
    *this *= o.conjugate();
    p_ /= n;
    r_ /= n;
    normalize();
    return *this;
}

Surd Surd::operator-() const {
    Surd s = *this;
    s.p_ = -s.p_;
    s.r_ = -s.r_;
    return s;
}

std::strong_ordering operator<=>(const Surd& a, const Surd& b) {
    int s;
    if (a.r_ == 0 || b.r_ == 0 || a.q_ == b.q_) {
        s = (a - b).sign();
    } else {
        // sign of X + Y with X = (pa - pb) + ra sqrt(qa), Y = -rb sqrt(qb)
        Surd x(a.p_ - b.p_, a.r_, a.q_);
        int sx = x.sign();
        int sy = -sgn(b.r_);
        if (sx == 0 || sx == sy) {
            s = sx == 0 ? sy : sx;
        } else {
            Surd diff = x * x - Surd(b.r_ * b.r_ * b.q_);
            int d = diff.sign();
            s = d == 0 ? 0 : (d > 0 ? sx : sy);
        }
    }
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string Surd::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Surd& s) {
    os << s.p().get_str();
    if (!s.is_rational()) os << (s.r() < 0 ? " - " : " + ") << Rational(abs(s.r())).get_str() << "*sqrt(" << s.q().get_str() << ")";
    return os;
}

int sign_nested(const Surd& u, const Surd& v, const Surd& w) {
    int su = u.sign(), sv = v.sign();
    if (w.sign() == 0 || sv == 0) return su;
    if (su == 0 || su == sv) return sv;
    int d = (u * u - v * v * w).sign();
    return d == 0 ? 0 : (d > 0 ? su : sv);
}

}  // namespace quadline
