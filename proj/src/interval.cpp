#include "quadline/interval.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace quadline {

namespace {

void set_rational(mpfr_t dst, const Rational& v, mpfr_rnd_t rnd) { mpfr_set_q(dst, v.get_mpq_t(), rnd); }

Rational from_mpfr(const mpfr_t x) {
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    Rational r(m);
    if (e >= 0) {
        mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return r;
}

}  // namespace

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& v, mpfr_prec_t prec) : Interval(prec) {
    set_rational(lo_, v, MPFR_RNDD);
    set_rational(hi_, v, MPFR_RNDU);
}

Interval::Interval(const Rational& lo, const Rational& hi, mpfr_prec_t prec) : Interval(prec) {
    set_rational(lo_, lo, MPFR_RNDD);
    set_rational(hi_, hi, MPFR_RNDU);
}

Interval::Interval(const Surd& v, mpfr_prec_t prec) : Interval(v.p(), prec) {
    if (!v.is_rational()) *this += Interval(v.r(), prec) * Interval(v.q(), prec).sqrt();
}

Interval::Interval(const Interval& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : Interval(o.prec_) {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(const Interval& o) {
    if (this == &o) return *this;
    prec_ = o.prec_;
    mpfr_set_prec(lo_, prec_);
    mpfr_set_prec(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
    return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
    std::swap(prec_, o.prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

std::optional<int> Interval::sign() const {
    if (mpfr_sgn(lo_) > 0) return 1;
    if (mpfr_sgn(hi_) < 0) return -1;
    return std::nullopt;
}

bool Interval::overlaps(const Interval& o) const {
    return mpfr_lessequal_p(lo_, o.hi_) && mpfr_lessequal_p(o.lo_, hi_);
}

Rational Interval::lower() const { return from_mpfr(lo_); }
Rational Interval::upper() const { return from_mpfr(hi_); }

double Interval::mid_double() const { return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)); }
double Interval::width_double() const { return mpfr_get_d(hi_, MPFR_RNDU) - mpfr_get_d(lo_, MPFR_RNDD); }

Interval& Interval::operator+=(const Interval& o) {
    mpfr_add(lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(hi_, hi_, o.hi_, MPFR_RNDU);
    return *this;
}

Interval& Interval::operator-=(const Interval& o) {
    mpfr_t t;
    mpfr_init2(t, prec_);
    mpfr_sub(t, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(hi_, hi_, o.lo_, MPFR_RNDU);
    mpfr_swap(lo_, t);
    mpfr_clear(t);
    return *this;
}

Interval& Interval::operator*=(const Interval& o) {
    mpfr_t c[4], lo, hi;
    for (auto& x : c) mpfr_init2(x, prec_);
    mpfr_inits2(prec_, lo, hi, static_cast<mpfr_ptr>(nullptr));
    const mpfr_srcptr a[2] = {lo_, hi_};
    const mpfr_srcptr b[2] = {o.lo_, o.hi_};
    mpfr_set_inf(lo, 1);
    mpfr_set_inf(hi, -1);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_mul(c[0], a[i], b[j], MPFR_RNDD);
            mpfr_mul(c[1], a[i], b[j], MPFR_RNDU);
            mpfr_min(lo, lo, c[0], MPFR_RNDD);
            mpfr_max(hi, hi, c[1], MPFR_RNDU);
        }
    mpfr_swap(lo_, lo);
    mpfr_swap(hi_, hi);
    for (auto& x : c) mpfr_clear(x);
    mpfr_clears(lo, hi, static_cast<mpfr_ptr>(nullptr));
    return *this;
}

Interval& Interval::operator/=(const Interval& o) {
    if (!o.sign()) throw std::domain_error("interval division by an interval containing zero");
    Interval inv(prec_);
    mpfr_ui_div(inv.lo_, 1, o.hi_, MPFR_RNDD);
    mpfr_ui_div(inv.hi_, 1, o.lo_, MPFR_RNDU);
    return *this *= inv;
}

Interval Interval::operator-() const {
    Interval r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Interval Interval::square() const {
    Interval r = *this * *this;
    if (!sign()) mpfr_set_zero(r.lo_, 1);
    return r;
}

Interval Interval::sqrt() const {
    Interval r(prec_);
    if (mpfr_sgn(hi_) < 0) throw std::domain_error("sqrt of a negative interval");
    if (mpfr_sgn(lo_) <= 0) {
        mpfr_set_zero(r.lo_, 1);
    } else {
        mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    }
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
    Interval r = a;
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

std::string Interval::str() const {
    std::ostringstream os;
    os.precision(17);
    os << "[" << mpfr_get_d(lo_, MPFR_RNDD) << ", " << mpfr_get_d(hi_, MPFR_RNDU) << "]";
    return os.str();
}

Interval to_interval(const Rational& v, mpfr_prec_t prec) { return Interval(v, prec); }
Interval to_interval(const Surd& v, mpfr_prec_t prec) { return Interval(v, prec); }

}  // namespace quadline
