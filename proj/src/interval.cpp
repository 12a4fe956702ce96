#include "knotcalc/interval.hpp"

#include <mpfr.h>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kc {

namespace {

class Mpfr {
public:
    explicit Mpfr(int prec) { mpfr_init2(v, prec); }
    ~Mpfr() { mpfr_clear(v); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpq_class to_q() const {
        mpq_class q;
        mpfr_get_q(q.get_mpq_t(), v);
        return q;
    }
    mpfr_t v;
};

mpfr_rnd_t rnd(int dir) { return dir < 0 ? MPFR_RNDD : MPFR_RNDU; }

}  // namespace

mpq_class round_dyadic(const mpq_class& v, int precision, int dir) {
    Mpfr x(precision);
    mpfr_set_q(x.v, v.get_mpq_t(), rnd(dir));
    return x.to_q();
}

RealInterval::RealInterval(const mpq_class& lo, const mpq_class& hi, int precision)
    : lo_(round_dyadic(lo, precision, -1)), hi_(round_dyadic(hi, precision, +1)), prec_(precision) {
    if (lo > hi) throw std::invalid_argument("RealInterval: lower > upper");
}

RealInterval RealInterval::exact(const mpq_class& v, int precision) { return RealInterval(v, v, precision); }

RealInterval RealInterval::pi(int precision) {
    Mpfr lo(precision), hi(precision);
    mpfr_const_pi(lo.v, MPFR_RNDD);
    mpfr_const_pi(hi.v, MPFR_RNDU);
    RealInterval r;
    r.lo_ = lo.to_q();
    r.hi_ = hi.to_q();
    r.prec_ = precision;
    return r;
}

RealInterval RealInterval::acos(const RealInterval& x) {
    if (x.lo_ < -1 || x.hi_ > 1) throw std::domain_error("RealInterval::acos: argument outside [-1, 1]");
    int p = x.prec_;
    Mpfr a(p), b(p), ra(p), rb(p);
    // acos is decreasing
    mpfr_set_q(a.v, x.hi_.get_mpq_t(), MPFR_RNDU);
    mpfr_set_q(b.v, x.lo_.get_mpq_t(), MPFR_RNDD);
    mpfr_acos(ra.v, a.v, MPFR_RNDD);
    mpfr_acos(rb.v, b.v, MPFR_RNDU);
    RealInterval r;
    r.lo_ = ra.to_q();
    r.hi_ = rb.to_q();
    r.prec_ = p;
    return r;
}

RealInterval RealInterval::sqrt(const RealInterval& x) {
    if (x.lo_ < 0) throw std::domain_error("RealInterval::sqrt: negative argument");
    int p = x.prec_;
    Mpfr a(p), b(p);
    mpfr_set_q(a.v, x.lo_.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(b.v, x.hi_.get_mpq_t(), MPFR_RNDU);
    mpfr_sqrt(a.v, a.v, MPFR_RNDD);
    mpfr_sqrt(b.v, b.v, MPFR_RNDU);
    RealInterval r;
    r.lo_ = a.to_q();
    r.hi_ = b.to_q();
    r.prec_ = p;
    return r;
}

RealInterval RealInterval::cos(const RealInterval& x) {
    int p = x.prec_;
    if (x.lo_ < 0 || x.hi_ > pi(p + 8).lower()) throw std::domain_error("RealInterval::cos: argument outside [0, pi]");
    Mpfr a(p), b(p), ra(p), rb(p);
    // cos is decreasing on [0, pi]
    mpfr_set_q(a.v, x.hi_.get_mpq_t(), MPFR_RNDU);
    mpfr_set_q(b.v, x.lo_.get_mpq_t(), MPFR_RNDD);
    mpfr_cos(ra.v, a.v, MPFR_RNDD);
    mpfr_cos(rb.v, b.v, MPFR_RNDU);
    RealInterval r;
    r.lo_ = ra.to_q();
    r.hi_ = rb.to_q();
    r.prec_ = p;
    return r;
}

int RealInterval::certain_sign() const {
    if (lo_ > 0) return 1;
    if (hi_ < 0) return -1;
    return 0;
}

RealInterval operator+(const RealInterval& a, const RealInterval& b) {
    return RealInterval(a.lo_ + b.lo_, a.hi_ + b.hi_, std::min(a.prec_, b.prec_));
}

RealInterval operator-(const RealInterval& a, const RealInterval& b) {
    return RealInterval(a.lo_ - b.hi_, a.hi_ - b.lo_, std::min(a.prec_, b.prec_));
}

RealInterval RealInterval::operator-() const {
    RealInterval r;
    r.lo_ = -hi_;
    r.hi_ = -lo_;
    r.prec_ = prec_;
    return r;
}

RealInterval operator*(const RealInterval& a, const RealInterval& b) {
    mpq_class c[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
    return RealInterval(*std::min_element(c, c + 4), *std::max_element(c, c + 4), std::min(a.prec_, b.prec_));
}

RealInterval operator/(const RealInterval& a, const RealInterval& b) {
    if (b.contains_zero()) throw std::domain_error("RealInterval: division by an interval containing 0");
    mpq_class c[4] = {a.lo_ / b.lo_, a.lo_ / b.hi_, a.hi_ / b.lo_, a.hi_ / b.hi_};
    return RealInterval(*std::min_element(c, c + 4), *std::max_element(c, c + 4), std::min(a.prec_, b.prec_));
}

std::string RealInterval::decimal(int digits) const {
    Mpfr m(prec_ + 8);
    mpq_class mid = midpoint();
    mpfr_set_q(m.v, mid.get_mpq_t(), MPFR_RNDN);
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, m.v);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

std::string RealInterval::str(int digits) const {
    Mpfr l(prec_), h(prec_);
    mpfr_set_q(l.v, lo_.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(h.v, hi_.get_mpq_t(), MPFR_RNDU);
    char *a = nullptr, *b = nullptr;
    mpfr_asprintf(&a, "%.*RDg", digits, l.v);
    mpfr_asprintf(&b, "%.*RUg", digits, h.v);
    std::ostringstream os;
    os << "[" << a << ", " << b << "]";
    mpfr_free_str(a);
    mpfr_free_str(b);
    return os.str();
}

}  // namespace kc
