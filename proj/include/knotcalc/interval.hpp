#pragma once

#include <gmpxx.h>

#include <string>

namespace kc {

// Closed interval with dyadic endpoints. Arithmetic is exact on the endpoints and
// then rounded outward to `precision` significant bits.
class RealInterval {
public:
    RealInterval() = default;
    RealInterval(const mpq_class& lo, const mpq_class& hi, int precision);
    static RealInterval exact(const mpq_class& v, int precision);

    static RealInterval pi(int precision);
    static RealInterval acos(const RealInterval& x);  // x must lie inside [-1, 1]
    static RealInterval sqrt(const RealInterval& x);
    static RealInterval cos(const RealInterval& x);  // x must lie inside [0, pi]

    const mpq_class& lower() const { return lo_; }
    const mpq_class& upper() const { return hi_; }
    int precision() const { return prec_; }

    mpq_class width() const { return hi_ - lo_; }
    mpq_class midpoint() const { return (lo_ + hi_) / 2; }
    bool contains(const mpq_class& v) const { return lo_ <= v && v <= hi_; }
    bool contains_zero() const { return contains(0); }
    // -1, +1 when the whole interval is on one side of 0, else 0
    int certain_sign() const;
    bool disjoint_from(const RealInterval& o) const { return hi_ < o.lo_ || o.hi_ < lo_; }

    friend RealInterval operator+(const RealInterval& a, const RealInterval& b);
    friend RealInterval operator-(const RealInterval& a, const RealInterval& b);
    friend RealInterval operator*(const RealInterval& a, const RealInterval& b);
    friend RealInterval operator/(const RealInterval& a, const RealInterval& b);
    RealInterval operator-() const;

    std::string str(int digits = 20) const;
    // decimal string of an endpoint-consistent midpoint, `digits` significant digits
    std::string decimal(int digits) const;

private:
    mpq_class lo_ = 0, hi_ = 0;
    int prec_ = 64;
};

// round a rational to a dyadic at the given precision; dir < 0 rounds down, > 0 up
mpq_class round_dyadic(const mpq_class& v, int precision, int dir);

}  // namespace kc
