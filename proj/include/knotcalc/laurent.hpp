#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace kc {

// Dense univariate polynomial over Q, coefficient i is the x^i term.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<mpq_class> c);
    static QPoly constant(const mpq_class& c);
    static QPoly x();

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    mpq_class coeff(int i) const;
    mpq_class lead() const { return c_.empty() ? mpq_class(0) : c_.back(); }

    mpq_class eval(const mpq_class& x) const;
    int sign_at(const mpq_class& x) const;
    QPoly derivative() const;
    QPoly monic() const;

    friend QPoly operator+(const QPoly& a, const QPoly& b);
    friend QPoly operator-(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    QPoly operator-() const;
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

    // quotient and remainder, b nonzero
    static void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
    static QPoly gcd(const QPoly& a, const QPoly& b);
    // s*a + t*b = gcd (monic)
    static QPoly ext_gcd(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t);
    QPoly squarefree() const;

    std::string str(const std::string& var = "x") const;

private:
    void trim();
    std::vector<mpq_class> c_;
};

class LaurentPolynomial {
public:
    LaurentPolynomial() = default;
    LaurentPolynomial(const mpz_class& c);
    LaurentPolynomial(long c) : LaurentPolynomial(mpz_class(c)) {}
    LaurentPolynomial(long min_exp, std::vector<mpz_class> coeffs);
    explicit LaurentPolynomial(const std::map<long, mpz_class>& terms);
    static LaurentPolynomial monomial(const mpz_class& c, long k);
    static LaurentPolynomial t() { return monomial(1, 1); }

    bool is_zero() const { return c_.empty(); }
    long min_exp() const { return lo_; }
    long max_exp() const { return lo_ + static_cast<long>(c_.size()) - 1; }
    long span() const { return is_zero() ? 0 : max_exp() - min_exp(); }
    mpz_class coeff(long k) const;
    mpz_class lead() const { return c_.empty() ? mpz_class(0) : c_.back(); }
    std::map<long, mpz_class> terms() const;

    mpz_class eval(const mpz_class& x) const;  // x must be +-1 if min_exp < 0
    mpq_class eval(const mpq_class& x) const;

    LaurentPolynomial shift(long k) const;
    LaurentPolynomial reversed() const;  // f(t^-1)
    LaurentPolynomial pow(unsigned n) const;

    friend LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b);
    friend LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b);
    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
    LaurentPolynomial operator-() const;
    friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        return a.lo_ == b.lo_ && a.c_ == b.c_;
    }

    // symmetric exponent range, positive leading coefficient
    LaurentPolynomial normalized() const;
    bool is_symmetric() const;
    static bool equal_up_to_units(const LaurentPolynomial& a, const LaurentPolynomial& b);

    // as an ordinary polynomial after shifting the lowest exponent to 0
    QPoly to_qpoly() const;
    // for symmetric f: P with f(e^{i theta}) = P(cos theta)
    QPoly chebyshev_transform() const;

    std::string str() const;

private:
    void trim();
    long lo_ = 0;
    std::vector<mpz_class> c_;
};

LaurentPolynomial laurent_mul(const LaurentPolynomial& a, const LaurentPolynomial& b);

struct BezoutCertificate {
    bool coprime = false;
    LaurentPolynomial f, g;
    mpz_class c;
};

// f*a + g*b = c with c a nonzero integer when a, b coprime in Q[t^{+-1}].
// Throws std::invalid_argument on zero input.
BezoutCertificate laurent_gcd_coprime(const LaurentPolynomial& a, const LaurentPolynomial& b);

}  // namespace kc

namespace kc {
// exact division in Z[t^{+-1}]; returns false when b does not divide a
bool laurent_divide(const LaurentPolynomial& a, const LaurentPolynomial& b, LaurentPolynomial& q);
}  // namespace kc
