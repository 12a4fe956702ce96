#include "knotcalc/laurent.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kc {

// ---------------------------------------------------------------- QPoly

QPoly::QPoly(std::vector<mpq_class> c) : c_(std::move(c)) { trim(); }

QPoly QPoly::constant(const mpq_class& c) { return QPoly(std::vector<mpq_class>{c}); }

QPoly QPoly::x() { return QPoly(std::vector<mpq_class>{0, 1}); }

void QPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpq_class QPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    return c_[i];
}

mpq_class QPoly::eval(const mpq_class& x) const {
    mpq_class acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

int QPoly::sign_at(const mpq_class& x) const { return sgn(eval(x)); }

QPoly QPoly::derivative() const {
    std::vector<mpq_class> d;
    for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
    return QPoly(d);
}

QPoly QPoly::monic() const {
    if (c_.empty()) return *this;
    std::vector<mpq_class> d = c_;
    mpq_class l = c_.back();
    for (auto& v : d) v /= l;
    return QPoly(d);
}

QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<mpq_class> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return QPoly(c);
}

QPoly QPoly::operator-() const {
    std::vector<mpq_class> c = c_;
    for (auto& v : c) v = -v;
    return QPoly(c);
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    std::vector<mpq_class> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return QPoly(c);
}

void QPoly::divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
    if (b.is_zero()) throw std::invalid_argument("QPoly::divmod: division by zero polynomial");
    std::vector<mpq_class> rem = a.c_;
    int db = b.degree();
    std::vector<mpq_class> quo(std::max(0, a.degree() - db + 1));
    for (int i = a.degree(); i >= db; --i) {
        if (rem[i] == 0) continue;
        mpq_class f = rem[i] / b.c_[db];
        quo[i - db] = f;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.c_[j];
    }
    q = QPoly(quo);
    r = QPoly(rem);
}

QPoly QPoly::gcd(const QPoly& a, const QPoly& b) {
    QPoly x = a, y = b, q, r;
    while (!y.is_zero()) {
        divmod(x, y, q, r);
        x = y;
        y = r;
    }
    return x.monic();
}

QPoly QPoly::ext_gcd(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t) {
    QPoly r0 = a, r1 = b;
    QPoly s0 = constant(1), s1, t0, t1 = constant(1);
    while (!r1.is_zero()) {
        QPoly q, r;
        divmod(r0, r1, q, r);
        QPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = r1; r1 = r;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    if (r0.is_zero()) {
        s = QPoly();
        t = QPoly();
        return r0;
    }
    mpq_class l = r0.lead();
    s = s0 * constant(1 / l);
    t = t0 * constant(1 / l);
    return r0.monic();
}

QPoly QPoly::squarefree() const {
    if (degree() <= 0) return monic();
    QPoly g = gcd(*this, derivative()), q, r;
    divmod(*this, g, q, r);
    return q.monic();
}

std::string QPoly::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (c_[i] == 0) continue;
        mpq_class v = c_[i];
        if (!first) os << (v < 0 ? " - " : " + ");
        else if (v < 0) os << "-";
        mpq_class a = abs(v);
        if (i == 0 || a != 1) os << a.get_str();
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------- Laurent

LaurentPolynomial::LaurentPolynomial(const mpz_class& c) : lo_(0), c_{c} { trim(); }

LaurentPolynomial::LaurentPolynomial(long min_exp, std::vector<mpz_class> coeffs)
    : lo_(min_exp), c_(std::move(coeffs)) {
    trim();
}

LaurentPolynomial::LaurentPolynomial(const std::map<long, mpz_class>& terms) {
    if (terms.empty()) return;
    lo_ = terms.begin()->first;
    c_.assign(terms.rbegin()->first - lo_ + 1, 0);
    for (auto& [k, v] : terms) c_[k - lo_] += v;
    trim();
}

LaurentPolynomial LaurentPolynomial::monomial(const mpz_class& c, long k) {
    return LaurentPolynomial(k, {c});
}

void LaurentPolynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
    size_t z = 0;
    while (z < c_.size() && c_[z] == 0) ++z;
    if (z) {
        c_.erase(c_.begin(), c_.begin() + z);
        lo_ += static_cast<long>(z);
    }
    if (c_.empty()) lo_ = 0;
}

mpz_class LaurentPolynomial::coeff(long k) const {
    if (c_.empty() || k < lo_ || k > max_exp()) return 0;
    return c_[k - lo_];
}

std::map<long, mpz_class> LaurentPolynomial::terms() const {
    std::map<long, mpz_class> m;
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) m[lo_ + static_cast<long>(i)] = c_[i];
    return m;
}

mpz_class LaurentPolynomial::eval(const mpz_class& x) const {
    mpq_class v = eval(mpq_class(x));
    if (v.get_den() != 1) throw std::domain_error("Laurent eval: non-integral value");
    return v.get_num();
}

mpq_class LaurentPolynomial::eval(const mpq_class& x) const {
    if (c_.empty()) return 0;
    if (x == 0 && lo_ < 0) throw std::domain_error("Laurent eval at 0 with negative exponents");
    mpq_class acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + mpq_class(*it);
    mpq_class p = 1;
    long e = lo_ < 0 ? -lo_ : lo_;
    for (long i = 0; i < e; ++i) p *= x;
    if (lo_ < 0) return acc / p;
    return acc * p;
}

LaurentPolynomial LaurentPolynomial::shift(long k) const {
    if (c_.empty()) return *this;
    return LaurentPolynomial(lo_ + k, c_);
}

LaurentPolynomial LaurentPolynomial::reversed() const {
    if (c_.empty()) return *this;
    std::vector<mpz_class> r(c_.rbegin(), c_.rend());
    return LaurentPolynomial(-max_exp(), r);
}

LaurentPolynomial LaurentPolynomial::pow(unsigned n) const {
    LaurentPolynomial r(1), b = *this;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    long lo = std::min(a.lo_, b.lo_), hi = std::max(a.max_exp(), b.max_exp());
    std::vector<mpz_class> c(hi - lo + 1);
    for (size_t i = 0; i < a.c_.size(); ++i) c[a.lo_ - lo + i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[b.lo_ - lo + i] += b.c_[i];
    return LaurentPolynomial(lo, c);
}

LaurentPolynomial LaurentPolynomial::operator-() const {
    LaurentPolynomial r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b) { return a + (-b); }

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return LaurentPolynomial();
    std::vector<mpz_class> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return LaurentPolynomial(a.lo_ + b.lo_, c);
}

LaurentPolynomial laurent_mul(const LaurentPolynomial& a, const LaurentPolynomial& b) { return a * b; }

LaurentPolynomial LaurentPolynomial::normalized() const {
    if (c_.empty()) return *this;
    long sp = span();
    // for odd span the extra exponent goes to the positive side
    LaurentPolynomial r = shift(-lo_ - sp / 2);
    if (r.lead() < 0) r = -r;
    return r;
}

bool LaurentPolynomial::is_symmetric() const {
    if (c_.empty()) return true;
    return lo_ == -max_exp() && reversed() == *this;
}

bool LaurentPolynomial::equal_up_to_units(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.normalized() == b.normalized();
}

QPoly LaurentPolynomial::to_qpoly() const {
    std::vector<mpq_class> c;
    for (auto& v : c_) c.emplace_back(v);
    return QPoly(c);
}

QPoly LaurentPolynomial::chebyshev_transform() const {
    if (c_.empty()) return QPoly();
    LaurentPolynomial s = normalized();
    if (!s.is_symmetric()) throw std::invalid_argument("chebyshev_transform: polynomial is not symmetric up to units");
    long n = s.max_exp();
    QPoly Tprev = QPoly::constant(1), Tcur = QPoly::x(), two_x = QPoly::constant(2) * QPoly::x();
    QPoly P = QPoly::constant(mpq_class(s.coeff(0)));
    for (long k = 1; k <= n; ++k) {
        if (k > 1) {
            QPoly next = two_x * Tcur - Tprev;
            Tprev = Tcur;
            Tcur = next;
        }
        P = P + QPoly::constant(mpq_class(2 * s.coeff(k))) * Tcur;
    }
    return P;
}

std::string LaurentPolynomial::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long k = max_exp(); k >= lo_; --k) {
        mpz_class v = coeff(k);
        if (v == 0) continue;
        if (!first) os << (v < 0 ? " - " : " + ");
        else if (v < 0) os << "-";
        mpz_class a = abs(v);
        if (k == 0 || a != 1) os << a.get_str();
        if (k != 0) os << "t";
        if (k != 0 && k != 1) os << "^" << k;
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------- Bezout

BezoutCertificate laurent_gcd_coprime(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.is_zero() || b.is_zero()) throw std::invalid_argument("laurent_gcd_coprime: zero input");
    BezoutCertificate cert;
    QPoly A = a.to_qpoly(), B = b.to_qpoly(), s, t;
    QPoly g = QPoly::ext_gcd(A, B, s, t);
    if (g.degree() > 0) return cert;

    mpz_class L = 1;
    for (auto& v : s.coeffs()) L = lcm(L, mpz_class(v.get_den()));
    for (auto& v : t.coeffs()) L = lcm(L, mpz_class(v.get_den()));
    std::vector<mpz_class> fs, gs;
    for (auto& v : s.coeffs()) fs.push_back(mpz_class(v * L));
    for (auto& v : t.coeffs()) gs.push_back(mpz_class(v * L));
    mpz_class content = L;
    for (auto& v : fs) content = gcd(content, v);
    for (auto& v : gs) content = gcd(content, v);
    for (auto& v : fs) v /= content;
    for (auto& v : gs) v /= content;

    // A = t^{-lo} a, so s*A = (s t^{-lo}) a
    cert.f = LaurentPolynomial(-a.min_exp(), fs);
    cert.g = LaurentPolynomial(-b.min_exp(), gs);
    cert.c = L / content;
    if (cert.f * a + cert.g * b != LaurentPolynomial(cert.c))
        throw std::logic_error("laurent_gcd_coprime: certificate failed verification");
    cert.coprime = true;
    return cert;
}

}  // namespace kc

namespace kc {

bool laurent_divide(const LaurentPolynomial& a, const LaurentPolynomial& b, LaurentPolynomial& q) {
    if (b.is_zero()) throw std::invalid_argument("laurent_divide: division by zero");
    if (a.is_zero()) {
        q = LaurentPolynomial();
        return true;
    }
    QPoly Q, R;
    QPoly::divmod(a.to_qpoly(), b.to_qpoly(), Q, R);
    if (!R.is_zero()) return false;
    std::vector<mpz_class> c;
    for (auto& v : Q.coeffs()) {
        if (v.get_den() != 1) return false;
        c.push_back(v.get_num());
    }
    q = LaurentPolynomial(a.min_exp() - b.min_exp(), c);
    return true;
}

}  // namespace kc
