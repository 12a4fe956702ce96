#include "knotcalc/seifert.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kc {

SeifertMatrix::SeifertMatrix(IntegerMatrix V, std::string label) : V_(std::move(V)), label_(std::move(label)) {
    if (!V_.square() || V_.rows() % 2 != 0) throw std::invalid_argument("SeifertMatrix: must be square of even size");
    mpz_class d = determinant(V_ - V_.transpose());
    if (abs(d) != 1)
        throw std::invalid_argument("SeifertMatrix: det(V - V^T) = " + d.get_str() + ", expected +-1");
}

LaurentPolynomial alexander_polynomial_raw(const SeifertMatrix& S) {
    const IntegerMatrix& V = S.matrix();
    size_t n = V.rows();
    IntegerMatrix Vt = V.transpose();
    // det(V - t V^T) has degree <= n; interpolate from t = 0..n
    std::vector<mpq_class> xs, ys;
    for (size_t k = 0; k <= n; ++k) {
        mpz_class t(static_cast<long>(k));
        xs.emplace_back(t);
        ys.emplace_back(determinant(V - t * Vt));
    }
    QPoly P;
    for (size_t i = 0; i <= n; ++i) {
        QPoly L = QPoly::constant(ys[i]);
        for (size_t j = 0; j <= n; ++j) {
            if (j == i) continue;
            L = L * QPoly(std::vector<mpq_class>{-xs[j] / (xs[i] - xs[j]), 1 / (xs[i] - xs[j])});
        }
        P = P + L;
    }
    std::vector<mpz_class> c;
    for (auto& v : P.coeffs()) {
        if (v.get_den() != 1) throw std::logic_error("alexander_polynomial: non-integral interpolation");
        c.push_back(v.get_num());
    }
    return LaurentPolynomial(0, c);
}

LaurentPolynomial alexander_polynomial(const SeifertMatrix& V) { return alexander_polynomial_raw(V).normalized(); }

SeifertMatrix connected_sum(const SeifertMatrix& a, const SeifertMatrix& b) {
    std::string label;
    if (!a.label().empty() || !b.label().empty()) label = a.label() + " # " + b.label();
    return SeifertMatrix(direct_sum(a.matrix(), b.matrix()), label);
}

SeifertMatrix mirror_reverse(const SeifertMatrix& a) {
    return SeifertMatrix(-a.matrix().transpose(), a.label().empty() ? "" : "-(" + a.label() + ")");
}

// ---------------------------------------------------------------- signatures

mpq_class cos_of_sample(const mpq_class& s) { return (1 - s * s) / (1 + s * s); }

int signature_at_sample(const IntegerMatrix& V, const mpq_class& s) {
    size_t n = V.rows();
    if (n == 0) return 0;
    // (1 - omega) is a positive multiple of (s - i), so the form is s(V + V^T) + i(V^T - V)
    IntegerMatrix Vt = V.transpose();
    RationalMatrix A = to_rational(V + Vt), B = to_rational(Vt - V);
    RationalMatrix M(2 * n, 2 * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            M(i, j) = s * A(i, j);
            M(n + i, n + j) = s * A(i, j);
            M(i, n + j) = -B(i, j);
            M(n + i, j) = B(i, j);
        }
    return signature(M) / 2;
}

mpq_class sample_between(const mpq_class& lo, const mpq_class& hi) {
    if (!(lo < hi) || lo < -1 || hi > 1)
        throw std::invalid_argument("sample_between: bad interval (" + lo.get_str() + ", " + hi.get_str() + ")");
    auto inside = [&](const mpq_class& s) {
        mpq_class x = cos_of_sample(s);
        return lo < x && x < hi;
    };
    // cos_of_sample decreases from 1 (s = 0) to -1 (s -> infinity)
    mpq_class a = 0, b = 1;
    while (cos_of_sample(b) >= hi) {
        a = b;
        b *= 2;
    }
    if (inside(b)) return b;
    for (;;) {
        mpq_class m = (a + b) / 2;
        if (inside(m)) return m;
        if (cos_of_sample(m) >= hi) a = m;
        else b = m;
    }
}

std::string SignatureConvention::name() const {
    std::string s = mass == Mass::One ? "mass-1" : "mass-2pi";
    s += jump_averaging ? ",jump-averaging" : ",no-jump-averaging";
    return s;
}

std::optional<mpq_class> SignatureProfile::value_at(const mpq_class& x, bool jump_averaging) const {
    if (x > 1 || x < -1) throw std::invalid_argument("SignatureProfile::value_at: |cos| > 1");
    if (x == 1) return mpq_class(0);
    auto px = AlgebraicReal::from_rational(x);
    size_t above = 0;
    for (size_t j = 0; j < breakpoints.size(); ++j) {
        if (AlgebraicReal::equal(breakpoints[j], px)) {
            if (!jump_averaging) return std::nullopt;
            mpq_class avg(values[j] + values[j + 1], 2);
            avg.canonicalize();
            return avg;
        }
        AlgebraicReal b = breakpoints[j];
        if (AlgebraicReal::compare(b, px) > 0) ++above;
    }
    return mpq_class(values[above]);
}

int SignatureProfile::value_at_minus_one() const { return values.back(); }

bool SignatureProfile::same_as(const SignatureProfile& o) const {
    if (values != o.values || breakpoints.size() != o.breakpoints.size()) return false;
    for (size_t j = 0; j < breakpoints.size(); ++j)
        if (!AlgebraicReal::equal(breakpoints[j], o.breakpoints[j])) return false;
    return true;
}

SignatureProfile build_signature_profile(const std::vector<LaurentPolynomial>& factors,
                                         const std::function<int(const mpq_class&)>& sig) {
    std::vector<QPoly> polys;
    for (auto& f : factors)
        if (!f.is_zero() && f.span() > 0) polys.push_back(f.chebyshev_transform());
    std::vector<AlgebraicReal> roots;
    for (auto& q : coprime_base(polys))
        for (auto& r : isolate_real_roots(q, -1, 1))
            if (!(r.is_rational() && r.rational() == 1)) roots.push_back(r);
    std::sort(roots.begin(), roots.end(), [](AlgebraicReal a, AlgebraicReal b) { return AlgebraicReal::compare(a, b) > 0; });
    // separate isolating intervals from each other and from the ends so rational gaps exist
    for (auto& r : roots) {
        while (!(r.upper() < 1)) r.refine();
        while (!r.is_rational() && !(r.lower() > -1)) r.refine();
    }
    for (size_t j = 0; j + 1 < roots.size(); ++j)
        while (!(roots[j + 1].upper() < roots[j].lower())) {
            roots[j].refine();
            roots[j + 1].refine();
        }

    SignatureProfile p;
    p.breakpoints = roots;
    size_t n = roots.size();
    for (size_t j = 0; j <= n; ++j) {
        mpq_class hi = j == 0 ? mpq_class(1) : roots[j - 1].lower();
        mpq_class lo = j == n ? mpq_class(-1) : roots[j].upper();
        if (j == n && n > 0 && roots[n - 1].is_rational() && roots[n - 1].rational() == -1) {
            // breakpoint at theta = pi: the arc beyond it is the reflection of the previous one
            p.values.push_back(p.values.back());
            p.samples.push_back(p.samples.back());
            continue;
        }
        mpq_class s = sample_between(lo, hi);
        p.samples.push_back(s);
        p.values.push_back(sig(s));
    }
    return p;
}

SignatureProfile signature_profile(const SeifertMatrix& V) {
    const IntegerMatrix& M = V.matrix();
    return build_signature_profile({alexander_polynomial(V)}, [&](const mpq_class& s) { return signature_at_sample(M, s); });
}

// ---------------------------------------------------------------- integrals

namespace {

// arccos(x) / pi for the rationals where it is rational
std::optional<mpq_class> special_angle(const mpq_class& x) {
    if (x == 1) return mpq_class(0);
    if (x == mpq_class(1, 2)) return mpq_class(1, 3);
    if (x == 0) return mpq_class(1, 2);
    if (x == mpq_class(-1, 2)) return mpq_class(2, 3);
    if (x == -1) return mpq_class(1);
    return std::nullopt;
}

std::string term_string(const mpq_class& c, const std::string& body, bool first) {
    std::ostringstream os;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    mpq_class a = abs(c);
    if (a != 1) os << a.get_str() << "*";
    os << body;
    return os.str();
}

}  // namespace

SignatureIntegral SignatureIntegral::from_profile(const SignatureProfile& p, SignatureConvention conv) {
    SignatureIntegral I;
    I.conv_ = conv;
    size_t n = p.breakpoints.size();
    I.pi_coeff_ = p.values[n];
    for (size_t j = 0; j < n; ++j) {
        mpq_class c = p.values[j] - p.values[j + 1];
        if (c == 0) continue;
        I.terms_.emplace_back(c, p.breakpoints[j]);
    }
    I.merge_terms();
    return I;
}

void SignatureIntegral::merge_terms() {
    std::vector<std::pair<mpq_class, AlgebraicReal>> out;
    for (auto& [c, x] : terms_) {
        if (x.is_rational()) {
            if (auto k = special_angle(x.rational())) {
                pi_coeff_ += c * *k;
                continue;
            }
        }
        bool merged = false;
        for (auto& [c2, x2] : out)
            if (AlgebraicReal::equal(x, x2)) {
                c2 += c;
                merged = true;
                break;
            }
        if (!merged) out.emplace_back(c, x);
    }
    std::erase_if(out, [](auto& t) { return t.first == 0; });
    std::sort(out.begin(), out.end(), [](auto a, auto b) { return AlgebraicReal::compare(a.second, b.second) > 0; });
    terms_ = out;
}

mpq_class SignatureIntegral::rational_part() const {
    if (conv_.mass == SignatureConvention::Mass::One) return pi_coeff_;
    return 2 * pi_coeff_;
}

RealInterval SignatureIntegral::enclosure(int precision) const {
    int p = precision + 16;
    RealInterval pi = RealInterval::pi(p);
    RealInterval I = RealInterval::exact(pi_coeff_, p) * pi;
    for (auto& [c, x] : terms_) I = I + RealInterval::exact(c, p) * RealInterval::acos(x.enclosure(p));
    if (conv_.mass == SignatureConvention::Mass::One) I = I / pi;
    else I = RealInterval::exact(2, p) * I;
    return RealInterval(I.lower(), I.upper(), precision);
}

std::optional<int> SignatureIntegral::certified_sign(int start_precision, int max_precision) const {
    if (is_exactly_zero()) return 0;
    for (int p = start_precision; p <= max_precision; p *= 2) {
        int s = enclosure(p).certain_sign();
        if (s != 0) return s;
    }
    return std::nullopt;
}

SignatureIntegral SignatureIntegral::operator+(const SignatureIntegral& o) const {
    if (conv_.mass != o.conv_.mass) throw std::invalid_argument("SignatureIntegral: convention mismatch");
    SignatureIntegral r = *this;
    r.pi_coeff_ += o.pi_coeff_;
    for (auto& t : o.terms_) r.terms_.push_back(t);
    r.merge_terms();
    return r;
}

SignatureIntegral SignatureIntegral::operator-() const { return scaled(-1); }

SignatureIntegral SignatureIntegral::scaled(const mpq_class& k) const {
    SignatureIntegral r = *this;
    r.pi_coeff_ *= k;
    for (auto& t : r.terms_) t.first *= k;
    r.merge_terms();
    return r;
}

std::string SignatureIntegral::exact_string() const {
    bool one = conv_.mass == SignatureConvention::Mass::One;
    mpq_class scale = one ? mpq_class(1) : mpq_class(2);
    std::ostringstream os;
    bool first = true;
    if (pi_coeff_ != 0 || terms_.empty()) {
        mpq_class c = scale * pi_coeff_;
        if (one) os << c.get_str();
        else os << (c == 0 ? std::string("0") : term_string(c, "pi", true));
        first = false;
    }
    for (auto& [c, x] : terms_) {
        std::string body = "arccos(" + x.str() + ")";
        if (one) body += "/pi";
        os << term_string(scale * c, body, first);
        first = false;
    }
    return os.str();
}

SignatureIntegral signature_integral(const SeifertMatrix& V, SignatureConvention conv) {
    return SignatureIntegral::from_profile(signature_profile(V), conv);
}

// ---------------------------------------------------------------- genus-one module

namespace {

std::vector<mpz_class> primitive_kernel(const RationalMatrix& M) {
    mpq_class a = M(0, 0), b = M(0, 1);
    if (a == 0 && b == 0) {
        a = M(1, 0);
        b = M(1, 1);
    }
    if (a == 0 && b == 0) throw UnsupportedDecomposition("alexander_module_genus1: degenerate adjugate");
    mpq_class x = b, y = -a;
    mpz_class L = lcm(mpz_class(x.get_den()), mpz_class(y.get_den()));
    mpz_class u = mpz_class(x * L), v = mpz_class(y * L);
    mpz_class g = gcd(u, v);
    u /= g;
    v /= g;
    if (u < 0 || (u == 0 && v < 0)) {
        u = -u;
        v = -v;
    }
    return {u, v};
}

}  // namespace

AlexanderModuleGenus1 alexander_module_genus1(const SeifertMatrix& S, const std::vector<std::string>& labels) {
    if (S.size() != 2) throw UnsupportedDecomposition("alexander_module_genus1: Seifert matrix must be 2x2");
    LaurentPolynomial delta = alexander_polynomial_raw(S);
    if (delta.span() != 2) throw UnsupportedDecomposition("alexander_module_genus1: Alexander polynomial is not quadratic");
    mpz_class a = delta.coeff(delta.min_exp() + 2), b = delta.coeff(delta.min_exp() + 1), c = delta.coeff(delta.min_exp());
    mpz_class disc = b * b - 4 * a * c;
    if (disc <= 0 || !mpz_perfect_square_p(disc.get_mpz_t()))
        throw UnsupportedDecomposition("alexander_module_genus1: Alexander polynomial " + delta.normalized().str() +
                                       " has no two distinct rational roots");
    mpz_class sq = sqrt(disc);
    mpq_class roots[2] = {mpq_class(-b + sq, 2 * a), mpq_class(-b - sq, 2 * a)};
    for (auto& r : roots) r.canonicalize();
    LaurentPolynomial fac[2];
    for (int k = 0; k < 2; ++k) fac[k] = LaurentPolynomial(0, {-roots[k].get_num(), roots[k].get_den()});

    const IntegerMatrix& V = S.matrix();
    IntegerMatrix Vt = V.transpose();
    auto entry = [&](size_t i, size_t j) { return LaurentPolynomial(0, {-V(i, j), Vt(i, j)}); };  // t V^T - V
    LaurentPolynomial A[2][2] = {{entry(0, 0), entry(0, 1)}, {entry(1, 0), entry(1, 1)}};
    LaurentPolynomial adj[2][2] = {{A[1][1], -A[0][1]}, {-A[1][0], A[0][0]}};

    ModuleSummand sm[2];
    for (int k = 0; k < 2; ++k) {
        // generator killed by fac[k]: adj(A) u vanishes at the root of the other factor
        const mpq_class& t0 = roots[1 - k];
        RationalMatrix M(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) M(i, j) = adj[i][j].eval(t0);
        sm[k].relation = fac[k];
        sm[k].generator = primitive_kernel(M);
    }
    const auto &u = sm[0].generator, &v = sm[1].generator;
    mpz_class det = u[0] * v[1] - u[1] * v[0];
    if (abs(det) != 1) throw UnsupportedDecomposition("alexander_module_genus1: summand generators do not form a basis");
    // B = [u v]^{-1} A; its rows must be divisible by the respective factors
    mpz_class inv[2][2] = {{v[1] * det, -v[0] * det}, {-u[1] * det, u[0] * det}};
    for (int r = 0; r < 2; ++r)
        for (int j = 0; j < 2; ++j) {
            LaurentPolynomial Brj = LaurentPolynomial(inv[r][0]) * A[0][j] + LaurentPolynomial(inv[r][1]) * A[1][j], q;
            if (!laurent_divide(Brj, fac[r], q))
                throw UnsupportedDecomposition("alexander_module_genus1: module does not split along the factors");
        }
    for (auto& s : sm) {
        for (size_t i = 0; i < 2; ++i)
            if (s.generator[i] == 1 && s.generator[1 - i] == 0 && i < labels.size()) s.label = labels[i];
    }
    AlexanderModuleGenus1 out{sm[0], sm[1]};
    bool swap = sm[1].generator == std::vector<mpz_class>{1, 0} ||
                (sm[0].generator != std::vector<mpz_class>{1, 0} && sm[1].relation.str() < sm[0].relation.str());
    if (swap) std::swap(out.first, out.second);
    return out;
}

}  // namespace kc
