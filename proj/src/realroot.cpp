#include "knotcalc/realroot.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kc {

namespace {

std::vector<QPoly> sturm_chain(const QPoly& P) {
    std::vector<QPoly> s{P, P.derivative()};
    while (!s.back().is_zero() && s.back().degree() > 0) {
        QPoly q, r;
        QPoly::divmod(s[s.size() - 2], s.back(), q, r);
        if (r.is_zero()) break;
        s.push_back(-r);
    }
    return s;
}

int variations(const std::vector<QPoly>& chain, const mpq_class& x) {
    int v = 0, last = 0;
    for (auto& p : chain) {
        int s = p.sign_at(x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

}  // namespace

int sturm_count(const QPoly& P, const mpq_class& a, const mpq_class& b) {
    auto chain = sturm_chain(P);
    return variations(chain, a) - variations(chain, b);
}

AlgebraicReal AlgebraicReal::from_rational(const mpq_class& v) {
    AlgebraicReal r;
    r.poly_ = QPoly(std::vector<mpq_class>{-v, 1});
    r.lo_ = r.hi_ = v;
    r.rational_ = v;
    return r;
}

AlgebraicReal::AlgebraicReal(QPoly poly, mpq_class lo, mpq_class hi)
    : poly_(std::move(poly)), lo_(std::move(lo)), hi_(std::move(hi)) {
    if (poly_.degree() == 1) rational_ = -poly_.coeff(0) / poly_.coeff(1);
    else if (poly_.sign_at(hi_) == 0) rational_ = hi_;
    else if (poly_.sign_at(lo_) == 0) throw std::invalid_argument("AlgebraicReal: open end of the interval is a root");
    if (rational_) lo_ = hi_ = *rational_;
}

void AlgebraicReal::refine() {
    if (rational_) return;
    mpq_class m = (lo_ + hi_) / 2;
    int sm = poly_.sign_at(m);
    if (sm == 0) {
        rational_ = m;
        lo_ = hi_ = m;
        return;
    }
    if (sm == poly_.sign_at(lo_)) lo_ = m;
    else hi_ = m;
}

void AlgebraicReal::refine_until(const mpq_class& width) {
    while (!rational_ && hi_ - lo_ > width) refine();
}

RealInterval AlgebraicReal::enclosure(int precision) const {
    if (rational_) return RealInterval::exact(*rational_, precision);
    AlgebraicReal c = *this;
    mpq_class w(1);
    mpz_class den(1);
    den <<= precision + 4;
    w /= den;
    c.refine_until(w);
    return RealInterval(c.lower(), c.upper(), precision);
}

int AlgebraicReal::compare(AlgebraicReal& a, AlgebraicReal& b) {
    for (int it = 0; it < 100000; ++it) {
        if (a.is_rational() && b.is_rational()) return cmp(a.rational(), b.rational());
        if (a.upper() < b.lower()) return -1;
        if (b.upper() < a.lower()) return 1;
        if (a.is_rational() && b.poly().sign_at(a.rational()) == 0) return 0;
        if (b.is_rational() && a.poly().sign_at(b.rational()) == 0) return 0;
        if (a.upper() - a.lower() >= b.upper() - b.lower()) a.refine();
        else b.refine();
    }
    throw std::logic_error("AlgebraicReal::compare: values not separated (equal irrational roots?)");
}

bool AlgebraicReal::equal(AlgebraicReal a, AlgebraicReal b) {
    if (a.is_rational() && b.is_rational()) return a.rational() == b.rational();
    if (a.is_rational()) std::swap(a, b);
    if (b.is_rational()) {
        const mpq_class& v = b.rational();
        return a.poly().sign_at(v) == 0 && a.lower() < v && v <= a.upper();
    }
    QPoly g = QPoly::gcd(a.poly(), b.poly());
    if (g.degree() <= 0) return false;
    // each isolating interval holds at most one root of g
    if (sturm_count(g, a.lower(), a.upper()) == 0 || sturm_count(g, b.lower(), b.upper()) == 0) return false;
    for (;;) {
        if (a.upper() < b.lower() || b.upper() < a.lower()) return false;
        mpq_class lo = std::min(a.lower(), b.lower()), hi = std::max(a.upper(), b.upper());
        if (sturm_count(g, lo, hi) == 1) return true;
        a.refine();
        b.refine();
        if (a.is_rational() || b.is_rational()) return equal(a, b);
    }
}

std::string AlgebraicReal::str() const {
    if (rational_) return rational_->get_str();
    std::ostringstream os;
    os << "root of " << poly_.str() << " in (" << lo_.get_str() << ", " << hi_.get_str() << ")";
    return os.str();
}

std::vector<AlgebraicReal> isolate_real_roots(const QPoly& P0, const mpq_class& a, const mpq_class& b) {
    if (P0.is_zero()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
    std::vector<AlgebraicReal> out;
    QPoly P = P0.squarefree();
    if (P.degree() <= 0) return out;
    auto chain = sturm_chain(P);
    if (P.sign_at(a) == 0) out.push_back(AlgebraicReal::from_rational(a));

    struct Job { mpq_class lo, hi; };
    std::vector<Job> stack{{a, b}};
    std::vector<AlgebraicReal> found;
    while (!stack.empty()) {
        Job j = stack.back();
        stack.pop_back();
        int n = variations(chain, j.lo) - variations(chain, j.hi);
        if (n == 0) continue;
        if (P.sign_at(j.hi) == 0) {
            found.push_back(AlgebraicReal::from_rational(j.hi));
            --n;
            if (n == 0) continue;
            // shrink the right end off the exact root
            mpq_class d = (j.hi - j.lo) / 2;
            mpq_class h = j.hi - d;
            while (P.sign_at(h) == 0 || variations(chain, h) != variations(chain, j.hi) + 1) {
                d /= 2;
                h = j.hi - d;
            }
            j.hi = h;
        }
        if (n == 1) {
            if (P.sign_at(j.lo) == 0) {
                // the left end is a neighbouring root; move it inward
                mpq_class d = (j.hi - j.lo) / 2;
                mpq_class l = j.lo + d;
                while (P.sign_at(l) == 0 || variations(chain, l) != variations(chain, j.hi) + 1) {
                    d /= 2;
                    l = j.lo + d;
                }
                j.lo = l;
            }
            found.emplace_back(P, j.lo, j.hi);
            continue;
        }
        mpq_class m = (j.lo + j.hi) / 2;
        stack.push_back({j.lo, m});
        stack.push_back({m, j.hi});
    }
    for (auto& r : found) out.push_back(r);
    std::sort(out.begin(), out.end(), [](AlgebraicReal x, AlgebraicReal y) { return AlgebraicReal::compare(x, y) < 0; });
    return out;
}

std::vector<QPoly> coprime_base(const std::vector<QPoly>& polys) {
    std::vector<QPoly> L;
    for (auto& p : polys)
        if (!p.is_zero() && p.degree() > 0) L.push_back(p.squarefree());
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < L.size() && !changed; ++i)
            for (size_t j = i + 1; j < L.size() && !changed; ++j) {
                QPoly g = QPoly::gcd(L[i], L[j]);
                if (g.degree() <= 0) continue;
                QPoly qi, qj, r;
                QPoly::divmod(L[i], g, qi, r);
                QPoly::divmod(L[j], g, qj, r);
                std::vector<QPoly> next;
                for (size_t k = 0; k < L.size(); ++k)
                    if (k != i && k != j) next.push_back(L[k]);
                for (auto* p : {&qi, &qj, &g})
                    if (p->degree() > 0) next.push_back(p->monic());
                L = next;
                changed = true;
            }
    }
    return L;
}

}  // namespace kc
