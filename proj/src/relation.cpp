#include "knotcalc/relation.hpp"

#include <algorithm>
#include <sstream>

namespace kc {

namespace {

using Vec = std::vector<mpz_class>;

mpq_class dot(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
    mpq_class s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct GramSchmidt {
    std::vector<std::vector<mpq_class>> bstar;
    std::vector<std::vector<mpq_class>> mu;
    std::vector<mpq_class> norm2;

    explicit GramSchmidt(const std::vector<Vec>& b) {
        size_t n = b.size();
        bstar.assign(n, {});
        mu.assign(n, std::vector<mpq_class>(n, 0));
        norm2.assign(n, 0);
        for (size_t i = 0; i < n; ++i) {
            std::vector<mpq_class> v(b[i].begin(), b[i].end());
            std::vector<mpq_class> bi = v;
            for (size_t j = 0; j < i; ++j) {
                mu[i][j] = norm2[j] == 0 ? mpq_class(0) : dot(v, bstar[j]) / norm2[j];
                for (size_t k = 0; k < bi.size(); ++k) bi[k] -= mu[i][j] * bstar[j][k];
            }
            bstar[i] = bi;
            norm2[i] = dot(bi, bi);
        }
    }
};

mpz_class round_q(const mpq_class& q) {
    mpq_class h = q + mpq_class(1, 2);
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
    return f;
}

// floor(log2(1/w)) for w > 0
int bits_of_width(const mpq_class& w) {
    int b = 0;
    mpq_class x = w;
    while (x < 1) {
        x *= 2;
        ++b;
    }
    return b - 1;
}

int bit_length(const mpz_class& v) { return static_cast<int>(mpz_sizeinbase(v.get_mpz_t(), 2)); }

}  // namespace

void lll_reduce(std::vector<Vec>& b, const mpq_class& delta) {
    size_t n = b.size();
    if (n < 2) return;
    GramSchmidt gs(b);
    size_t k = 1;
    while (k < n) {
        for (size_t jj = k; jj-- > 0;) {
            mpz_class q = round_q(gs.mu[k][jj]);
            if (q == 0) continue;
            for (size_t c = 0; c < b[k].size(); ++c) b[k][c] -= q * b[jj][c];
            for (size_t l = 0; l <= jj; ++l) gs.mu[k][l] -= (l == jj ? mpq_class(1) : gs.mu[jj][l]) * q;
        }
        if (gs.norm2[k] >= (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.norm2[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gs = GramSchmidt(b);
            k = std::max<size_t>(k - 1, 1);
        }
    }
}

IntegerRelationResult integer_relation(const std::vector<RealInterval>& values, const mpz_class& bound,
                                       const mpq_class& delta) {
    IntegerRelationResult res;
    res.bound = bound;
    res.delta = delta;
    size_t n = values.size();
    if (n == 0) throw std::invalid_argument("integer_relation: empty input");
    if (bound < 1) throw std::invalid_argument("integer_relation: bound must be positive");

    int prec = values[0].precision();
    mpq_class wmax = 0;
    for (auto& v : values) {
        prec = std::min(prec, v.precision());
        wmax = std::max(wmax, v.width());
    }
    if (wmax > 0) prec = std::min(prec, bits_of_width(wmax));
    res.precision_bits = prec;
    int need = static_cast<int>(n) * bit_length(bound) + 32;
    if (prec < need) {
        std::ostringstream os;
        os << "integer_relation: " << prec << " bits available, " << need << " needed for " << n
           << " values with coefficient bound " << bound.get_str();
        throw PrecisionError(os.str());
    }

    // scale so that the rounding error per entry stays around one unit
    int scale_bits = prec - 2;
    mpz_class K = 1;
    K <<= scale_bits;
    std::vector<Vec> basis(n, Vec(n + 1, 0));
    for (size_t i = 0; i < n; ++i) {
        basis[i][i] = 1;
        basis[i][n] = round_q(values[i].midpoint() * K);
    }
    lll_reduce(basis, delta);

    std::vector<Vec> candidates;
    for (auto& row : basis) {
        Vec v(row.begin(), row.begin() + n);
        bool nonzero = false, within = true;
        for (auto& x : v) {
            if (x != 0) nonzero = true;
            if (abs(x) > bound) within = false;
        }
        if (!nonzero || !within) continue;
        RealInterval s = RealInterval::exact(0, prec);
        for (size_t i = 0; i < n; ++i) s = s + RealInterval::exact(mpq_class(v[i]), prec) * values[i];
        if (!s.contains_zero()) continue;
        for (auto& x : v)
            if (x != 0) {
                if (x < 0)
                    for (auto& y : v) y = -y;
                break;
            }
        candidates.push_back(v);
    }
    if (!candidates.empty()) {
        auto norm = [](const Vec& v) {
            mpz_class s = 0;
            for (auto& x : v) s += x * x;
            return s;
        };
        std::sort(candidates.begin(), candidates.end(), [&](const Vec& a, const Vec& b) {
            mpz_class na = norm(a), nb = norm(b);
            if (na != nb) return na < nb;
            return a > b;
        });
        res.found = true;
        res.relation = candidates.front();
        RealInterval s = RealInterval::exact(0, prec);
        for (size_t i = 0; i < n; ++i) s = s + RealInterval::exact(mpq_class(res.relation[i]), prec) * values[i];
        res.residual = s;
        return res;
    }

    // No short vector is a relation. Any relation v with |v_i| <= B maps to a lattice vector of
    // squared norm at most n B^2 + (n B (K w + 1/2))^2; the shortest lattice vector is at least
    // the smallest Gram-Schmidt norm of the reduced basis.
    GramSchmidt gs(basis);
    mpq_class minnorm = gs.norm2[0];
    for (auto& x : gs.norm2) minnorm = std::min(minnorm, x);
    mpq_class B(bound), tail = mpq_class(static_cast<long>(n)) * B * (mpq_class(K) * wmax + mpq_class(1, 2));
    mpq_class worst = mpq_class(static_cast<long>(n)) * B * B + tail * tail;
    res.lattice_certified = worst < minnorm;
    res.note = res.lattice_certified ? "no relation within bound (lattice bound)" : "none found (heuristic)";
    return res;
}

}  // namespace kc
