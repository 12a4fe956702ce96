#include "knotcalc/covers.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace kc {

namespace {

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

mpz_class pos_mod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

bool is_integral(const RationalMatrix& m) {
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            if (m(i, j).get_den() != 1) return false;
    return true;
}

IntegerMatrix to_integer(const RationalMatrix& m) {
    IntegerMatrix z(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j).get_den() != 1) throw std::logic_error("expected an integral matrix");
            z(i, j) = m(i, j).get_num();
        }
    return z;
}

IntegerMatrix unimodular_inverse(const IntegerMatrix& m) {
    if (m.rows() == 0) return m;
    return to_integer(inverse(to_rational(m)));
}

ZVec mul(const IntegerMatrix& A, const ZVec& x) {
    ZVec y(A.rows(), 0);
    for (size_t i = 0; i < A.rows(); ++i)
        for (size_t j = 0; j < A.cols(); ++j)
            if (x[j] != 0) y[i] += A(i, j) * x[j];
    return y;
}

QVec mul(const RationalMatrix& A, const QVec& x) {
    QVec y(A.rows(), 0);
    for (size_t i = 0; i < A.rows(); ++i)
        for (size_t j = 0; j < A.cols(); ++j)
            if (x[j] != 0) y[i] += A(i, j) * x[j];
    return y;
}

ZVec column(const IntegerMatrix& A, size_t j) {
    ZVec c(A.rows());
    for (size_t i = 0; i < A.rows(); ++i) c[i] = A(i, j);
    return c;
}

ZVec unit(size_t n, size_t i) {
    ZVec e(n, 0);
    e[i] = 1;
    return e;
}

// upper triangular Hermite basis of the lattice spanned by `rows` (assumed of full rank k)
IntegerMatrix hermite_form(std::vector<ZVec> rows, size_t k) {
    IntegerMatrix H(k, k);
    for (size_t j = 0; j < k; ++j) {
        for (;;) {
            size_t best = rows.size();
            for (size_t i = j; i < rows.size(); ++i)
                if (rows[i][j] != 0 && (best == rows.size() || abs(rows[i][j]) < abs(rows[best][j]))) best = i;
            if (best == rows.size()) throw std::logic_error("hermite_form: lattice not of full rank");
            std::swap(rows[j], rows[best]);
            bool done = true;
            for (size_t i = j + 1; i < rows.size(); ++i) {
                if (rows[i][j] == 0) continue;
                mpz_class q = floor_div(rows[i][j], rows[j][j]);
                for (size_t c = j; c < k; ++c) rows[i][c] -= q * rows[j][c];
                if (rows[i][j] != 0) done = false;
            }
            if (done) break;
        }
        if (rows[j][j] < 0)
            for (auto& v : rows[j]) v = -v;
        for (size_t i = 0; i < j; ++i) {
            mpz_class q = floor_div(rows[i][j], rows[j][j]);
            if (q != 0)
                for (size_t c = j; c < k; ++c) rows[i][c] -= q * rows[j][c];
        }
        // drop rows that became zero
        rows.erase(std::remove_if(rows.begin() + j + 1, rows.end(),
                                  [](const ZVec& v) { return std::all_of(v.begin(), v.end(), [](const mpz_class& x) { return x == 0; }); }),
                   rows.end());
    }
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) H(i, j) = rows[i][j];
    return H;
}

bool lattice_contains(const IntegerMatrix& H, ZVec y) {
    size_t k = H.rows();
    for (size_t j = 0; j < k; ++j) {
        if (y[j] == 0) continue;
        if (!mpz_divisible_p(y[j].get_mpz_t(), H(j, j).get_mpz_t())) return false;
        mpz_class c = y[j] / H(j, j);
        for (size_t l = j; l < k; ++l) y[l] -= c * H(j, l);
    }
    return true;
}

std::vector<mpz_class> finite_invariants(const PresentedGroup& G) {
    if (!G.is_finite()) throw std::invalid_argument("group is infinite");
    return G.invariants();
}

IntegerMatrix block_shift(unsigned r) {
    IntegerMatrix C(r, r);
    for (unsigned j = 0; j < r; ++j) C((j + 1) % r, j) = 1;
    return C;
}

// multiplication by t on Z[t]/(1 + t + ... + t^{r-1}) in the basis 1, t, ..., t^{r-2}
IntegerMatrix companion_of_norm(unsigned r) {
    IntegerMatrix C(r - 1, r - 1);
    for (unsigned j = 0; j + 2 < r; ++j) C(j + 1, j) = 1;
    for (unsigned i = 0; i + 1 < r; ++i) C(i, r - 2) = -1;
    return C;
}

struct CoverData {
    IntegerMatrix P, deckP, T, deckT;
    bool finite = false;
    RationalMatrix linkP, linkT;
};

CoverData build_cover(const SeifertMatrix& S, unsigned r) {
    if (r < 2) throw std::invalid_argument("cover degree must be at least 2");
    const IntegerMatrix& V = S.matrix();
    size_t n = V.rows();
    CoverData d;
    IntegerMatrix Vt = V.transpose();
    d.P = kronecker(block_shift(r), Vt) - kronecker(IntegerMatrix::identity(r), V);
    d.deckP = kronecker(block_shift(r), IntegerMatrix::identity(n));
    if (n == 0) {
        d.finite = true;
        return d;
    }

    size_t m = n * (r - 1);
    d.T = IntegerMatrix(m, m);
    IntegerMatrix sym = V + Vt;
    for (unsigned b = 0; b + 1 < r; ++b)
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                d.T(b * n + i, b * n + j) = sym(i, j);
                if (b + 2 < r) {
                    d.T(b * n + i, (b + 1) * n + j) = -V(i, j);
                    d.T((b + 1) * n + i, b * n + j) = -Vt(i, j);
                }
            }
    IntegerMatrix Cn = companion_of_norm(r);
    IntegerMatrix Q = kronecker(Cn, Vt) - kronecker(IntegerMatrix::identity(r - 1), V);
    IntegerMatrix R(m, n * r), Phi(m, m);
    for (unsigned b = 0; b + 1 < r; ++b)
        for (size_t i = 0; i < n; ++i) {
            R(b * n + i, b * n + i) = 1;
            R(b * n + i, (r - 1) * n + i) = -1;
            for (unsigned c = b; c + 1 < r; ++c) Phi(b * n + i, c * n + i) = 1;
        }

    mpz_class detT = abs(determinant(d.T)), detQ = abs(determinant(Q)), detP = abs(determinant(d.P));
    mpz_class res = cover_order_by_resultant(S, r);
    if (!(detT == detQ && detQ == detP && detP == res))
        throw std::logic_error("cover presentations disagree on the order: circulant " + detP.get_str() + ", companion " +
                               detQ.get_str() + ", symmetric " + detT.get_str() + ", resultant " + res.get_str());
    if (detT == 0) return d;
    d.finite = true;

    RationalMatrix Qinv = inverse(to_rational(Q));
    if (!is_integral(Qinv * to_rational(Phi * d.T)) || !is_integral(Qinv * to_rational(R * d.P)))
        throw std::logic_error("cover presentations: comparison maps do not respect relations");
    IntegerMatrix PhiInv = unimodular_inverse(Phi);
    IntegerMatrix Psi = PhiInv * R;
    d.linkT = inverse(to_rational(d.T));
    d.linkP = to_rational(Psi.transpose()) * d.linkT * to_rational(Psi);
    d.deckT = PhiInv * kronecker(Cn, IntegerMatrix::identity(n)) * Phi;
    return d;
}

}  // namespace

mpq_class mod_one(const mpq_class& q) {
    mpz_class f = floor_div(q.get_num(), q.get_den());
    mpq_class r = q - mpq_class(f);
    r.canonicalize();
    return r;
}

// ---------------------------------------------------------------- PresentedGroup

PresentedGroup::PresentedGroup(IntegerMatrix presentation, std::optional<IntegerMatrix> deck,
                               std::optional<RationalMatrix> linking, unsigned deck_order)
    : P_(std::move(presentation)), deck_(std::move(deck)), L_(std::move(linking)), deck_order_(deck_order) {
    size_t R = P_.rows(), C = P_.cols();
    if (deck_ && (deck_->rows() != R || deck_->cols() != R)) throw std::invalid_argument("deck action has wrong size");
    if (L_ && (L_->rows() != R || L_->cols() != R)) throw std::invalid_argument("linking matrix has wrong size");
    if (R == 0) return;
    if (C == 0) {
        snf_.U = IntegerMatrix::identity(R);
        snf_.W = IntegerMatrix(0, 0);
    } else {
        snf_ = smith_normal_form(P_);
    }
    Uinv_ = unimodular_inverse(snf_.U);
    for (size_t i = 0; i < R; ++i) {
        mpz_class d = i < snf_.diagonal.size() ? mpz_class(abs(snf_.diagonal[i])) : mpz_class(0);
        if (d == 1) continue;
        inv_.push_back(d);
        inv_rows_.push_back(i);
    }
}

bool PresentedGroup::is_finite() const {
    return std::none_of(inv_.begin(), inv_.end(), [](const mpz_class& d) { return d == 0; });
}

mpz_class PresentedGroup::order() const {
    if (!is_finite()) return 0;
    mpz_class o = 1;
    for (auto& d : inv_) o *= d;
    return o;
}

std::string PresentedGroup::structure() const {
    if (inv_.empty()) return "0";
    std::ostringstream os;
    for (size_t i = 0; i < inv_.size(); ++i) {
        if (i) os << " + ";
        if (inv_[i] == 0)
            os << "Z";
        else
            os << "Z" << inv_[i].get_str();
    }
    return os.str();
}

ZVec PresentedGroup::to_snf(const ZVec& x) const {
    if (x.size() != generators()) throw std::invalid_argument("vector has wrong length");
    ZVec y;
    if (inv_.empty()) return y;
    ZVec u = mul(snf_.U, x);
    for (size_t k = 0; k < inv_.size(); ++k) {
        mpz_class v = u[inv_rows_[k]];
        y.push_back(inv_[k] == 0 ? v : pos_mod(v, inv_[k]));
    }
    return y;
}

ZVec PresentedGroup::from_snf(const ZVec& y) const {
    ZVec z(generators(), 0);
    for (size_t k = 0; k < inv_.size(); ++k) z[inv_rows_[k]] = y.at(k);
    return mul(Uinv_, z);
}

bool PresentedGroup::is_zero(const ZVec& x) const {
    for (auto& v : to_snf(x))
        if (v != 0) return false;
    return true;
}

mpq_class PresentedGroup::lambda(const ZVec& x, const ZVec& y) const {
    if (!L_) throw std::logic_error("group carries no linking form");
    mpq_class s = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < y.size(); ++j)
            if (y[j] != 0) s += mpq_class(x[i] * y[j]) * (*L_)(i, j);
    }
    return mod_one(s);
}

ZVec PresentedGroup::act(const ZVec& x) const {
    if (!deck_) throw std::logic_error("group carries no deck action");
    return mul(*deck_, x);
}

RationalMatrix PresentedGroup::gram_snf() const {
    size_t k = inv_.size();
    RationalMatrix G(k, k);
    std::vector<ZVec> f;
    for (size_t a = 0; a < k; ++a) f.push_back(from_snf(unit(k, a)));
    for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b) G(a, b) = lambda(f[a], f[b]);
    return G;
}

IntegerMatrix PresentedGroup::deck_snf() const {
    size_t k = inv_.size();
    IntegerMatrix A(k, k);
    for (size_t a = 0; a < k; ++a) {
        ZVec img = to_snf(act(from_snf(unit(k, a))));
        for (size_t b = 0; b < k; ++b) A(b, a) = img[b];
    }
    return A;
}

std::string PresentedGroup::check_deck() const {
    if (!deck_) return "no deck action";
    for (size_t j = 0; j < P_.cols(); ++j)
        if (!is_zero(act(column(P_, j)))) return "deck action does not preserve relation " + std::to_string(j);
    if (deck_order_ > 0)
        for (size_t i = 0; i < generators(); ++i) {
            ZVec x = unit(generators(), i);
            ZVec y = x;
            for (unsigned s = 0; s < deck_order_; ++s) y = act(y);
            for (size_t c = 0; c < x.size(); ++c) y[c] -= x[c];
            if (!is_zero(y)) return "t^" + std::to_string(deck_order_) + " is not the identity";
        }
    return "";
}

std::string PresentedGroup::check_linking() const {
    if (!L_) return "no linking form";
    if (!is_finite()) return "linking form on an infinite group";
    size_t n = generators();
    for (size_t j = 0; j < P_.cols(); ++j) {
        ZVec p = column(P_, j);
        for (size_t i = 0; i < n; ++i)
            if (lambda(p, unit(n, i)) != 0 || lambda(unit(n, i), p) != 0)
                return "linking form not well defined on relation " + std::to_string(j);
    }
    RationalMatrix G = gram_snf();
    size_t k = inv_.size();
    for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b)
            if (G(a, b) != G(b, a)) return "linking form not symmetric";
    if (k == 0) return "";
    // x -> lambda(x, -) injective iff the image of Z^k in (Z/N)^k has |G| elements
    mpz_class N = 1;
    for (auto& d : inv_) mpz_lcm(N.get_mpz_t(), N.get_mpz_t(), d.get_mpz_t());
    IntegerMatrix A(k, 2 * k);
    for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b) {
            mpq_class v = G(a, b) * mpq_class(N);
            A(b, a) = pos_mod(v.get_num(), N);
        }
    for (size_t b = 0; b < k; ++b) A(b, k + b) = N;
    SmithDecomposition s = smith_normal_form(A);
    mpz_class coker = 1;
    for (auto& d : s.diagonal) coker *= abs(d);
    mpz_class total;
    mpz_pow_ui(total.get_mpz_t(), N.get_mpz_t(), k);
    if (total / coker != order()) return "linking form is degenerate";
    return "";
}

std::string PresentedGroup::check_deck_invariance() const {
    if (!L_ || !deck_) return "needs both a linking form and a deck action";
    size_t k = inv_.size();
    for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b) {
            ZVec x = from_snf(unit(k, a)), y = from_snf(unit(k, b));
            if (lambda(act(x), act(y)) != lambda(x, y)) return "linking form is not deck invariant";
        }
    return "";
}

// ---------------------------------------------------------------- subgroups

Subgroup make_subgroup(const PresentedGroup& G, const std::vector<ZVec>& generators) {
    auto d = finite_invariants(G);
    size_t k = d.size();
    std::vector<ZVec> rows;
    Subgroup H;
    for (auto& g : generators) {
        ZVec y = G.to_snf(g);
        if (std::any_of(y.begin(), y.end(), [](const mpz_class& v) { return v != 0; })) {
            rows.push_back(y);
            H.generators.push_back(g);
        }
    }
    for (size_t i = 0; i < k; ++i) {
        ZVec e(k, 0);
        e[i] = d[i];
        rows.push_back(e);
    }
    H.hermite = k ? hermite_form(rows, k) : IntegerMatrix(0, 0);
    mpz_class index = 1;
    for (size_t i = 0; i < k; ++i) index *= H.hermite(i, i);
    H.order = G.order() / index;
    return H;
}

bool subgroup_contains(const PresentedGroup& G, const Subgroup& H, const ZVec& x) {
    return lattice_contains(H.hermite, G.to_snf(x));
}

GroupMetabolizer classify_subgroup(const PresentedGroup& G, const Subgroup& H) {
    GroupMetabolizer m;
    m.subgroup = H;
    m.half_order = H.order * H.order == G.order();
    std::vector<ZVec> gens;
    for (size_t i = 0; i < H.hermite.rows(); ++i) {
        ZVec row(H.hermite.cols());
        for (size_t j = 0; j < row.size(); ++j) row[j] = H.hermite(i, j);
        gens.push_back(G.from_snf(row));
    }
    if (G.linking()) {
        m.self_annihilating = true;
        for (size_t a = 0; a < gens.size() && m.self_annihilating; ++a)
            for (size_t b = a; b < gens.size(); ++b)
                if (G.lambda(gens[a], gens[b]) != 0) {
                    m.self_annihilating = false;
                    break;
                }
    }
    if (G.deck_action()) {
        m.invariant_under_deck = true;
        for (auto& g : gens)
            if (!subgroup_contains(G, H, G.act(g))) {
                m.invariant_under_deck = false;
                break;
            }
    }
    return m;
}

std::vector<GroupMetabolizer> enumerate_metabolizers(const PresentedGroup& G, bool require_deck_invariant,
                                                     const mpz_class& budget) {
    if (!G.linking()) throw std::invalid_argument("enumerate_metabolizers: group carries no linking form");
    if (require_deck_invariant && !G.deck_action())
        throw std::invalid_argument("enumerate_metabolizers: group carries no deck action");
    auto d = finite_invariants(G);
    mpz_class order = G.order();
    if (order > budget)
        throw BudgetError("group of order " + order.get_str() + " exceeds the enumeration budget " + budget.get_str());
    std::vector<GroupMetabolizer> out;
    if (!mpz_perfect_square_p(order.get_mpz_t())) return out;
    mpz_class index;
    mpz_sqrt(index.get_mpz_t(), order.get_mpz_t());
    size_t k = d.size();
    if (k == 0) {
        out.push_back(classify_subgroup(G, make_subgroup(G, {})));
        return out;
    }

    mpz_class examined = 0;
    IntegerMatrix H(k, k);
    // choose diagonal entries h_j | d_j from the last column backwards, then the entries above them
    std::function<void(size_t, const mpz_class&)> diag;
    std::function<void(size_t, size_t)> fill;
    auto finish = [&]() {
        if (++examined > budget) throw BudgetError("metabolizer enumeration exceeded the budget");
        for (size_t j = 0; j < k; ++j) {
            ZVec e(k, 0);
            e[j] = d[j];
            if (!lattice_contains(H, e)) return;
        }
        Subgroup S;
        std::vector<ZVec> gens;
        for (size_t i = 0; i < k; ++i) {
            ZVec row(k);
            for (size_t j = 0; j < k; ++j) row[j] = H(i, j);
            gens.push_back(G.from_snf(row));
        }
        S = make_subgroup(G, gens);
        if (!(S.hermite == H)) throw std::logic_error("enumerate_metabolizers: non-canonical candidate");
        auto m = classify_subgroup(G, S);
        if (!m.is_metabolizer()) return;
        if (require_deck_invariant && !m.invariant_under_deck) return;
        out.push_back(m);
    };
    // entries H(i, j), i < j, visited column by column
    fill = [&](size_t i, size_t j) {
        if (j == k) return finish();
        if (i == j) return fill(0, j + 1);
        for (mpz_class v = 0; v < H(j, j); ++v) {
            H(i, j) = v;
            fill(i + 1, j);
        }
        H(i, j) = 0;
    };
    diag = [&](size_t j, const mpz_class& remaining) {
        if (j == k) {
            if (remaining == 1) fill(0, 1);
            return;
        }
        for (mpz_class h = 1; h <= d[j]; ++h) {
            if (!mpz_divisible_p(d[j].get_mpz_t(), h.get_mpz_t())) continue;
            if (!mpz_divisible_p(remaining.get_mpz_t(), h.get_mpz_t())) continue;
            H(j, j) = h;
            diag(j + 1, remaining / h);
        }
    };
    diag(0, index);
    std::sort(out.begin(), out.end(), [](const GroupMetabolizer& a, const GroupMetabolizer& b) {
        const auto& x = a.subgroup.hermite;
        const auto& y = b.subgroup.hermite;
        for (size_t i = 0; i < x.rows(); ++i)
            for (size_t j = 0; j < x.cols(); ++j)
                if (x(i, j) != y(i, j)) return x(i, j) < y(i, j);
        return false;
    });
    return out;
}

// ---------------------------------------------------------------- covers

IntegerMatrix circulant_presentation_matrix(const IntegerMatrix& V, unsigned r) {
    return kronecker(block_shift(r), V.transpose()) - kronecker(IntegerMatrix::identity(r), V);
}

IntegerMatrix symmetric_presentation_matrix(const IntegerMatrix& V, unsigned r) {
    return build_cover(SeifertMatrix(V), r).T;
}

mpz_class cover_order_by_resultant(const SeifertMatrix& V, unsigned r) {
    if (r < 2) throw std::invalid_argument("cover degree must be at least 2");
    LaurentPolynomial nu(0, std::vector<mpz_class>(r, mpz_class(1)));
    return abs(resultant(alexander_polynomial_raw(V), nu));
}

PresentedGroup branched_cover_homology(const SeifertMatrix& V, unsigned r) {
    CoverData d = build_cover(V, r);
    std::optional<RationalMatrix> link;
    if (d.finite) link = V.size() > 0 ? d.linkP : RationalMatrix(0, 0);
    return PresentedGroup(d.P, d.deckP, link, r);
}

PresentedGroup symmetric_cover_presentation(const SeifertMatrix& V, unsigned r) {
    CoverData d = build_cover(V, r);
    if (!d.finite) throw std::invalid_argument("branched cover has infinite homology");
    if (V.size() == 0) return PresentedGroup(IntegerMatrix(0, 0), IntegerMatrix(0, 0), RationalMatrix(0, 0), r);
    PresentedGroup sym(d.T, d.deckT, d.linkT, r);
    PresentedGroup circ(d.P, d.deckP, d.linkP, r);
    if (sym.invariants() != circ.invariants())
        throw std::logic_error("symmetric presentation " + sym.structure() + " disagrees with circulant " + circ.structure());
    return sym;
}

GroupMetabolizer pi_r_projection(const ZVec& u, const PresentedGroup& cover) {
    size_t n = u.size();
    if (n == 0 || cover.generators() % n != 0) throw std::invalid_argument("pi_r_projection: size mismatch");
    size_t r = cover.generators() / n;
    std::vector<ZVec> gens;
    for (size_t j = 0; j < r; ++j) {
        ZVec x(cover.generators(), 0);
        for (size_t k = 0; k < n; ++k) x[j * n + k] = u[k];
        gens.push_back(x);
    }
    auto m = classify_subgroup(cover, make_subgroup(cover, gens));
    m.subgroup.generators = gens;
    return m;
}

GroupMetabolizer pi_r_projection(const ZVec& u, const SeifertMatrix& V, unsigned r) {
    if (u.size() != V.size()) throw std::invalid_argument("pi_r_projection: generator has wrong length");
    return pi_r_projection(u, branched_cover_homology(V, r));
}

// ---------------------------------------------------------------- rational module

IsometricStructure isometric_structure(const SeifertMatrix& V) {
    RationalMatrix v = to_rational(V.matrix());
    if (V.size() && determinant(V.matrix()) == 0)
        throw UnsupportedDecomposition("rational module model needs a nonsingular Seifert matrix");
    IsometricStructure s;
    if (V.size() == 0) return s;
    RationalMatrix vti = inverse(v.transpose());
    s.t = v * vti;
    s.form = vti;
    return s;
}

std::vector<QVec> span_basis(const std::vector<QVec>& vectors) {
    std::vector<QVec> rows = vectors;
    if (rows.empty()) return rows;
    size_t n = rows[0].size(), r = 0;
    for (size_t c = 0; c < n && r < rows.size(); ++c) {
        size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        mpq_class inv = 1 / rows[r][c];
        for (auto& v : rows[r]) v *= inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            mpq_class f = rows[i][c];
            for (size_t j = 0; j < n; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

bool same_span(const std::vector<QVec>& a, const std::vector<QVec>& b) { return span_basis(a) == span_basis(b); }

bool is_module_metabolizer(const IsometricStructure& S, const std::vector<QVec>& basis) {
    auto B = span_basis(basis);
    if (2 * B.size() != S.dim()) return false;
    for (auto& b : B) {
        auto ext = B;
        ext.push_back(mul(S.t, b));
        if (span_basis(ext).size() != B.size()) return false;
    }
    for (auto& x : B) {
        QVec fx = mul(S.form, x);
        for (auto& y : B) {
            mpq_class s = 0;
            for (size_t i = 0; i < y.size(); ++i) s += y[i] * fx[i];
            if (s != 0) return false;
        }
    }
    return true;
}

std::vector<ModuleMetabolizer> blanchfield_metabolizers_genus1(const SeifertMatrix& V,
                                                               const std::vector<std::string>& curve_labels) {
    auto mod = alexander_module_genus1(V, curve_labels);
    auto S = isometric_structure(V);
    // over Q the module is a sum of two non-isomorphic simple pieces; the only rank-one
    // submodules are the two summands
    std::vector<ModuleMetabolizer> out;
    for (const ModuleSummand* s : {&mod.first, &mod.second}) {
        QVec u;
        for (auto& c : s->generator) u.push_back(mpq_class(c));
        if (!is_module_metabolizer(S, {u})) continue;
        ModuleMetabolizer m;
        m.basis = span_basis({u});
        m.label = s->label;
        m.annihilator = s->relation;
        m.generator = s->generator;
        out.push_back(m);
    }
    return out;
}

namespace {

RationalMatrix evaluate_at(const LaurentPolynomial& p, const RationalMatrix& t) {
    size_t n = t.rows();
    RationalMatrix acc(n, n);
    if (p.is_zero()) return acc;
    RationalMatrix tinv = inverse(t);
    RationalMatrix power = RationalMatrix::identity(n);
    long lo = p.min_exp();
    for (long e = 0; e < -lo; ++e) power = power * tinv;
    for (long e = 0; e < lo; ++e) power = power * t;
    for (long e = lo; e <= p.max_exp(); ++e) {
        mpz_class c = p.coeff(e);
        if (c != 0) acc = acc + mpq_class(c) * power;
        power = power * t;
    }
    return acc;
}

RationalMatrix block_diag(const RationalMatrix& a, const RationalMatrix& b) {
    RationalMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

}  // namespace

SplitResult split_metabolizer(const SeifertMatrix& K, const SeifertMatrix& J, const std::vector<QVec>& P_L) {
    auto SK = isometric_structure(K), SJ = isometric_structure(J);
    IsometricStructure SL{block_diag(SK.t, SJ.t), block_diag(SK.form, SJ.form)};
    for (auto& v : P_L)
        if (v.size() != SL.dim()) throw std::invalid_argument("split_metabolizer: vector has wrong length");
    if (!is_module_metabolizer(SL, P_L)) throw std::invalid_argument("split_metabolizer: input is not a metabolizer");

    SplitResult out;
    LaurentPolynomial dK = alexander_polynomial(K), dJ = alexander_polynomial(J);
    out.bezout = laurent_gcd_coprime(dK, dJ);
    if (!out.bezout.coprime) throw std::invalid_argument("split_metabolizer: Alexander polynomials are not coprime");
    // c x = f dK x + g dJ x; g dJ / c projects onto the K summand along the J summand
    mpq_class cinv = 1 / mpq_class(out.bezout.c);
    RationalMatrix piK = cinv * evaluate_at(out.bezout.g * dJ, SL.t);
    RationalMatrix piJ = cinv * evaluate_at(out.bezout.f * dK, SL.t);
    size_t nk = SK.dim();
    std::vector<QVec> imK, imJ;
    for (auto& v : P_L) {
        QVec a = mul(piK, v), b = mul(piJ, v);
        for (size_t i = nk; i < a.size(); ++i)
            if (a[i] != 0) throw std::logic_error("split_metabolizer: projection left the K summand");
        for (size_t i = 0; i < nk; ++i)
            if (b[i] != 0) throw std::logic_error("split_metabolizer: projection left the J summand");
        imK.push_back(QVec(a.begin(), a.begin() + nk));
        imJ.push_back(QVec(b.begin() + nk, b.end()));
    }
    out.P_K = span_basis(imK);
    out.P_J = span_basis(imJ);
    // reassemble and verify
    std::vector<QVec> sum;
    for (auto& v : out.P_K) {
        QVec w(SL.dim(), 0);
        std::copy(v.begin(), v.end(), w.begin());
        sum.push_back(w);
    }
    for (auto& v : out.P_J) {
        QVec w(SL.dim(), 0);
        std::copy(v.begin(), v.end(), w.begin() + nk);
        sum.push_back(w);
    }
    if (!same_span(sum, P_L)) throw std::logic_error("split_metabolizer: pieces do not reassemble");
    if ((nk && !is_module_metabolizer(SK, out.P_K)) || (SJ.dim() && !is_module_metabolizer(SJ, out.P_J)))
        throw std::logic_error("split_metabolizer: a piece fails the order condition");
    return out;
}

// ---------------------------------------------------------------- surgery

SurgeryHomology surgery_homology(const IntegerMatrix& L) {
    if (!L.square() || !(L == L.transpose())) throw std::invalid_argument("linking matrix must be symmetric");
    SurgeryHomology s;
    mpz_class det = determinant(L);
    std::optional<RationalMatrix> form;
    if (det != 0 && L.rows() > 0) form = inverse(to_rational(L));
    s.group = PresentedGroup(L, std::nullopt, form);
    s.is_Z2_homology_sphere = mpz_odd_p(det.get_mpz_t()) != 0;
    return s;
}

IntegerMatrix satellite_linking_matrix(const IntegerMatrix& L, size_t component, long winding) {
    if (component >= L.rows()) throw std::invalid_argument("no such component");
    IntegerMatrix M = L;
    for (size_t j = 0; j < L.cols(); ++j) {
        M(component, j) *= winding;
        M(j, component) *= winding;
    }
    return M;
}

}  // namespace kc
