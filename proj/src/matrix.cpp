#include "knotcalc/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace kc {

RationalMatrix to_rational(const IntegerMatrix& m) {
    RationalMatrix q(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) q(i, j) = m(i, j);
    return q;
}

IntegerMatrix direct_sum(const IntegerMatrix& a, const IntegerMatrix& b) {
    IntegerMatrix s(a.rows() + b.rows(), a.cols() + b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) s(i, j) = a(i, j);
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) s(a.rows() + i, a.cols() + j) = b(i, j);
    return s;
}

IntegerMatrix kronecker(const IntegerMatrix& a, const IntegerMatrix& b) {
    IntegerMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            for (size_t p = 0; p < b.rows(); ++p)
                for (size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
        }
    return k;
}

std::string to_string(const IntegerMatrix& m) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

mpz_class determinant(const IntegerMatrix& m) {
    if (!m.square()) throw std::invalid_argument("determinant: non-square matrix");
    size_t n = m.rows();
    if (n == 0) return 1;
    IntegerMatrix a = m;
    mpz_class prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            for (size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

RationalMatrix inverse(const RationalMatrix& m) {
    if (!m.square()) throw std::invalid_argument("inverse: non-square matrix");
    size_t n = m.rows();
    RationalMatrix a = m, inv = RationalMatrix::identity(n);
    for (size_t k = 0; k < n; ++k) {
        size_t p = k;
        while (p < n && a(p, k) == 0) ++p;
        if (p == n) throw std::domain_error("inverse: singular matrix");
        if (p != k)
            for (size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(p, j));
                std::swap(inv(k, j), inv(p, j));
            }
        mpq_class piv = a(k, k);
        for (size_t j = 0; j < n; ++j) {
            a(k, j) /= piv;
            inv(k, j) /= piv;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k) == 0) continue;
            mpq_class f = a(i, k);
            for (size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

int signature(const RationalMatrix& sym) {
    if (!sym.square()) throw std::invalid_argument("signature: non-square matrix");
    size_t n = sym.rows();
    RationalMatrix a = sym;
    auto swap_idx = [&](size_t i, size_t j) {
        for (size_t k = 0; k < n; ++k) std::swap(a(i, k), a(j, k));
        for (size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
    };
    int sig = 0;
    for (size_t k = 0; k < n; ++k) {
        size_t p = k;
        while (p < n && a(p, p) == 0) ++p;
        if (p == n) {
            // all remaining diagonal entries vanish; create one from an off-diagonal entry
            size_t i = n, j = n;
            for (size_t x = k; x < n && i == n; ++x)
                for (size_t y = x + 1; y < n; ++y)
                    if (a(x, y) != 0) {
                        i = x;
                        j = y;
                        break;
                    }
            if (i == n) break;
            for (size_t c = 0; c < n; ++c) a(i, c) += a(j, c);
            for (size_t r = 0; r < n; ++r) a(r, i) += a(r, j);
            p = i;
        }
        if (p != k) swap_idx(p, k);
        mpq_class piv = a(k, k);
        sig += sgn(piv);
        for (size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            mpq_class f = a(i, k) / piv;
            for (size_t c = k; c < n; ++c) a(i, c) -= f * a(k, c);
            for (size_t r = k; r < n; ++r) a(r, i) -= f * a(r, k);
        }
    }
    return sig;
}

int nullity(const RationalMatrix& m) {
    RationalMatrix a = m;
    size_t rank = 0;
    for (size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
        size_t p = rank;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        for (size_t j = 0; j < a.cols(); ++j) std::swap(a(rank, j), a(p, j));
        for (size_t i = rank + 1; i < a.rows(); ++i) {
            if (a(i, c) == 0) continue;
            mpq_class f = a(i, c) / a(rank, c);
            for (size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(rank, j);
        }
        ++rank;
    }
    return static_cast<int>(a.cols() - rank);
}

// ---------------------------------------------------------------- Smith

namespace {

struct SnfWork {
    IntegerMatrix A, U, W;
    void swap_rows(size_t i, size_t j) {
        if (i == j) return;
        for (size_t k = 0; k < A.cols(); ++k) std::swap(A(i, k), A(j, k));
        for (size_t k = 0; k < U.cols(); ++k) std::swap(U(i, k), U(j, k));
    }
    void swap_cols(size_t i, size_t j) {
        if (i == j) return;
        for (size_t k = 0; k < A.rows(); ++k) std::swap(A(k, i), A(k, j));
        for (size_t k = 0; k < W.rows(); ++k) std::swap(W(k, i), W(k, j));
    }
    // row_i += f * row_j
    void add_row(size_t i, size_t j, const mpz_class& f) {
        for (size_t k = 0; k < A.cols(); ++k) A(i, k) += f * A(j, k);
        for (size_t k = 0; k < U.cols(); ++k) U(i, k) += f * U(j, k);
    }
    void add_col(size_t i, size_t j, const mpz_class& f) {
        for (size_t k = 0; k < A.rows(); ++k) A(k, i) += f * A(k, j);
        for (size_t k = 0; k < W.rows(); ++k) W(k, i) += f * W(k, j);
    }
    void negate_row(size_t i) {
        for (size_t k = 0; k < A.cols(); ++k) A(i, k) = -A(i, k);
        for (size_t k = 0; k < U.cols(); ++k) U(i, k) = -U(i, k);
    }
};

}  // namespace

SmithDecomposition smith_normal_form(const IntegerMatrix& M) {
    SnfWork w{M, IntegerMatrix::identity(M.rows()), IntegerMatrix::identity(M.cols())};
    size_t R = M.rows(), C = M.cols(), n = std::min(R, C);
    for (size_t t = 0; t < n; ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block becomes the pivot
            size_t pi = R, pj = C;
            for (size_t i = t; i < R; ++i)
                for (size_t j = t; j < C; ++j)
                    if (w.A(i, j) != 0 && (pi == R || mpz_cmpabs(w.A(i, j).get_mpz_t(), w.A(pi, pj).get_mpz_t()) < 0)) {
                        pi = i;
                        pj = j;
                    }
            if (pi == R) break;
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            bool dirty = false;
            for (size_t i = t + 1; i < R; ++i) {
                if (w.A(i, t) == 0) continue;
                mpz_class q = w.A(i, t) / w.A(t, t);
                w.add_row(i, t, -q);
                if (w.A(i, t) != 0) dirty = true;
            }
            for (size_t j = t + 1; j < C; ++j) {
                if (w.A(t, j) == 0) continue;
                mpz_class q = w.A(t, j) / w.A(t, t);
                w.add_col(j, t, -q);
                if (w.A(t, j) != 0) dirty = true;
            }
            if (dirty) continue;
            size_t bad = R;
            for (size_t i = t + 1; i < R && bad == R; ++i)
                for (size_t j = t + 1; j < C; ++j)
                    if (!mpz_divisible_p(w.A(i, j).get_mpz_t(), w.A(t, t).get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == R) break;
            w.add_row(t, bad, 1);
        }
        if (w.A(t, t) < 0) w.negate_row(t);
    }
    SmithDecomposition d;
    for (size_t i = 0; i < n; ++i) d.diagonal.push_back(w.A(i, i));
    d.U = std::move(w.U);
    d.W = std::move(w.W);
    return d;
}

// ---------------------------------------------------------------- resultant

mpz_class resultant(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.is_zero() || b.is_zero()) throw std::invalid_argument("resultant: zero input");
    long m = a.span(), n = b.span();
    size_t N = static_cast<size_t>(m + n);
    if (N == 0) return 1;
    IntegerMatrix S(N, N);
    // coefficients from highest degree down
    for (long i = 0; i < n; ++i)
        for (long k = 0; k <= m; ++k) S(i, i + k) = a.coeff(a.max_exp() - k);
    for (long i = 0; i < m; ++i)
        for (long k = 0; k <= n; ++k) S(n + i, i + k) = b.coeff(b.max_exp() - k);
    return determinant(S);
}

}  // namespace kc
