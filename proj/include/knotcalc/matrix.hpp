#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <vector>

#include "knotcalc/laurent.hpp"

namespace kc {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<long>> rows);

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    bool square() const { return r_ == c_; }
    T& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const T& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    Matrix transpose() const {
        Matrix t(c_, r_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix p(a.r_, b.c_);
        for (size_t i = 0; i < a.r_; ++i)
            for (size_t k = 0; k < a.c_; ++k) {
                if (a(i, k) == 0) continue;
                for (size_t j = 0; j < b.c_; ++j) p(i, j) += a(i, k) * b(k, j);
            }
        return p;
    }
    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        Matrix s = a;
        for (size_t i = 0; i < s.a_.size(); ++i) s.a_[i] += b.a_[i];
        return s;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix s = a;
        for (size_t i = 0; i < s.a_.size(); ++i) s.a_[i] -= b.a_[i];
        return s;
    }
    Matrix operator-() const {
        Matrix s = *this;
        for (auto& v : s.a_) v = -v;
        return s;
    }
    friend Matrix operator*(const T& k, const Matrix& a) {
        Matrix s = a;
        for (auto& v : s.a_) v *= k;
        return s;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

    bool is_zero() const {
        for (auto& v : a_)
            if (v != 0) return false;
        return true;
    }

private:
    size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<long>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    for (auto& row : rows) {
        if (row.size() != c_) throw std::invalid_argument("Matrix: ragged initializer");
        for (long v : row) a_.push_back(T(v));
    }
}

using IntegerMatrix = Matrix<mpz_class>;
using RationalMatrix = Matrix<mpq_class>;

RationalMatrix to_rational(const IntegerMatrix& m);
// block sum diag(a, b)
IntegerMatrix direct_sum(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix kronecker(const IntegerMatrix& a, const IntegerMatrix& b);
std::string to_string(const IntegerMatrix& m);

mpz_class determinant(const IntegerMatrix& m);  // Bareiss, exact
// inverse of a nonsingular square rational matrix; throws if singular
RationalMatrix inverse(const RationalMatrix& m);
// signature (positive minus negative eigenvalue count) of a symmetric rational matrix
int signature(const RationalMatrix& sym);
int nullity(const RationalMatrix& m);

struct SmithDecomposition {
    std::vector<mpz_class> diagonal;  // min(rows, cols) entries, d_i | d_{i+1}, zeros last
    IntegerMatrix U, W;               // U * M * W = diag
};

SmithDecomposition smith_normal_form(const IntegerMatrix& M);

// Sylvester resultant of the ordinary polynomials obtained by shifting exponents to start at 0
mpz_class resultant(const LaurentPolynomial& a, const LaurentPolynomial& b);

}  // namespace kc
