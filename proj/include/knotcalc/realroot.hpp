#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "knotcalc/interval.hpp"
#include "knotcalc/laurent.hpp"

namespace kc {

// A real root of a squarefree rational polynomial, held by an isolating interval
// (lo, hi) that contains exactly one root; `rational` is set once the root is known exactly.
class AlgebraicReal {
public:
    AlgebraicReal() = default;
    static AlgebraicReal from_rational(const mpq_class& v);
    AlgebraicReal(QPoly poly, mpq_class lo, mpq_class hi);

    const QPoly& poly() const { return poly_; }
    bool is_rational() const { return rational_.has_value(); }
    const mpq_class& rational() const { return *rational_; }
    mpq_class lower() const { return rational_ ? *rational_ : lo_; }
    mpq_class upper() const { return rational_ ? *rational_ : hi_; }

    void refine();
    void refine_until(const mpq_class& width);
    RealInterval enclosure(int precision) const;

    // exact comparison; the two values must be distinct unless both rational
    static int compare(AlgebraicReal& a, AlgebraicReal& b);
    static bool equal(AlgebraicReal a, AlgebraicReal b);

    std::string str() const;

private:
    QPoly poly_;
    mpq_class lo_, hi_;
    std::optional<mpq_class> rational_;
};

// number of distinct real roots of squarefree P in (a, b]
int sturm_count(const QPoly& P, const mpq_class& a, const mpq_class& b);

// all roots of P (any nonzero polynomial) in the closed interval [a, b], sorted increasingly
std::vector<AlgebraicReal> isolate_real_roots(const QPoly& P, const mpq_class& a, const mpq_class& b);

// split a family of polynomials into pairwise coprime squarefree factors with the same root set
std::vector<QPoly> coprime_base(const std::vector<QPoly>& polys);

}  // namespace kc
