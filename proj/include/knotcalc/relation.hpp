#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "knotcalc/interval.hpp"

namespace kc {

struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// LLL reduction of the rows of `basis` (exact rational Gram-Schmidt), in place
void lll_reduce(std::vector<std::vector<mpz_class>>& basis, const mpq_class& delta);

struct IntegerRelationResult {
    bool found = false;
    std::vector<mpz_class> relation;  // sign-normalized: first nonzero entry positive
    RealInterval residual;            // enclosure of sum v_i x_i when found
    int precision_bits = 0;           // bits of the values actually used
    mpz_class bound;
    mpq_class delta;
    // when nothing was found: lattice argument excluding all relations within the bound
    bool lattice_certified = false;
    std::string note;
};

// Looks for an integer vector v with |v_i| <= bound and sum v_i x_i = 0 (the enclosure of the
// sum must contain 0). "none found" is heuristic unless lattice_certified is set.
// Throws PrecisionError when the enclosures are too wide for the requested bound.
IntegerRelationResult integer_relation(const std::vector<RealInterval>& values, const mpz_class& bound,
                                       const mpq_class& delta = mpq_class(99, 100));

}  // namespace kc
