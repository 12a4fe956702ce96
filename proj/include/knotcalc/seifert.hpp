#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "knotcalc/interval.hpp"
#include "knotcalc/laurent.hpp"
#include "knotcalc/matrix.hpp"
#include "knotcalc/realroot.hpp"

namespace kc {

// Seifert form with V_ij = lk(a_i^+, a_j); det(V - V^T) = +-1 is checked on construction.
class SeifertMatrix {
public:
    SeifertMatrix() = default;  // unknot, 0x0
    explicit SeifertMatrix(IntegerMatrix V, std::string label = "");

    const IntegerMatrix& matrix() const { return V_; }
    const std::string& label() const { return label_; }
    size_t size() const { return V_.rows(); }
    size_t genus() const { return V_.rows() / 2; }

private:
    IntegerMatrix V_;
    std::string label_;
};

LaurentPolynomial alexander_polynomial(const SeifertMatrix& V);  // normalized
LaurentPolynomial alexander_polynomial_raw(const SeifertMatrix& V);  // det(V - t V^T)
SeifertMatrix connected_sum(const SeifertMatrix& a, const SeifertMatrix& b);
SeifertMatrix mirror_reverse(const SeifertMatrix& a);

// A point omega = ((1 - s^2) + 2is) / (1 + s^2) of the upper unit semicircle, s = tan(theta/2) > 0.
mpq_class cos_of_sample(const mpq_class& s);
// exact signature of (1 - omega) V + (1 - conj omega) V^T at the sample point s
int signature_at_sample(const IntegerMatrix& V, const mpq_class& s);
// sample parameter s with cos(theta(s)) strictly inside (lo, hi), -1 <= lo < hi <= 1
mpq_class sample_between(const mpq_class& lo, const mpq_class& hi);

struct SignatureConvention {
    enum class Mass { One, TwoPi } mass = Mass::One;
    bool jump_averaging = false;
    std::string name() const;
};

struct SignatureProfile {
    // cos(theta) of the breakpoints, decreasing (theta increasing in (0, pi])
    std::vector<AlgebraicReal> breakpoints;
    // values[j] on the open arc between breakpoints j-1 and j (arc 0 starts at theta = 0)
    std::vector<int> values;
    std::vector<mpq_class> samples;  // sample parameter s used for each arc

    // signature at cos(theta) = x; nullopt at a breakpoint unless jump averaging is on
    std::optional<mpq_class> value_at(const mpq_class& x, bool jump_averaging = false) const;
    int value_at_minus_one() const;  // sigma(-1) as the limit from the upper semicircle
    bool same_as(const SignatureProfile& other) const;
};

// generic construction: breakpoints from the unit-circle roots of `factors`, arc values from `sig`
SignatureProfile build_signature_profile(const std::vector<LaurentPolynomial>& factors,
                                         const std::function<int(const mpq_class&)>& sig);
SignatureProfile signature_profile(const SeifertMatrix& V);

// exact value: scale * (pi_coeff * pi + sum c_j * arccos(x_j)), scale = 1/pi (mass 1) or 2 (mass 2pi)
class SignatureIntegral {
public:
    SignatureIntegral() = default;
    static SignatureIntegral from_profile(const SignatureProfile& p, SignatureConvention conv);

    const SignatureConvention& convention() const { return conv_; }
    const mpq_class& pi_coefficient() const { return pi_coeff_; }
    const std::vector<std::pair<mpq_class, AlgebraicReal>>& acos_terms() const { return terms_; }

    bool is_exactly_zero() const { return pi_coeff_ == 0 && terms_.empty(); }
    // closed form is a rational number (mass 1) or rational multiple of pi (mass 2pi)
    bool is_rational_form() const { return terms_.empty(); }
    mpq_class rational_part() const;  // the rational (mass 1) or the pi coefficient (mass 2pi)

    RealInterval enclosure(int precision) const;
    // sign certified by doubling precision up to max_precision; 0 only if exactly zero
    std::optional<int> certified_sign(int start_precision = 64, int max_precision = 4096) const;

    SignatureIntegral operator+(const SignatureIntegral& o) const;
    SignatureIntegral operator-() const;
    SignatureIntegral scaled(const mpq_class& k) const;

    std::string exact_string() const;

private:
    void merge_terms();
    SignatureConvention conv_;
    mpq_class pi_coeff_ = 0;
    std::vector<std::pair<mpq_class, AlgebraicReal>> terms_;
};

SignatureIntegral signature_integral(const SeifertMatrix& V, SignatureConvention conv = {});

struct ModuleSummand {
    LaurentPolynomial relation;       // the summand is Z[t^{+-1}] / (relation)
    std::vector<mpz_class> generator;  // coordinates in the basis-curve basis
    std::string label;                 // curve label when the generator is a basis vector
};

struct AlexanderModuleGenus1 {
    ModuleSummand first, second;
};

struct UnsupportedDecomposition : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Module presented by the columns of t V^T - V. Throws UnsupportedDecomposition unless Delta is a
// product of two coprime linear factors with a basis-adapted splitting.
AlexanderModuleGenus1 alexander_module_genus1(const SeifertMatrix& V, const std::vector<std::string>& curve_labels = {});

}  // namespace kc
