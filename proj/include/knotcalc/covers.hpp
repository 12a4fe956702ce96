#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "knotcalc/laurent.hpp"
#include "knotcalc/matrix.hpp"
#include "knotcalc/seifert.hpp"

namespace kc {

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using ZVec = std::vector<mpz_class>;

// Finitely generated abelian group coker(P): generators e_1..e_n, relations = columns of P.
// Optionally carries the action of t on generators and a Q/Z-valued form x^T L y mod 1.
class PresentedGroup {
public:
    PresentedGroup() = default;
    explicit PresentedGroup(IntegerMatrix presentation, std::optional<IntegerMatrix> deck = std::nullopt,
                            std::optional<RationalMatrix> linking = std::nullopt, unsigned deck_order = 0);

    const IntegerMatrix& presentation() const { return P_; }
    const SmithDecomposition& snf() const { return snf_; }
    const std::optional<IntegerMatrix>& deck_action() const { return deck_; }
    const std::optional<RationalMatrix>& linking() const { return L_; }
    unsigned deck_order() const { return deck_order_; }
    size_t generators() const { return P_.rows(); }

    // invariant factors d_i > 1 and zeros for free summands, in SNF order
    const std::vector<mpz_class>& invariants() const { return inv_; }
    bool is_finite() const;
    mpz_class order() const;  // 0 when infinite
    std::string structure() const;  // e.g. "Z3 + Z3", "0", "Z + Z7"

    // coordinates in the cyclic decomposition, reduced mod the invariants
    ZVec to_snf(const ZVec& x) const;
    ZVec from_snf(const ZVec& y) const;
    bool is_zero(const ZVec& x) const;

    mpq_class lambda(const ZVec& x, const ZVec& y) const;  // in [0, 1)
    ZVec act(const ZVec& x) const;                          // t . x

    // matrices in the cyclic-decomposition basis
    RationalMatrix gram_snf() const;    // entries in [0, 1)
    IntegerMatrix deck_snf() const;

    // structural checks; each returns an empty string on success
    std::string check_deck() const;     // relations preserved, t^r = 1
    std::string check_linking() const;  // well defined, symmetric, nondegenerate
    std::string check_deck_invariance() const;

private:
    IntegerMatrix P_;
    SmithDecomposition snf_;
    IntegerMatrix Uinv_;
    std::optional<IntegerMatrix> deck_;
    std::optional<RationalMatrix> L_;
    unsigned deck_order_ = 0;
    std::vector<mpz_class> inv_;
    std::vector<size_t> inv_rows_;
};

mpq_class mod_one(const mpq_class& q);

// Subgroup of a finite PresentedGroup, canonicalized by the Hermite form of its preimage lattice
// in the cyclic-decomposition coordinates.
struct Subgroup {
    std::vector<ZVec> generators;  // generator coordinates (presentation basis)
    IntegerMatrix hermite;         // canonical form, rows span the preimage lattice
    mpz_class order;
};

Subgroup make_subgroup(const PresentedGroup& G, const std::vector<ZVec>& generators);
bool subgroup_contains(const PresentedGroup& G, const Subgroup& H, const ZVec& x);

struct GroupMetabolizer {
    Subgroup subgroup;
    std::string context = "linking";
    bool self_annihilating = false;
    bool half_order = false;
    bool invariant_under_deck = false;
    bool is_metabolizer() const { return self_annihilating && half_order; }
};

GroupMetabolizer classify_subgroup(const PresentedGroup& G, const Subgroup& H);

// H_1 of the r-fold branched cover: coker(C_r (x) V^T - I_r (x) V), generators t^j e_k
// (block j, index k), t acting by the block shift. When the group is finite the linking form is
// transported from the symmetric presentation.
PresentedGroup branched_cover_homology(const SeifertMatrix& V, unsigned r);
// symmetric block-tridiagonal presentation T_r with form +T_r^{-1} and transported deck action;
// cross-checked against the circulant presentation (throws std::logic_error on mismatch)
PresentedGroup symmetric_cover_presentation(const SeifertMatrix& V, unsigned r);

IntegerMatrix circulant_presentation_matrix(const IntegerMatrix& V, unsigned r);
IntegerMatrix symmetric_presentation_matrix(const IntegerMatrix& V, unsigned r);
// |prod_{j=1}^{r-1} Delta(zeta^j)| via Res(Delta, 1 + t + ... + t^{r-1})
mpz_class cover_order_by_resultant(const SeifertMatrix& V, unsigned r);

// subgroup generated by the t-orbit of the summand generator u (basis-curve coordinates)
GroupMetabolizer pi_r_projection(const ZVec& u, const SeifertMatrix& V, unsigned r);
GroupMetabolizer pi_r_projection(const ZVec& u, const PresentedGroup& cover);

// all H with lambda(H, H) = 0 and |H|^2 = |G|, optionally t-invariant; sorted canonically
std::vector<GroupMetabolizer> enumerate_metabolizers(const PresentedGroup& G, bool require_deck_invariant,
                                                     const mpz_class& budget = 1000000);

// ---------------------------------------------------------------- rational module level

// Rational Alexander module of a knot with nonsingular Seifert matrix: Q^{2g} with t = V V^{-T}
// and the t-invariant form b(x, y) = x^T V^{-T} y.
struct IsometricStructure {
    RationalMatrix t, form;
    size_t dim() const { return t.rows(); }
};
IsometricStructure isometric_structure(const SeifertMatrix& V);

using QVec = std::vector<mpq_class>;
// reduced row echelon basis of the span
std::vector<QVec> span_basis(const std::vector<QVec>& vectors);
bool same_span(const std::vector<QVec>& a, const std::vector<QVec>& b);

struct ModuleMetabolizer {
    std::vector<QVec> basis;  // rational subspace of Q^{2g}
    std::string label;
    LaurentPolynomial annihilator;
    ZVec generator;  // integral generator when the metabolizer is a cyclic summand
};

bool is_module_metabolizer(const IsometricStructure& S, const std::vector<QVec>& basis);

// the self-annihilating submodules of the two-summand module of a genus-one knot
std::vector<ModuleMetabolizer> blanchfield_metabolizers_genus1(const SeifertMatrix& V,
                                                               const std::vector<std::string>& curve_labels = {});

struct SplitResult {
    std::vector<QVec> P_K, P_J;  // in the coordinates of the K and J summands
    BezoutCertificate bezout;
};

// P_L is a metabolizer of the module of K # J (coordinates: K block then J block)
SplitResult split_metabolizer(const SeifertMatrix& K, const SeifertMatrix& J, const std::vector<QVec>& P_L);

// ---------------------------------------------------------------- surgery bookkeeping

struct SurgeryHomology {
    PresentedGroup group;
    bool is_Z2_homology_sphere = false;
};
SurgeryHomology surgery_homology(const IntegerMatrix& linking_matrix);
// linking matrix after replacing component i by an untwisted satellite of winding number w
IntegerMatrix satellite_linking_matrix(const IntegerMatrix& linking_matrix, size_t component, long winding);

}  // namespace kc
