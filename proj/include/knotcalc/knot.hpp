#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "knotcalc/seifert.hpp"

namespace kc {

class Knot;

struct KnotNode;

// Immutable knot expression: a leaf Seifert surface with winding-number-zero infections along
// basis curves, or a connected sum / mirror / multiple of knots. Companions are kept structurally.
class Knot {
public:
    enum class Kind { Leaf, Sum, Mirror, Multiple };

    Knot();  // unknot

    Kind kind() const;
    bool is_unknot() const;

    // leaf data
    const SeifertMatrix& base() const;
    const std::vector<std::string>& curve_labels() const;
    const std::map<size_t, Knot>& infections() const;  // 0-based basis index -> companion
    const std::string& family() const;                  // "Rm", "Dplus", "Dminus", "trefoil", "unknot", "seifert"
    long parameter() const;                             // m for Rm, twist count for doubles
    const std::string& alias() const;                   // e.g. "Ji(2)"
    size_t curve_index(const std::string& label) const;
    const Knot* companion(const std::string& label) const;

    // composite data
    const std::vector<Knot>& children() const;
    unsigned count() const;

    SeifertMatrix seifert() const;  // flattened Seifert form (infections do not change it)
    LaurentPolynomial alexander() const;
    std::vector<LaurentPolynomial> alexander_factors() const;
    size_t genus() const;
    int signature_at_sample(const mpq_class& s) const;
    SignatureProfile signature_profile() const;
    SignatureIntegral signature_integral(SignatureConvention conv = {}) const;

    std::string spec() const;
    nlohmann::json to_json() const;
    static Knot from_json(const nlohmann::json& j);

    // constructors
    static Knot leaf(SeifertMatrix base, std::vector<std::string> labels, std::string family, long parameter = 0);
    static Knot sum(std::vector<Knot> parts);
    static Knot mirror(const Knot& k);
    static Knot multiple(unsigned n, const Knot& k);
    Knot with_alias(std::string alias) const;
    Knot with_infection(size_t index, const Knot& companion) const;

private:
    explicit Knot(std::shared_ptr<const KnotNode> n) : n_(std::move(n)) {}
    std::shared_ptr<const KnotNode> n_;
};

struct KnotNode {
    Knot::Kind kind = Knot::Kind::Leaf;
    SeifertMatrix base;
    std::vector<std::string> labels;
    std::map<size_t, Knot> infections;
    std::string family = "unknot";
    long parameter = 0;
    std::string alias;
    std::vector<Knot> children;
    unsigned count = 1;
};

Knot unknot();
Knot trefoil();
Knot make_Rm(long m);
enum class Clasp { Plus, Minus };
Knot make_twisted_double(Clasp clasp, const Knot& companion, long twists);
Knot make_D();  // D_+(T_{2,3}, 0)

struct FamilyParameters {
    long i = 0;
    long p = 0;  // i-th prime = 1 mod 4, starting at 5
    long k = 0;  // (p - 1)^2 / 8
};
FamilyParameters family_parameters(long i);
Knot make_Ji(long i);

// infect the leaf `base` along the curve with the given label (or 0-based index)
Knot infect(const Knot& base, const std::string& site, const Knot& companion);
Knot infect(const Knot& base, size_t site, const Knot& companion);

struct ParseError : std::runtime_error {
    ParseError(size_t pos, const std::string& msg)
        : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + msg), position(pos) {}
    size_t position;
};

// "Rm(m=1; aJ=Ji(1); aD=Dplus(trefoil,0))", "2*trefoil # -Ji(1)", "seifert([[0,2],[1,0]])", ...
Knot parse_knot(const std::string& spec);

}  // namespace kc
