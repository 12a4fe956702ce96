#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "knotcalc/config.hpp"
#include "knotcalc/covers.hpp"
#include "knotcalc/knot.hpp"
#include "knotcalc/relation.hpp"

namespace kc {

enum class Truth { True, False, Unknown };
std::string to_string(Truth t);

struct SlicenessResult {
    Truth verdict = Truth::Unknown;
    std::vector<ZVec> witness;  // basis of a rank-g summand on which V vanishes
    std::string certificate;
    mpz_class examined = 0;
};

// rank-g summand H of Z^{2g} with V|_{H x H} = 0; False only with a certificate
SlicenessResult algebraically_slice(const SeifertMatrix& V, const mpz_class& budget = 1000000);

struct RhoProxy {
    SignatureIntegral value;
    RealInterval enclosure;
    std::optional<int> sign;  // certified sign, nullopt if undecided
    nlohmann::json to_json(int digits) const;
};
RhoProxy rho_proxy(const Knot& companion, const RunConfig& config);

struct RegistryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Fact {
    std::string id, kind, statement, relation, value, status, citation;
    std::vector<long> m;                 // empty: any
    std::string aD;                      // companion spec at aD, empty: any
    std::vector<std::string> aJ;         // companion specs at aJ, empty: any
    std::string aJ_alias_prefix;
    std::vector<std::string> checks;     // machine-checked conditions
    std::vector<std::string> assumptions;
    nlohmann::json to_json() const;
};

struct FactRegistry {
    std::string source;
    std::vector<Fact> facts;
    static FactRegistry load(const std::string& path);
    static FactRegistry parse(const nlohmann::json& j, const std::string& source);
};

struct ObstructionCase {
    std::string metabolizer;  // curve label of the summand
    std::string kind;         // "rho-proxy", "d-invariant", "none"
    std::string verdict;      // "obstructed", "conditionally obstructed", "not obstructed"
    nlohmann::json detail;
};

struct ObstructionReport {
    std::string knot_spec;
    nlohmann::json knot;
    bool algebraically_slice = false;
    std::vector<ZVec> witness;
    std::vector<ObstructionCase> cases;
    std::vector<nlohmann::json> assumptions;
    std::string conclusion;
    RunConfig config;
    nlohmann::json to_json() const;
};

// K must be a leaf of the R_m shape with labelled curves aJ and aD
ObstructionReport evaluate_obstruction(const Knot& K, const RunConfig& config, const FactRegistry& registry);

struct IndependenceReport {
    std::vector<std::string> names;
    std::vector<SignatureIntegral> values;
    std::vector<RealInterval> enclosures;
    std::vector<bool> nonzero;            // certified
    bool pairwise_distinct = false;       // certified
    std::vector<std::pair<size_t, size_t>> equal_pairs;
    IntegerRelationResult relation;
    int precision_digits = 0;
    nlohmann::json to_json() const;
};
IndependenceReport independence_analysis(const std::vector<Knot>& family, const mpz_class& bound, int precision_digits,
                                          SignatureConvention conv = {});

}  // namespace kc
