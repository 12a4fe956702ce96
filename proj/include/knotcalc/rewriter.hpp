#pragma once

#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace kc {

// One symbol of a component word: a crossing endpoint, a passage through handle a or b, or a
// point on the mirror.
struct Symbol {
    enum class Kind { Crossing, Handle, Mirror };
    Kind kind = Kind::Mirror;
    int crossing = -1;
    bool over = false;
    char handle = 0;  // 'a' or 'b'
    int dir = 0;      // +1 / -1 passage direction

    static Symbol mirror() { return {}; }
    static Symbol cross(int id, bool over) { return {Kind::Crossing, id, over, 0, 0}; }
    static Symbol pass(char h, int dir) { return {Kind::Handle, -1, false, h, dir}; }
    bool is_crossing() const { return kind == Kind::Crossing; }
    bool is_mirror() const { return kind == Kind::Mirror; }
    std::string str() const;  // "M", "a+", "b-", "o3", "u3"
    static Symbol parse(const std::string& s);
    friend bool operator==(const Symbol&, const Symbol&) = default;
};

using Word = std::vector<Symbol>;

struct CrossingInfo {
    int sign = 1;
    int partner = -1;  // iota(c)
    char side = 'A';
    friend bool operator==(const CrossingInfo&, const CrossingInfo&) = default;
};

// Pattern in the first solid torus: cyclic words over {a+-, oN, uN} and the cut point of each
// component where the band to the mirror is attached.
struct PatternSide {
    std::vector<Word> components;
    std::map<int, int> signs;
    std::vector<size_t> cuts;
    std::string validate() const;
    nlohmann::json to_json() const;
    static PatternSide from_json(const nlohmann::json& j);
};

// Components K # iota(K), each written M h M iota(h) with the A half first.
struct SymmetricDiagram {
    std::vector<Word> components;
    std::vector<size_t> family;  // originating pattern component
    std::map<int, CrossingInfo> crossings;

    size_t crossing_count() const { return crossings.size(); }
    std::string validate() const;  // empty when all invariants hold
    nlohmann::json to_json() const;
    static SymmetricDiagram from_json(const nlohmann::json& j);
    friend bool operator==(const SymmetricDiagram&, const SymmetricDiagram&) = default;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AlreadyTerminal : std::runtime_error {
    AlreadyTerminal() : std::runtime_error("already terminal") {}
};

// iota on a single symbol of a reversed traversal: a^e -> b^e, crossing c -> partner(c)
Word mirror_word(const Word& w, const std::map<int, CrossingInfo>& crossings);

SymmetricDiagram initial_band_sums(const PatternSide& P);

struct ReducibleCrossing {
    size_t component = 0;
    size_t position = 0;  // occurrence of the crossing on the arc
    int direction = 1;    // walking direction from the crossing to the mirror point
    int crossing = -1, partner = -1;
    size_t length = 0;    // symbols walked
    ReducibleCrossing mirrored(const SymmetricDiagram& D) const;
    nlohmann::json to_json() const;
};

ReducibleCrossing find_reducible_crossing(const SymmetricDiagram& D);
SymmetricDiagram band_move(const SymmetricDiagram& D, const ReducibleCrossing& arc);

// terminal recognition: +1 / -1 for a copy of C with orientation, 0 for an unknot
std::optional<int> terminal_type(const Word& w);

struct Move {
    std::string kind;  // initial-band-sum | crossing-band-move | cap-unknot
    nlohmann::json location;
    size_t crossings_before = 0, crossings_after = 0, components_after = 0;
};

struct CobordismCertificate {
    PatternSide pattern;
    SymmetricDiagram initial, terminal;
    std::vector<Move> moves;
    nlohmann::json to_json() const;
    static CobordismCertificate from_json(const nlohmann::json& j);
};

CobordismCertificate reduce(const PatternSide& P);
CobordismCertificate reduce(const SymmetricDiagram& D);

struct CertificateVerdict {
    bool valid = false;
    std::string error;
    long move_index = -1;  // failing move, -1 if none
    size_t band_moves = 0;
    std::vector<long> genus;        // per pattern component
    std::vector<int> orientations;  // terminal copies of C
    nlohmann::json to_json() const;
};
CertificateVerdict verify_certificate(const CobordismCertificate& cert);

// braid closure in the first solid torus, bands attached at outermost strands
PatternSide random_pattern(std::mt19937_64& rng, int max_crossings);

}  // namespace kc
