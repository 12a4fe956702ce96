#include "knotcalc/rewriter.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace kc {

using nlohmann::json;

std::string Symbol::str() const {
    switch (kind) {
        case Kind::Mirror: return "M";
        case Kind::Handle: return std::string(1, handle) + (dir > 0 ? "+" : "-");
        case Kind::Crossing: return (over ? "o" : "u") + std::to_string(crossing);
    }
    return "?";
}

Symbol Symbol::parse(const std::string& s) {
    if (s == "M") return mirror();
    if (s.size() == 2 && (s[0] == 'a' || s[0] == 'b') && (s[1] == '+' || s[1] == '-'))
        return pass(s[0], s[1] == '+' ? 1 : -1);
    if (s.size() >= 2 && (s[0] == 'o' || s[0] == 'u') &&
        std::all_of(s.begin() + 1, s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
        return cross(std::stoi(s.substr(1)), s[0] == 'o');
    throw ValidationError("bad symbol '" + s + "'");
}

namespace {

json word_json(const Word& w) {
    json a = json::array();
    for (auto& s : w) a.push_back(s.str());
    return a;
}

Word word_from(const json& j) {
    if (!j.is_array()) throw ValidationError("word must be an array");
    Word w;
    for (auto& s : j) {
        if (!s.is_string()) throw ValidationError("symbol must be a string");
        w.push_back(Symbol::parse(s.get<std::string>()));
    }
    return w;
}

Symbol flip(Symbol s) {
    if (s.kind == Symbol::Kind::Handle) s.dir = -s.dir;
    return s;
}

Word flip_reverse(const Word& w) {
    Word r;
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(flip(*it));
    return r;
}

size_t markers(const Word& w) {
    return std::count_if(w.begin(), w.end(), [](auto& s) { return s.is_mirror(); });
}

char side_of(const Symbol& s, const std::map<int, CrossingInfo>& X) {
    if (s.kind == Symbol::Kind::Handle) return s.handle == 'a' ? 'A' : 'B';
    if (s.is_crossing()) {
        auto it = X.find(s.crossing);
        return it == X.end() ? '?' : it->second.side;
    }
    return 0;
}

// rotate so the word starts with the marker preceding the A half
Word normalize(const Word& w, const std::map<int, CrossingInfo>& X) {
    if (markers(w) != 2 || w.size() % 2) return w;
    size_t L = w.size();
    for (size_t m = 0; m < L; ++m) {
        if (!w[m].is_mirror()) continue;
        if (m + 1 < L && !w[m + 1].is_mirror() && side_of(w[m + 1], X) != 'A') continue;
        if (m + 1 == L && !w[0].is_mirror() && side_of(w[0], X) != 'A') continue;
        Word r(w.begin() + m, w.end());
        r.insert(r.end(), w.begin(), w.begin() + m);
        return r;
    }
    return w;
}

size_t mirror_pos(size_t p, size_t L) { return (L - p) % L; }

}  // namespace

Word mirror_word(const Word& w, const std::map<int, CrossingInfo>& X) {
    Word r;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        Symbol s = *it;
        if (s.kind == Symbol::Kind::Handle) s.handle = s.handle == 'a' ? 'b' : 'a';
        if (s.is_crossing()) {
            auto f = X.find(s.crossing);
            s.crossing = f == X.end() ? -1 : f->second.partner;
        }
        r.push_back(s);
    }
    return r;
}

std::string PatternSide::validate() const {
    if (cuts.size() != components.size()) return "one cut per component required";
    std::map<int, std::pair<int, int>> seen;
    for (size_t i = 0; i < components.size(); ++i) {
        auto& w = components[i];
        if (w.empty()) return "component " + std::to_string(i) + " is empty";
        if (cuts[i] >= w.size()) return "cut of component " + std::to_string(i) + " out of range";
        for (auto& s : w) {
            if (s.is_mirror()) return "pattern words cannot meet the mirror";
            if (s.kind == Symbol::Kind::Handle && s.handle != 'a')
                return "pattern words pass only through handle a";
            if (s.is_crossing()) (s.over ? seen[s.crossing].first : seen[s.crossing].second)++;
        }
    }
    for (auto& [c, ou] : seen) {
        if (ou.first != 1 || ou.second != 1)
            return "crossing " + std::to_string(c) + " needs one over and one under endpoint";
        if (!signs.count(c)) return "crossing " + std::to_string(c) + " has no sign";
    }
    for (auto& [c, s] : signs) {
        if (!seen.count(c)) return "crossing " + std::to_string(c) + " does not occur";
        if (s != 1 && s != -1) return "crossing sign must be +-1";
    }
    return "";
}

json PatternSide::to_json() const {
    json j;
    j["components"] = json::array();
    for (auto& w : components) j["components"].push_back(word_json(w));
    j["crossings"] = json::array();
    for (auto& [c, s] : signs) j["crossings"].push_back({{"id", c}, {"sign", s}});
    j["cuts"] = cuts;
    return j;
}

PatternSide PatternSide::from_json(const json& j) {
    PatternSide P;
    try {
        for (auto& w : j.at("components")) P.components.push_back(word_from(w));
        for (auto& c : j.at("crossings")) P.signs[c.at("id").get<int>()] = c.at("sign").get<int>();
        P.cuts = j.at("cuts").get<std::vector<size_t>>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed pattern: ") + e.what());
    }
    return P;
}

std::string SymmetricDiagram::validate() const {
    if (family.size() != components.size()) return "family labels do not match components";
    for (auto& [c, info] : crossings) {
        auto p = crossings.find(info.partner);
        if (info.partner == c || p == crossings.end()) return "iota has no partner for crossing " + std::to_string(c);
        if (p->second.partner != c) return "iota is not an involution at crossing " + std::to_string(c);
        if (p->second.sign != -info.sign) return "iota must reverse the sign of crossing " + std::to_string(c);
        if (p->second.side == info.side || (info.side != 'A' && info.side != 'B'))
            return "crossing " + std::to_string(c) + " and its partner lie on the same side";
    }
    if (crossings.size() % 2) return "odd crossing count";
    std::map<int, std::pair<int, int>> seen;
    for (size_t i = 0; i < components.size(); ++i) {
        auto& w = components[i];
        std::string at = "component " + std::to_string(i) + ": ";
        if (markers(w) != 2) return at + "meets the mirror " + std::to_string(markers(w)) + " times";
        if (!w[0].is_mirror() || w.size() % 2 || !w[w.size() / 2].is_mirror())
            return at + "mirror points do not split it into equal halves";
        size_t h = w.size() / 2 - 1;
        Word A(w.begin() + 1, w.begin() + 1 + h), B(w.begin() + 2 + h, w.end());
        for (auto& s : A)
            if (side_of(s, crossings) != 'A') return at + "first half leaves side A";
        for (auto& s : B)
            if (side_of(s, crossings) != 'B') return at + "second half leaves side B";
        if (mirror_word(A, crossings) != B) return at + "not of the form K # iota(K)";
        for (auto& s : w)
            if (s.is_crossing()) {
                if (!crossings.count(s.crossing)) return at + "unknown crossing " + std::to_string(s.crossing);
                (s.over ? seen[s.crossing].first : seen[s.crossing].second)++;
            }
    }
    for (auto& [c, info] : crossings)
        if (seen[c] != std::pair{1, 1})
            return "crossing " + std::to_string(c) + " needs one over and one under endpoint";
    return "";
}

json SymmetricDiagram::to_json() const {
    json j;
    j["components"] = json::array();
    for (size_t i = 0; i < components.size(); ++i)
        j["components"].push_back({{"family", family[i]}, {"word", word_json(components[i])}});
    j["crossings"] = json::array();
    for (auto& [c, x] : crossings)
        j["crossings"].push_back(
            {{"id", c}, {"sign", x.sign}, {"partner", x.partner}, {"side", std::string(1, x.side)}});
    return j;
}

SymmetricDiagram SymmetricDiagram::from_json(const json& j) {
    SymmetricDiagram D;
    try {
        for (auto& c : j.at("components")) {
            D.family.push_back(c.at("family").get<size_t>());
            D.components.push_back(word_from(c.at("word")));
        }
        for (auto& c : j.at("crossings")) {
            auto side = c.at("side").get<std::string>();
            if (side.size() != 1) throw ValidationError("bad side");
            D.crossings[c.at("id").get<int>()] = {c.at("sign").get<int>(), c.at("partner").get<int>(), side[0]};
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed diagram: ") + e.what());
    }
    return D;
}

SymmetricDiagram initial_band_sums(const PatternSide& P) {
    if (auto e = P.validate(); !e.empty()) throw ValidationError(e);
    SymmetricDiagram D;
    int shift = P.signs.empty() ? 0 : P.signs.rbegin()->first + 1;
    for (auto& [c, s] : P.signs) {
        D.crossings[c] = {s, c + shift, 'A'};
        D.crossings[c + shift] = {-s, c, 'B'};
    }
    for (size_t i = 0; i < P.components.size(); ++i) {
        auto& p = P.components[i];
        Word w(p.begin() + P.cuts[i], p.end());
        w.insert(w.end(), p.begin(), p.begin() + P.cuts[i]);
        Word full{Symbol::mirror()};
        full.insert(full.end(), w.begin(), w.end());
        full.push_back(Symbol::mirror());
        auto m = mirror_word(w, D.crossings);
        full.insert(full.end(), m.begin(), m.end());
        D.components.push_back(full);
        D.family.push_back(i);
    }
    if (auto e = D.validate(); !e.empty()) throw std::logic_error("initial band sums: " + e);
    return D;
}

json ReducibleCrossing::to_json() const {
    return {{"component", component}, {"position", position}, {"direction", direction},
            {"crossing", crossing}, {"partner", partner}, {"length", length}};
}

ReducibleCrossing ReducibleCrossing::mirrored(const SymmetricDiagram& D) const {
    ReducibleCrossing r = *this;
    r.position = mirror_pos(position, D.components.at(component).size());
    r.direction = -direction;
    std::swap(r.crossing, r.partner);
    return r;
}

ReducibleCrossing find_reducible_crossing(const SymmetricDiagram& D) {
    if (D.crossings.empty()) throw AlreadyTerminal();
    for (size_t k = 0; k < D.components.size(); ++k) {
        auto& w = D.components[k];
        long L = w.size();
        std::optional<ReducibleCrossing> best;
        for (long m = 0; m < L; ++m) {
            if (!w[m].is_mirror()) continue;
            for (int d : {1, -1}) {
                long p = m;
                size_t len = 0;
                do {
                    p = ((p + d) % L + L) % L;
                    ++len;
                } while (!w[p].is_crossing() && !w[p].is_mirror());
                if (!w[p].is_crossing()) continue;
                ReducibleCrossing r{k, size_t(p), -d, w[p].crossing, D.crossings.at(w[p].crossing).partner, len};
                bool a = D.crossings.at(r.crossing).side == 'A';
                if (!best || len < best->length ||
                    (len == best->length && a && D.crossings.at(best->crossing).side != 'A'))
                    best = r;
            }
        }
        if (best) return *best;
    }
    throw std::logic_error("crossings present but none reachable from the mirror");
}

namespace {

struct Tagged {
    Symbol s;
    int tag = 0;  // 1: alpha end of c, 2: alpha end of iota(c), 3: other end of c, 4: other end of iota(c)
};

}  // namespace

SymmetricDiagram band_move(const SymmetricDiagram& D, const ReducibleCrossing& arc) {
    auto bad = [](const std::string& m) { return ValidationError("precondition violation: " + m); };
    if (arc.component >= D.components.size()) throw bad("no such component");
    auto& X = D.components[arc.component];
    size_t L = X.size();
    if (arc.position >= L || !X[arc.position].is_crossing()) throw bad("arc does not start at a crossing");
    if (arc.direction != 1 && arc.direction != -1) throw bad("direction must be +-1");
    int c = X[arc.position].crossing;
    if (arc.crossing != c) throw bad("crossing label does not match the arc");
    auto ci = D.crossings.find(c);
    if (ci == D.crossings.end()) throw bad("unknown crossing");
    int ic = ci->second.partner;

    Word h;
    long p = arc.position;
    while (true) {
        p = ((p + arc.direction) % long(L) + long(L)) % long(L);
        if (X[p].is_mirror()) break;
        if (X[p].is_crossing()) throw bad("arc from crossing " + std::to_string(c) + " meets another crossing");
        h.push_back(arc.direction > 0 ? X[p] : flip(X[p]));
    }
    size_t ip = mirror_pos(arc.position, L);
    if (!X[ip].is_crossing() || X[ip].crossing != ic || X[ip].over != X[arc.position].over)
        throw bad("mirror image of the arc does not end at iota(c)");

    Word E = h;
    E.push_back(Symbol::mirror());
    auto mh = mirror_word(h, D.crossings);
    E.insert(E.end(), mh.begin(), mh.end());

    std::vector<std::vector<Tagged>> comps;
    for (size_t k = 0; k < D.components.size(); ++k) {
        std::vector<Tagged> t;
        for (size_t q = 0; q < D.components[k].size(); ++q) {
            Tagged x{D.components[k][q], 0};
            if (k == arc.component && q == arc.position) x.tag = 1;
            else if (k == arc.component && q == ip) x.tag = 2;
            else if (x.s.is_crossing() && x.s.crossing == c) x.tag = 3;
            else if (x.s.is_crossing() && x.s.crossing == ic) x.tag = 4;
            t.push_back(x);
        }
        comps.push_back(std::move(t));
    }
    long y = -1;
    for (size_t k = 0; k < comps.size(); ++k)
        for (auto& x : comps[k])
            if (x.tag == 3) y = k;
    long y2 = -1;
    for (size_t k = 0; k < comps.size(); ++k)
        for (auto& x : comps[k])
            if (x.tag == 4) y2 = k;
    if (y < 0 || y2 != y) throw bad("transverse strands at c and iota(c) are not on one component");

    auto& xs = comps[arc.component];
    xs.erase(std::remove_if(xs.begin(), xs.end(), [](auto& x) { return x.tag == 1 || x.tag == 2; }), xs.end());
    auto& ys = comps[y];
    auto i3 = std::find_if(ys.begin(), ys.end(), [](auto& x) { return x.tag == 3; }) - ys.begin();
    std::rotate(ys.begin(), ys.begin() + i3, ys.end());
    auto i4 = std::find_if(ys.begin(), ys.end(), [](auto& x) { return x.tag == 4; }) - ys.begin();
    Word S1, S2;
    for (long q = 1; q < i4; ++q) S1.push_back(ys[q].s);
    for (size_t q = i4 + 1; q < ys.size(); ++q) S2.push_back(ys[q].s);
    Word A = S1, B = S2;
    auto rE = flip_reverse(E);
    A.insert(A.end(), rE.begin(), rE.end());
    B.insert(B.end(), E.begin(), E.end());

    SymmetricDiagram R;
    R.crossings = D.crossings;
    R.crossings.erase(c);
    R.crossings.erase(ic);
    for (size_t k = 0; k < comps.size(); ++k) {
        Word w;
        if (long(k) == y) w = A;
        else
            for (auto& x : comps[k]) w.push_back(x.s);
        R.components.push_back(normalize(w, R.crossings));
        R.family.push_back(D.family[k]);
    }
    R.components.push_back(normalize(B, R.crossings));
    R.family.push_back(D.family[y]);
    return R;
}

std::optional<int> terminal_type(const Word& w) {
    if (markers(w) != 2) return std::nullopt;
    std::vector<int> stack;
    size_t m = 0;
    for (auto& s : w) {
        if (s.is_crossing()) return std::nullopt;
        if (s.is_mirror()) {
            ++m;
            continue;
        }
        if (m != 1 || s.handle != 'a') continue;  // the b half mirrors the a half
        if (!stack.empty() && stack.back() == -s.dir) stack.pop_back();
        else stack.push_back(s.dir);
    }
    if (stack.empty()) return 0;
    if (stack.size() == 1) return stack[0];
    return std::nullopt;
}

json CobordismCertificate::to_json() const {
    json j;
    j["schema_version"] = 1;
    j["kind"] = "cobordism-certificate";
    j["pattern"] = pattern.to_json();
    j["initial"] = initial.to_json();
    j["terminal"] = terminal.to_json();
    j["moves"] = json::array();
    for (auto& m : moves)
        j["moves"].push_back({{"kind", m.kind},
                              {"location", m.location},
                              {"crossings_before", m.crossings_before},
                              {"crossings_after", m.crossings_after},
                              {"components_after", m.components_after}});
    return j;
}

CobordismCertificate CobordismCertificate::from_json(const json& j) {
    CobordismCertificate C;
    try {
        if (j.at("kind") != "cobordism-certificate") throw ValidationError("not a cobordism certificate");
        C.pattern = PatternSide::from_json(j.at("pattern"));
        C.initial = SymmetricDiagram::from_json(j.at("initial"));
        C.terminal = SymmetricDiagram::from_json(j.at("terminal"));
        for (auto& m : j.at("moves"))
            C.moves.push_back({m.at("kind").get<std::string>(), m.at("location"),
                               m.at("crossings_before").get<size_t>(), m.at("crossings_after").get<size_t>(),
                               m.at("components_after").get<size_t>()});
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed certificate: ") + e.what());
    }
    return C;
}

namespace {

CobordismCertificate run(SymmetricDiagram D, std::vector<Move> moves) {
    CobordismCertificate C;
    C.initial = D;
    C.moves = std::move(moves);
    while (D.crossing_count() > 0) {
        auto arc = find_reducible_crossing(D);
        size_t before = D.crossing_count();
        D = band_move(D, arc);
        if (auto e = D.validate(); !e.empty()) throw std::logic_error("band move broke the diagram: " + e);
        C.moves.push_back({"crossing-band-move", arc.to_json(), before, D.crossing_count(), D.components.size()});
    }
    for (size_t k = 0; k < D.components.size();) {
        if (terminal_type(D.components[k]) == 0) {
            D.components.erase(D.components.begin() + k);
            D.family.erase(D.family.begin() + k);
            C.moves.push_back({"cap-unknot", {{"component", k}}, 0, 0, D.components.size()});
        } else {
            ++k;
        }
    }
    C.terminal = D;
    return C;
}

}  // namespace

CobordismCertificate reduce(const SymmetricDiagram& D) {
    if (auto e = D.validate(); !e.empty()) throw ValidationError(e);
    return run(D, {});
}

CobordismCertificate reduce(const PatternSide& P) {
    auto D = initial_band_sums(P);
    std::vector<Move> pro;
    for (size_t i = 0; i < P.components.size(); ++i)
        pro.push_back({"initial-band-sum", {{"component", i}, {"cut", P.cuts[i]}}, 0, 0, i + 1});
    auto C = run(D, pro);
    C.pattern = P;
    for (auto& m : C.moves)
        if (m.kind == "initial-band-sum") m.crossings_before = m.crossings_after = D.crossing_count();
    return C;
}

json CertificateVerdict::to_json() const {
    json j{{"valid", valid}, {"band_moves", band_moves}, {"genus", genus}, {"orientations", orientations}};
    if (!valid) j["error"] = error, j["move_index"] = move_index;
    return j;
}

CertificateVerdict verify_certificate(const CobordismCertificate& cert) {
    CertificateVerdict V;
    auto fail = [&](long k, const std::string& m) {
        V.valid = false;
        V.move_index = k;
        V.error = (k >= 0 ? "move " + std::to_string(k) + ": " : std::string()) + m;
        return V;
    };
    if (auto e = cert.initial.validate(); !e.empty()) return fail(-1, "initial diagram invalid: " + e);

    size_t k0 = 0;
    size_t families = cert.pattern.components.size();
    if (families > 0) {
        SymmetricDiagram expect;
        try {
            expect = initial_band_sums(cert.pattern);
        } catch (const std::exception& e) {
            return fail(-1, std::string("pattern invalid: ") + e.what());
        }
        for (; k0 < cert.moves.size() && cert.moves[k0].kind == "initial-band-sum"; ++k0) {
            auto& loc = cert.moves[k0].location;
            if (!loc.is_object() || loc.value("component", size_t(-1)) != k0 ||
                loc.value("cut", size_t(-1)) != cert.pattern.cuts.at(std::min(k0, families - 1)))
                return fail(k0, "initial band sum does not match the pattern");
        }
        if (k0 != families) return fail(k0, "expected " + std::to_string(families) + " initial band sums");
        if (!(expect == cert.initial)) return fail(-1, "initial diagram differs from the band sums of the pattern");
    } else {
        for (auto f : cert.initial.family) families = std::max(families, f + 1);
    }

    std::vector<long> bands(families, 0), caps(families, 0);
    for (size_t i = 0; i < k0; ++i) bands[i] = 1;
    SymmetricDiagram D = cert.initial;
    size_t start = D.crossing_count();
    for (size_t k = k0; k < cert.moves.size(); ++k) {
        auto& m = cert.moves[k];
        size_t before = D.crossing_count(), comps = D.components.size();
        if (m.crossings_after > m.crossings_before) return fail(k, "move increases the crossing count");
        if (m.kind == "crossing-band-move") {
            ReducibleCrossing arc;
            try {
                auto& l = m.location;
                arc.component = l.at("component").get<size_t>();
                arc.position = l.at("position").get<size_t>();
                arc.direction = l.at("direction").get<int>();
                arc.crossing = l.at("crossing").get<int>();
                arc.partner = l.value("partner", -1);
                D = band_move(D, arc);
            } catch (const std::exception& e) {
                return fail(k, e.what());
            }
            if (D.crossing_count() + 2 != before) return fail(k, "crossing count did not drop by 2");
            if (D.components.size() <= comps) return fail(k, "component count did not increase");
            bands.at(D.family.back())++;
        } else if (m.kind == "cap-unknot") {
            size_t c = m.location.is_object() ? m.location.value("component", size_t(-1)) : size_t(-1);
            if (c >= D.components.size()) return fail(k, "cap on a missing component");
            if (terminal_type(D.components[c]) != 0) return fail(k, "cap on a component that is not an unknot");
            caps.at(D.family[c])++;
            D.components.erase(D.components.begin() + c);
            D.family.erase(D.family.begin() + c);
        } else {
            return fail(k, "unknown move kind '" + m.kind + "'");
        }
        if (auto e = D.validate(); !e.empty()) return fail(k, "diagram invalid after move: " + e);
        if (m.crossings_before != before || m.crossings_after != D.crossing_count() ||
            m.components_after != D.components.size())
            return fail(k, "recorded counts disagree with the replay");
    }
    if (!(D == cert.terminal)) {
        std::string where = "terminal diagram differs from replay";
        if (D.components.size() != cert.terminal.components.size())
            where += " (" + std::to_string(D.components.size()) + " vs " +
                     std::to_string(cert.terminal.components.size()) + " components)";
        else
            for (size_t i = 0; i < D.components.size(); ++i)
                if (D.components[i] != cert.terminal.components[i]) {
                    where += " at component " + std::to_string(i);
                    break;
                }
        return fail(cert.moves.size(), where);
    }
    if (D.crossing_count() != 0) return fail(-1, "terminal diagram has crossings");
    std::vector<long> boundary(families, 0), pieces(families, 0);
    for (auto f : cert.initial.family) pieces.at(f)++;
    for (size_t i = 0; i < D.components.size(); ++i) {
        auto t = terminal_type(D.components[i]);
        if (!t) return fail(-1, "terminal component " + std::to_string(i) + " is neither a copy of C nor an unknot");
        if (*t != 0) V.orientations.push_back(*t);
        boundary.at(D.family[i])++;
    }
    V.band_moves = 0;
    for (size_t i = 0; i < families; ++i) {
        long chi = caps[i] - bands[i];
        long b = boundary[i] + (k0 > 0 ? 2 : pieces[i]);
        long g2 = 2 * (k0 > 0 ? 1 : pieces[i]) - chi - b;
        V.genus.push_back(g2 / 2);
        if (g2 != 0) return fail(-1, "surface " + std::to_string(i) + " has genus " + std::to_string(g2) + "/2");
        V.band_moves += bands[i] - (k0 > 0 ? 1 : 0);
    }
    if (2 * V.band_moves != start) return fail(-1, "band moves do not match crossings/2");
    V.valid = true;
    return V;
}

PatternSide random_pattern(std::mt19937_64& rng, int max_crossings) {
    while (true) {
        int s = std::uniform_int_distribution<int>(1, 4)(rng);
        int n = s == 1 ? 0 : std::uniform_int_distribution<int>(0, max_crossings)(rng);
        std::vector<std::pair<int, int>> gens;
        for (int i = 0; i < n; ++i)
            gens.push_back({std::uniform_int_distribution<int>(0, s - 2)(rng),
                            std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1});
        std::vector<int> comp_of(s, -1);
        PatternSide P;
        std::vector<std::vector<size_t>> outer;
        for (int start = 0; start < s; ++start) {
            if (comp_of[start] >= 0) continue;
            int id = P.components.size();
            Word w;
            std::vector<size_t> cuts;
            int pos = start;
            do {
                comp_of[pos] = id;
                for (int l = 0; l < n; ++l) {
                    if (pos == s - 1) cuts.push_back(w.size());
                    auto [k, e] = gens[l];
                    if (pos == k) {
                        w.push_back(Symbol::cross(l, e > 0));
                        pos = k + 1;
                    } else if (pos == k + 1) {
                        w.push_back(Symbol::cross(l, e < 0));
                        pos = k;
                    }
                }
                if (pos == s - 1) cuts.push_back(w.size());
                w.push_back(Symbol::pass('a', 1));
            } while (pos != start);
            P.components.push_back(w);
            outer.push_back(cuts);
        }
        bool ok = true;
        for (auto& c : outer) ok = ok && !c.empty();
        if (!ok) continue;
        for (auto& c : outer) P.cuts.push_back(c[std::uniform_int_distribution<size_t>(0, c.size() - 1)(rng)]);
        for (int l = 0; l < n; ++l) P.signs[l] = gens[l].second;
        return P;
    }
}

}  // namespace kc
