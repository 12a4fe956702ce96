#include "knotcalc/knot.hpp"

#include <cctype>
#include <sstream>

namespace kc {

using nlohmann::json;

namespace {

const std::vector<std::string> kEmpty;

std::shared_ptr<const KnotNode> unknot_node() {
    static auto n = std::make_shared<const KnotNode>();
    return n;
}

std::vector<std::string> default_labels(size_t n) {
    std::vector<std::string> l;
    for (size_t i = 0; i < n; ++i) l.push_back("a" + std::to_string(i + 1));
    return l;
}

}  // namespace

Knot::Knot() : n_(unknot_node()) {}

Knot::Kind Knot::kind() const { return n_->kind; }

bool Knot::is_unknot() const {
    switch (n_->kind) {
        case Kind::Leaf: return n_->base.size() == 0;
        case Kind::Sum:
            for (auto& c : n_->children)
                if (!c.is_unknot()) return false;
            return true;
        case Kind::Mirror: return n_->children[0].is_unknot();
        case Kind::Multiple: return n_->children[0].is_unknot();
    }
    return false;
}

const SeifertMatrix& Knot::base() const { return n_->base; }
const std::vector<std::string>& Knot::curve_labels() const { return n_->labels; }
const std::map<size_t, Knot>& Knot::infections() const { return n_->infections; }
const std::string& Knot::family() const { return n_->family; }
long Knot::parameter() const { return n_->parameter; }
const std::string& Knot::alias() const { return n_->alias; }
const std::vector<Knot>& Knot::children() const { return n_->children; }
unsigned Knot::count() const { return n_->count; }

size_t Knot::curve_index(const std::string& label) const {
    if (kind() != Kind::Leaf) throw std::invalid_argument("curve_index: not a leaf knot");
    for (size_t i = 0; i < n_->labels.size(); ++i)
        if (n_->labels[i] == label) return i;
    throw std::invalid_argument("unknown curve label '" + label + "'");
}

const Knot* Knot::companion(const std::string& label) const {
    auto it = n_->infections.find(curve_index(label));
    return it == n_->infections.end() ? nullptr : &it->second;
}

Knot Knot::leaf(SeifertMatrix base, std::vector<std::string> labels, std::string family, long parameter) {
    auto n = std::make_shared<KnotNode>();
    if (labels.empty()) labels = default_labels(base.size());
    if (labels.size() != base.size()) throw std::invalid_argument("Knot::leaf: one label per basis curve required");
    n->base = std::move(base);
    n->labels = std::move(labels);
    n->family = std::move(family);
    n->parameter = parameter;
    return Knot(n);
}

Knot Knot::sum(std::vector<Knot> parts) {
    std::vector<Knot> flat;
    for (auto& p : parts) {
        if (p.kind() == Kind::Sum)
            for (auto& c : p.children()) flat.push_back(c);
        else
            flat.push_back(p);
    }
    if (flat.empty()) return Knot();
    if (flat.size() == 1) return flat[0];
    auto n = std::make_shared<KnotNode>();
    n->kind = Kind::Sum;
    n->family = "sum";
    n->children = std::move(flat);
    return Knot(n);
}

Knot Knot::mirror(const Knot& k) {
    auto n = std::make_shared<KnotNode>();
    n->kind = Kind::Mirror;
    n->family = "mirror";
    n->children = {k};
    return Knot(n);
}

Knot Knot::multiple(unsigned count, const Knot& k) {
    if (count == 0) return Knot();
    if (count == 1) return k;
    auto n = std::make_shared<KnotNode>();
    n->kind = Kind::Multiple;
    n->family = "multiple";
    n->count = count;
    n->children = {k};
    return Knot(n);
}

Knot Knot::with_alias(std::string alias) const {
    auto n = std::make_shared<KnotNode>(*n_);
    n->alias = std::move(alias);
    return Knot(n);
}

Knot Knot::with_infection(size_t index, const Knot& companion) const {
    if (kind() != Kind::Leaf) throw std::invalid_argument("infect: base must be a single Seifert surface");
    if (index >= n_->base.size()) throw std::invalid_argument("infect: curve index out of range");
    if (n_->infections.count(index))
        throw std::invalid_argument("infect: curve '" + n_->labels[index] + "' is already infected");
    auto n = std::make_shared<KnotNode>(*n_);
    n->infections.emplace(index, companion);
    n->alias.clear();
    return Knot(n);
}

SeifertMatrix Knot::seifert() const {
    switch (kind()) {
        case Kind::Leaf: return n_->base;
        case Kind::Sum: {
            SeifertMatrix s;
            for (auto& c : n_->children) s = SeifertMatrix(direct_sum(s.matrix(), c.seifert().matrix()));
            return s;
        }
        case Kind::Mirror: return mirror_reverse(n_->children[0].seifert());
        case Kind::Multiple: {
            SeifertMatrix one = n_->children[0].seifert();
            IntegerMatrix m;
            for (unsigned i = 0; i < n_->count; ++i) m = direct_sum(m, one.matrix());
            return SeifertMatrix(m);
        }
    }
    return {};
}

LaurentPolynomial Knot::alexander() const {
    switch (kind()) {
        case Kind::Leaf: return alexander_polynomial(n_->base);
        case Kind::Sum: {
            LaurentPolynomial p(1);
            for (auto& c : n_->children) p = p * c.alexander();
            return p.normalized();
        }
        case Kind::Mirror: return n_->children[0].alexander();
        case Kind::Multiple: return n_->children[0].alexander().pow(n_->count).normalized();
    }
    return LaurentPolynomial(1);
}

std::vector<LaurentPolynomial> Knot::alexander_factors() const {
    std::vector<LaurentPolynomial> out;
    auto add = [&](const LaurentPolynomial& f) {
        if (f.span() == 0) return;
        for (auto& g : out)
            if (g == f) return;
        out.push_back(f);
    };
    if (kind() == Kind::Leaf) add(alexander_polynomial(n_->base));
    for (auto& c : n_->children)
        for (auto& f : c.alexander_factors()) add(f);
    return out;
}

size_t Knot::genus() const {
    switch (kind()) {
        case Kind::Leaf: return n_->base.genus();
        case Kind::Sum: {
            size_t g = 0;
            for (auto& c : n_->children) g += c.genus();
            return g;
        }
        case Kind::Mirror: return n_->children[0].genus();
        case Kind::Multiple: return n_->count * n_->children[0].genus();
    }
    return 0;
}

int Knot::signature_at_sample(const mpq_class& s) const {
    switch (kind()) {
        case Kind::Leaf: return kc::signature_at_sample(n_->base.matrix(), s);
        case Kind::Sum: {
            int v = 0;
            for (auto& c : n_->children) v += c.signature_at_sample(s);
            return v;
        }
        case Kind::Mirror: return -n_->children[0].signature_at_sample(s);
        case Kind::Multiple: return static_cast<int>(n_->count) * n_->children[0].signature_at_sample(s);
    }
    return 0;
}

SignatureProfile Knot::signature_profile() const {
    return build_signature_profile(alexander_factors(), [this](const mpq_class& s) { return signature_at_sample(s); });
}

SignatureIntegral Knot::signature_integral(SignatureConvention conv) const {
    switch (kind()) {
        case Kind::Leaf: return kc::signature_integral(n_->base, conv);
        case Kind::Sum: {
            SignatureIntegral v = kc::signature_integral(SeifertMatrix(), conv);
            for (auto& c : n_->children) v = v + c.signature_integral(conv);
            return v;
        }
        case Kind::Mirror: return -n_->children[0].signature_integral(conv);
        case Kind::Multiple: return n_->children[0].signature_integral(conv).scaled(n_->count);
    }
    return {};
}

// ---------------------------------------------------------------- specs and JSON

namespace {

std::string atom_spec(const Knot& k) {
    std::string s = k.spec();
    if (k.kind() == Knot::Kind::Sum || (k.kind() == Knot::Kind::Multiple && k.alias().empty())) return "(" + s + ")";
    return s;
}

std::string matrix_literal(const IntegerMatrix& m) {
    std::string s = to_string(m);
    std::string out;
    for (char c : s)
        if (c != ' ') out += c;
    return out;
}

}  // namespace

std::string Knot::spec() const {
    if (!n_->alias.empty()) return n_->alias;
    switch (kind()) {
        case Kind::Sum: {
            std::string s;
            for (size_t i = 0; i < n_->children.size(); ++i) s += (i ? " # " : "") + n_->children[i].spec();
            return s;
        }
        case Kind::Mirror: return "-" + atom_spec(n_->children[0]);
        case Kind::Multiple: return std::to_string(n_->count) + "*" + atom_spec(n_->children[0]);
        case Kind::Leaf: break;
    }
    const std::string& f = n_->family;
    std::ostringstream os;
    std::map<size_t, Knot> rest = n_->infections;
    if (f == "unknot" || f == "trefoil") {
        if (rest.empty()) return f;
        os << "seifert(" << matrix_literal(n_->base.matrix());
    } else if (f == "Rm") {
        os << "Rm(m=" << n_->parameter;
    } else if (f == "Dplus" || f == "Dminus") {
        os << f << "(";
        auto it = rest.find(1);
        if (it != rest.end()) {
            os << it->second.spec();
            rest.erase(it);
        } else {
            os << "unknot";
        }
        os << ", " << n_->parameter;
    } else {
        os << "seifert(" << matrix_literal(n_->base.matrix());
    }
    for (auto& [idx, comp] : rest) os << "; " << n_->labels[idx] << "=" << comp.spec();
    os << ")";
    return os.str();
}

json Knot::to_json() const {
    json j;
    switch (kind()) {
        case Kind::Leaf: {
            j["kind"] = "leaf";
            j["family"] = n_->family;
            if (n_->family == "Rm" || n_->family == "Dplus" || n_->family == "Dminus") j["parameter"] = n_->parameter;
            if (!n_->alias.empty()) j["alias"] = n_->alias;
            json rows = json::array();
            const IntegerMatrix& V = n_->base.matrix();
            for (size_t r = 0; r < V.rows(); ++r) {
                json row = json::array();
                for (size_t c = 0; c < V.cols(); ++c) row.push_back(V(r, c).get_si());
                rows.push_back(row);
            }
            j["matrix"] = rows;
            j["curves"] = n_->labels;
            json inf = json::array();
            for (auto& [idx, comp] : n_->infections)
                inf.push_back({{"curve", n_->labels[idx]}, {"index", idx + 1}, {"companion", comp.to_json()}});
            j["infections"] = inf;
            break;
        }
        case Kind::Sum: {
            j["kind"] = "sum";
            json ch = json::array();
            for (auto& c : n_->children) ch.push_back(c.to_json());
            j["children"] = ch;
            break;
        }
        case Kind::Mirror:
            j["kind"] = "mirror";
            j["child"] = n_->children[0].to_json();
            break;
        case Kind::Multiple:
            j["kind"] = "multiple";
            j["count"] = n_->count;
            j["child"] = n_->children[0].to_json();
            if (!n_->alias.empty()) j["alias"] = n_->alias;
            break;
    }
    return j;
}

Knot Knot::from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("knot JSON must be an object");
    if (j.contains("knot")) return from_json(j.at("knot"));
    if (!j.contains("kind")) {
        if (j.contains("spec")) return parse_knot(j.at("spec").get<std::string>());
        if (j.contains("matrix")) {
            json leaf = j;
            leaf["kind"] = "leaf";
            if (!leaf.contains("family")) leaf["family"] = "seifert";
            return from_json(leaf);
        }
        throw std::invalid_argument("knot JSON needs one of 'knot', 'kind', 'spec', 'matrix'");
    }
    std::string kind = j.at("kind").get<std::string>();
    Knot k;
    if (kind == "leaf") {
        const json& rows = j.at("matrix");
        if (!rows.is_array()) throw std::invalid_argument("'matrix' must be an array of rows");
        size_t n = rows.size();
        IntegerMatrix V(n, n);
        for (size_t r = 0; r < n; ++r) {
            if (!rows[r].is_array() || rows[r].size() != n) throw std::invalid_argument("'matrix' must be square");
            for (size_t c = 0; c < n; ++c) {
                const json& e = rows[r][c];
                if (e.is_number_integer()) V(r, c) = mpz_class(e.get<long>());
                else if (e.is_string()) V(r, c) = mpz_class(e.get<std::string>());
                else throw std::invalid_argument("matrix entries must be integers");
            }
        }
        std::vector<std::string> labels;
        if (j.contains("curves")) labels = j.at("curves").get<std::vector<std::string>>();
        std::string fam = j.value("family", std::string("seifert"));
        k = leaf(SeifertMatrix(V, j.value("label", std::string())), labels, fam, j.value("parameter", 0L));
        if (j.contains("infections"))
            for (auto& inf : j.at("infections")) {
                Knot comp = from_json(inf.at("companion"));
                if (inf.contains("curve")) k = infect(k, inf.at("curve").get<std::string>(), comp);
                else k = infect(k, inf.at("index").get<size_t>() - 1, comp);
            }
    } else if (kind == "sum") {
        std::vector<Knot> ch;
        for (auto& c : j.at("children")) ch.push_back(from_json(c));
        k = sum(ch);
    } else if (kind == "mirror") {
        k = mirror(from_json(j.at("child")));
    } else if (kind == "multiple") {
        k = multiple(j.at("count").get<unsigned>(), from_json(j.at("child")));
    } else {
        throw std::invalid_argument("unknown knot kind '" + kind + "'");
    }
    if (j.contains("alias")) k = k.with_alias(j.at("alias").get<std::string>());
    return k;
}

// ---------------------------------------------------------------- families

Knot unknot() { return Knot(); }

Knot trefoil() { return Knot::leaf(SeifertMatrix(IntegerMatrix{{-1, 1}, {0, -1}}, "T23"), {}, "trefoil"); }

Knot make_Rm(long m) {
    if (m < 1 || m % 2 == 0) throw std::invalid_argument("make_Rm: m must be an odd positive integer, got " + std::to_string(m));
    return Knot::leaf(SeifertMatrix(IntegerMatrix{{0, m + 1}, {m, 0}}, "R" + std::to_string(m)), {"aJ", "aD"}, "Rm", m);
}

Knot make_twisted_double(Clasp clasp, const Knot& companion, long twists) {
    long c = clasp == Clasp::Plus ? -1 : 1;
    std::string fam = clasp == Clasp::Plus ? "Dplus" : "Dminus";
    Knot k = Knot::leaf(SeifertMatrix(IntegerMatrix{{c, 1}, {0, twists}}), {"clasp", "band"}, fam, twists);
    return k.with_infection(1, companion);
}

Knot make_D() { return make_twisted_double(Clasp::Plus, trefoil(), 0); }

FamilyParameters family_parameters(long i) {
    if (i < 1) throw std::invalid_argument("family index must be >= 1");
    FamilyParameters f;
    f.i = i;
    long found = 0;
    for (long p = 5;; p += 4) {
        bool prime = true;
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0) {
                prime = false;
                break;
            }
        if (prime && ++found == i) {
            f.p = p;
            break;
        }
    }
    f.k = (f.p - 1) * (f.p - 1) / 8;
    return f;
}

Knot make_Ji(long i) {
    auto f = family_parameters(i);
    Knot comp = Knot::multiple(static_cast<unsigned>(f.k), trefoil());
    return make_twisted_double(Clasp::Minus, comp, 2 * f.k).with_alias("Ji(" + std::to_string(i) + ")");
}

Knot infect(const Knot& base, const std::string& site, const Knot& companion) {
    return base.with_infection(base.curve_index(site), companion);
}

Knot infect(const Knot& base, size_t site, const Knot& companion) { return base.with_infection(site, companion); }

// ---------------------------------------------------------------- parser

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Knot parse() {
        ws();
        if (pos_ == s_.size()) throw ParseError(pos_, "empty knot specification");
        Knot k = parse_sum();
        ws();
        if (pos_ != s_.size()) throw ParseError(pos_, std::string("unexpected '") + s_[pos_] + "'");
        return k;
    }

private:
    struct Arg {
        std::string key;
        size_t pos = 0;
        enum { Int, Matrix, KnotV } type = Int;
        long i = 0;
        IntegerMatrix m;
        Knot k;
    };

    void ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    void expect(char c) {
        if (!peek(c)) throw ParseError(pos_, std::string("expected '") + c + "'");
        ++pos_;
    }
    std::string ident() {
        ws();
        size_t b = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        if (b == pos_) throw ParseError(pos_, "expected a name");
        return s_.substr(b, pos_ - b);
    }
    long integer() {
        ws();
        size_t b = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        size_t d = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (d == pos_) throw ParseError(b, "expected an integer");
        try {
            return std::stol(s_.substr(b, pos_ - b));
        } catch (const std::out_of_range&) {
            throw ParseError(b, "integer out of range");
        }
    }
    // integer literal standing alone as an argument
    bool at_integer_arg() {
        ws();
        size_t p = pos_;
        if (p < s_.size() && (s_[p] == '-' || s_[p] == '+')) ++p;
        size_t d = p;
        while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) ++p;
        if (p == d) return false;
        while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
        return p == s_.size() || s_[p] == ',' || s_[p] == ';' || s_[p] == ')';
    }

    Knot parse_sum() {
        std::vector<Knot> parts{parse_term()};
        while (peek('#')) {
            ++pos_;
            parts.push_back(parse_term());
        }
        return Knot::sum(parts);
    }

    Knot parse_term() {
        ws();
        if (peek('-')) {
            ++pos_;
            return Knot::mirror(parse_term());
        }
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            size_t at = pos_;
            long n = integer();
            if (n < 0) throw ParseError(at, "multiplicity must be nonnegative");
            expect('*');
            return Knot::multiple(static_cast<unsigned>(n), parse_term());
        }
        return parse_atom();
    }

    std::vector<Arg> parse_args() {
        std::vector<Arg> args;
        if (peek(')')) return args;
        for (;;) {
            Arg a;
            ws();
            a.pos = pos_;
            size_t save = pos_;
            if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
                std::string id = ident();
                if (peek('=')) {
                    ++pos_;
                    a.key = id;
                } else {
                    pos_ = save;
                }
            }
            ws();
            if (peek('[')) {
                a.type = Arg::Matrix;
                a.m = matrix();
            } else if (at_integer_arg()) {
                a.type = Arg::Int;
                a.i = integer();
            } else {
                a.type = Arg::KnotV;
                a.k = parse_sum();
            }
            args.push_back(a);
            if (peek(',') || peek(';')) {
                ++pos_;
                continue;
            }
            break;
        }
        return args;
    }

    IntegerMatrix matrix() {
        ws();
        size_t b = pos_;
        int depth = 0;
        do {
            if (pos_ >= s_.size()) throw ParseError(b, "unterminated matrix literal");
            if (s_[pos_] == '[') ++depth;
            if (s_[pos_] == ']') --depth;
            ++pos_;
        } while (depth > 0);
        json j;
        try {
            j = json::parse(s_.substr(b, pos_ - b));
        } catch (const json::exception&) {
            throw ParseError(b, "malformed matrix literal");
        }
        size_t n = j.size();
        IntegerMatrix V(n, n);
        for (size_t r = 0; r < n; ++r) {
            if (!j[r].is_array() || j[r].size() != n) throw ParseError(b, "matrix literal must be square");
            for (size_t c = 0; c < n; ++c) {
                if (!j[r][c].is_number_integer()) throw ParseError(b, "matrix entries must be integers");
                V(r, c) = mpz_class(j[r][c].get<long>());
            }
        }
        return V;
    }

    static const Arg* find(const std::vector<Arg>& args, const std::string& key, size_t positional) {
        for (auto& a : args)
            if (a.key == key) return &a;
        size_t idx = 0;
        for (auto& a : args) {
            if (!a.key.empty()) continue;
            if (idx++ == positional) return &a;
        }
        return nullptr;
    }

    long int_arg(const std::vector<Arg>& args, const std::string& key, size_t positional, size_t at) {
        const Arg* a = find(args, key, positional);
        if (!a) throw ParseError(at, "missing argument '" + key + "'");
        if (a->type != Arg::Int) throw ParseError(a->pos, "argument '" + key + "' must be an integer");
        return a->i;
    }

    Knot knot_arg(const std::vector<Arg>& args, const std::string& key, size_t positional, size_t at) {
        const Arg* a = find(args, key, positional);
        if (!a) throw ParseError(at, "missing argument '" + key + "'");
        if (a->type != Arg::KnotV) throw ParseError(a->pos, "argument '" + key + "' must be a knot");
        return a->k;
    }

    // keyword arguments naming curves infect the leaf
    Knot apply_infections(Knot k, const std::vector<Arg>& args, const std::vector<std::string>& reserved) {
        for (auto& a : args) {
            if (a.key.empty() || std::find(reserved.begin(), reserved.end(), a.key) != reserved.end()) continue;
            if (a.type != Arg::KnotV) throw ParseError(a.pos, "curve argument '" + a.key + "' must be a knot");
            try {
                k = infect(k, a.key, a.k);
            } catch (const std::invalid_argument& e) {
                throw ParseError(a.pos, e.what());
            }
        }
        return k;
    }

    Knot parse_atom() {
        ws();
        if (peek('(')) {
            ++pos_;
            Knot k = parse_sum();
            expect(')');
            return k;
        }
        size_t at = pos_;
        std::string name = ident();
        std::vector<Arg> args;
        bool has_args = false;
        if (peek('(')) {
            ++pos_;
            args = parse_args();
            expect(')');
            has_args = true;
        }
        try {
            if (name == "unknot" || name == "U") return unknot();
            if (name == "trefoil" || name == "T23") return trefoil();
            if (name == "D" && !has_args) return make_D();
            if (name == "Rm") {
                Knot k = make_Rm(int_arg(args, "m", 0, at));
                return apply_infections(k, args, {"m"});
            }
            if (name == "Ji") return make_Ji(int_arg(args, "i", 0, at));
            if (name == "Dplus" || name == "Dminus") {
                Knot comp = knot_arg(args, "companion", 0, at);
                long tw = int_arg(args, "twist", 1, at);
                Knot k = make_twisted_double(name == "Dplus" ? Clasp::Plus : Clasp::Minus, comp, tw);
                return apply_infections(k, args, {"companion", "twist"});
            }
            if (name == "mirror") return Knot::mirror(knot_arg(args, "knot", 0, at));
            if (name == "sum") {
                std::vector<Knot> parts;
                for (auto& a : args) {
                    if (a.type != Arg::KnotV) throw ParseError(a.pos, "sum() takes knots");
                    parts.push_back(a.k);
                }
                return Knot::sum(parts);
            }
            if (name == "seifert") {
                const Arg* a = find(args, "matrix", 0);
                if (!a || a->type != Arg::Matrix) throw ParseError(at, "seifert() needs a matrix literal");
                Knot k = Knot::leaf(SeifertMatrix(a->m), {}, "seifert");
                return apply_infections(k, args, {"matrix"});
            }
        } catch (const std::invalid_argument& e) {
            throw ParseError(at, e.what());
        }
        throw ParseError(at, "unknown knot name '" + name + "'");
    }

    const std::string& s_;
    size_t pos_ = 0;
};

}  // namespace

Knot parse_knot(const std::string& spec) { return Parser(spec).parse(); }

}  // namespace kc
