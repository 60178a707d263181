#include "simcoal/lts.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include <json.hpp>

#include "simcoal/errors.hpp"

namespace simcoal {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool is_plain_label(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace

// --- Lts ---

Lts::Lts(std::size_t state_count, std::vector<std::string> alphabet)
    : state_count_(state_count), alphabet_(std::move(alphabet)) {
    for (std::size_t i = 1; i < alphabet_.size(); ++i)
        if (alphabet_[i - 1] >= alphabet_[i])
            throw std::invalid_argument("Lts: alphabet must be sorted and distinct");
    succ_.assign(state_count_, std::vector<StateSet>(alphabet_.size(), StateSet(state_count_)));
}

void Lts::set_initial(std::size_t s) {
    check_state(s);
    initial_ = s;
}

std::optional<std::size_t> Lts::action_index(const std::string& label) const {
    auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), label);
    if (it == alphabet_.end() || *it != label) return std::nullopt;
    return static_cast<std::size_t>(it - alphabet_.begin());
}

void Lts::add_transition(std::size_t src, std::size_t action, std::size_t dst) {
    check_state(src);
    check_state(dst);
    if (action >= alphabet_.size()) throw std::out_of_range("Lts: action index out of range");
    succ_[src][action].set(dst);
}

const StateSet& Lts::successors(std::size_t s, std::size_t a) const {
    check_state(s);
    if (a >= alphabet_.size()) throw std::out_of_range("Lts: action index out of range");
    return succ_[s][a];
}

std::size_t Lts::transition_count() const {
    std::size_t n = 0;
    for (const auto& per_state : succ_)
        for (const auto& set : per_state) n += set.count();
    return n;
}

std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> Lts::transitions() const {
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> out;
    for (std::size_t s = 0; s < state_count_; ++s)
        for (std::size_t a = 0; a < alphabet_.size(); ++a)
            for (auto d = succ_[s][a].find_first(); d != StateSet::npos; d = succ_[s][a].find_next(d))
                out.emplace_back(s, a, d);
    return out;
}

StepFunction Lts::step_of(std::size_t s) const {
    check_state(s);
    StepFunction f(state_count_, alphabet_.size());
    f.per_action = succ_[s];
    return f;
}

std::vector<std::string> Lts::initials(std::size_t s) const {
    check_state(s);
    std::vector<std::string> out;
    for (std::size_t a = 0; a < alphabet_.size(); ++a)
        if (succ_[s][a].any()) out.push_back(alphabet_[a]);
    return out;
}

void Lts::set_state_labels(std::vector<std::string> labels) {
    if (labels.size() != state_count_)
        throw std::invalid_argument("Lts: one label per state required");
    state_labels_ = std::move(labels);
}

std::optional<std::size_t> Lts::state_by_label(const std::string& label) const {
    for (std::size_t i = 0; i < state_labels_.size(); ++i)
        if (state_labels_[i] == label) return i;
    return std::nullopt;
}

void Lts::check_state(std::size_t s) const {
    if (s >= state_count_) throw std::out_of_range("Lts: state index out of range");
}

// --- ActionPartition / CcPartition ---

void ActionPartition::validate_against(const std::vector<std::string>& alphabet) const {
    std::set<std::string> seen;
    for (const auto* group : {&r, &l, &bi})
        for (const auto& a : *group)
            if (!seen.insert(a).second)
                throw std::invalid_argument("partition classes are not disjoint: " + a);
    std::set<std::string> alpha(alphabet.begin(), alphabet.end());
    if (seen != alpha)
        throw std::invalid_argument("partition does not cover the alphabet exactly");
}

CcPartition CcPartition::bind(const ActionPartition& p, const std::vector<std::string>& alphabet) {
    if (!std::is_sorted(alphabet.begin(), alphabet.end()))
        throw std::invalid_argument("CcPartition::bind: alphabet must be sorted");
    p.validate_against(alphabet);
    CcPartition out{std::vector<Side>(alphabet.size(), Side::Bi)};
    auto index_of = [&](const std::string& label) {
        auto it = std::lower_bound(alphabet.begin(), alphabet.end(), label);
        return static_cast<std::size_t>(it - alphabet.begin());
    };
    for (const auto& a : p.r) out.side[index_of(a)] = Side::R;
    for (const auto& a : p.l) out.side[index_of(a)] = Side::L;
    for (const auto& a : p.bi) out.side[index_of(a)] = Side::Bi;
    return out;
}

std::string CcPartition::to_string() const {
    auto group = [&](Side s) {
        std::string out;
        for (std::size_t a = 0; a < side.size(); ++a) {
            if (side[a] != s) continue;
            if (!out.empty()) out += ",";
            out += std::to_string(a);
        }
        return out;
    };
    return "cc{r=[" + group(Side::R) + "];l=[" + group(Side::L) + "];bi=[" + group(Side::Bi) + "]}";
}

CcPartition CcPartition::parse(const std::string& text) {
    // Inverse of to_string: cc{r=[..];l=[..];bi=[..]} with comma-separated indices.
    auto fail = [&] { throw std::invalid_argument("malformed partition expression: " + text); };
    std::map<std::string, std::vector<std::size_t>> groups;
    if (text.rfind("cc{", 0) != 0 || text.back() != '}') fail();
    std::string body = text.substr(3, text.size() - 4);
    std::stringstream ss(body);
    std::string part;
    while (std::getline(ss, part, ';')) {
        auto eq = part.find("=[");
        if (eq == std::string::npos || part.back() != ']') fail();
        std::string key = part.substr(0, eq);
        std::string items = part.substr(eq + 2, part.size() - eq - 3);
        std::vector<std::size_t> idxs;
        std::stringstream is(items);
        std::string tok;
        while (std::getline(is, tok, ','))
            if (!tok.empty()) idxs.push_back(std::stoul(tok));
        groups[key] = idxs;
    }
    std::size_t n = 0;
    for (const auto& [k, v] : groups)
        for (auto i : v) n = std::max(n, i + 1);
    CcPartition out{std::vector<Side>(n, Side::Bi)};
    std::vector<bool> assigned(n, false);
    auto apply = [&](const std::string& key, Side s) {
        for (auto i : groups[key]) {
            if (assigned[i]) throw std::invalid_argument("partition classes are not disjoint");
            assigned[i] = true;
            out.side[i] = s;
        }
    };
    apply("r", Side::R);
    apply("l", Side::L);
    apply("bi", Side::Bi);
    for (bool b : assigned)
        if (!b) throw std::invalid_argument("partition does not cover the alphabet exactly");
    return out;
}

// --- Aldebaran .aut ---

namespace {

struct AutCursor {
    const std::string& line;
    std::size_t lineno;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < line.size() && line[pos] == c) { ++pos; return true; }
        return false;
    }
    void expect(char c, const char* what) {
        if (!eat(c)) throw ParseError(lineno, std::string("expected '") + c + "' in " + what);
    }
    std::size_t number(const char* what) {
        skip_ws();
        std::size_t start = pos;
        while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos]))) ++pos;
        if (pos == start) throw ParseError(lineno, std::string("expected number in ") + what);
        return std::stoul(line.substr(start, pos - start));
    }
    bool at_end() {
        skip_ws();
        return pos >= line.size();
    }
};

} // namespace

Lts parse_aut(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;

    // Header: des (I, T, N)
    if (!std::getline(in, line)) throw ParseError(1, "malformed header: empty document");
    ++lineno;
    AutCursor h{line, lineno};
    h.skip_ws();
    if (line.compare(h.pos, 3, "des") != 0) throw ParseError(lineno, "malformed header: expected 'des'");
    h.pos += 3;
    h.expect('(', "header");
    std::size_t initial = h.number("header");
    h.expect(',', "header");
    std::size_t declared_transitions = h.number("header");
    h.expect(',', "header");
    std::size_t state_count = h.number("header");
    h.expect(')', "header");
    if (!h.at_end()) throw ParseError(lineno, "malformed header: trailing content");
    if (initial >= state_count)
        throw ParseError(lineno, "initial state index out of range");

    std::vector<std::tuple<std::size_t, std::string, std::size_t>> triples;
    std::vector<std::string> labels;
    while (std::getline(in, line)) {
        ++lineno;
        AutCursor c{line, lineno};
        if (c.at_end()) continue;
        c.expect('(', "transition");
        std::size_t src = c.number("transition");
        c.expect(',', "transition");
        c.skip_ws();
        std::string label;
        if (c.pos < line.size() && line[c.pos] == '"') {
            std::size_t close = line.find('"', c.pos + 1);
            if (close == std::string::npos) throw ParseError(lineno, "unterminated label");
            label = line.substr(c.pos + 1, close - c.pos - 1);
            c.pos = close + 1;
        } else {
            std::size_t start = c.pos;
            while (c.pos < line.size() && line[c.pos] != ',' &&
                   !std::isspace(static_cast<unsigned char>(line[c.pos])))
                ++c.pos;
            label = line.substr(start, c.pos - start);
            if (label.empty()) throw ParseError(lineno, "empty label");
        }
        c.expect(',', "transition");
        std::size_t dst = c.number("transition");
        c.expect(')', "transition");
        if (!c.at_end()) throw ParseError(lineno, "trailing content after transition");
        if (src >= state_count || dst >= state_count)
            throw ParseError(lineno, "state index out of range");
        triples.emplace_back(src, label, dst);
        labels.push_back(label);
    }
    if (triples.size() != declared_transitions)
        throw ParseError(lineno, "transition count mismatch: header declares " +
                                     std::to_string(declared_transitions) + ", found " +
                                     std::to_string(triples.size()));

    Lts lts(state_count, sorted_unique(std::move(labels)));
    for (const auto& [src, label, dst] : triples)
        lts.add_transition(src, *lts.action_index(label), dst);
    lts.set_initial(initial);
    return lts;
}

std::string to_aut(const Lts& lts) {
    std::ostringstream out;
    out << "des (" << lts.initial().value_or(0) << ", " << lts.transition_count() << ", "
        << lts.state_count() << ")\n";
    for (const auto& [src, a, dst] : lts.transitions()) {
        const std::string& label = lts.alphabet()[a];
        out << "(" << src << ", ";
        if (is_plain_label(label))
            out << label;
        else
            out << '"' << label << '"';
        out << ", " << dst << ")\n";
    }
    return out.str();
}

// --- native JSON ---

Lts parse_native(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(1, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("states") || !doc.contains("alphabet") ||
        !doc.contains("transitions"))
        throw std::invalid_argument("native document needs states, alphabet, transitions");
    std::size_t states = doc["states"].get<std::size_t>();
    auto alphabet = sorted_unique(doc["alphabet"].get<std::vector<std::string>>());
    if (alphabet.size() != doc["alphabet"].size())
        throw std::invalid_argument("alphabet contains duplicates");
    Lts lts(states, alphabet);
    for (const auto& t : doc["transitions"]) {
        if (!t.is_array() || t.size() != 3)
            throw std::invalid_argument("transition entries must be [src, label, dst]");
        std::size_t src = t[0].get<std::size_t>();
        std::string label = t[1].get<std::string>();
        std::size_t dst = t[2].get<std::size_t>();
        auto a = lts.action_index(label);
        if (!a) throw std::invalid_argument("transition label not in alphabet: " + label);
        lts.add_transition(src, *a, dst);
    }
    if (doc.contains("initial") && !doc["initial"].is_null())
        lts.set_initial(doc["initial"].get<std::size_t>());
    return lts;
}

std::string to_native(const Lts& lts) {
    nlohmann::json doc;
    doc["states"] = lts.state_count();
    if (lts.initial())
        doc["initial"] = *lts.initial();
    else
        doc["initial"] = nullptr;
    doc["alphabet"] = lts.alphabet();
    auto& ts = doc["transitions"] = nlohmann::json::array();
    for (const auto& [src, a, dst] : lts.transitions())
        ts.push_back({src, lts.alphabet()[a], dst});
    return doc.dump(2) + "\n";
}

// --- term language ---

namespace {

// P ::= "0" | Action "." P | P "+" P | Name;  "." binds tighter than "+".
struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    enum class Kind { Nil, Prefix, Sum, Ref } kind;
    std::string name;           // action for Prefix, constant for Ref
    TermPtr child;              // Prefix
    std::vector<TermPtr> parts; // Sum, flattened
};

std::string term_to_string(const TermPtr& t) {
    switch (t->kind) {
        case Term::Kind::Nil: return "0";
        case Term::Kind::Ref: return t->name;
        case Term::Kind::Prefix: return t->name + "." + term_to_string(t->child);
        case Term::Kind::Sum: {
            std::string out;
            for (std::size_t i = 0; i < t->parts.size(); ++i) {
                if (i) out += " + ";
                out += term_to_string(t->parts[i]);
            }
            return out;
        }
    }
    return {};
}

struct TermToken {
    enum class Kind { Ident, Zero, Dot, Plus, Eq, Semi, End } kind;
    std::string text;
    std::size_t line;
    std::size_t col;
};

class TermLexer {
public:
    explicit TermLexer(const std::string& src) : src_(src) { advance(); }

    const TermToken& peek() const { return tok_; }
    TermToken take() {
        TermToken t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '\n') { ++line_; col_ = 1; ++pos_; continue; }
            if (std::isspace(static_cast<unsigned char>(c))) { ++col_; ++pos_; continue; }
            if (c == '#') { // comment to end of line
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
                continue;
            }
            break;
        }
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) { tok_.kind = TermToken::Kind::End; tok_.text = "<end>"; return; }
        char c = src_[pos_];
        auto single = [&](TermToken::Kind k) {
            tok_.kind = k;
            tok_.text = std::string(1, c);
            ++pos_; ++col_;
        };
        switch (c) {
            case '.': single(TermToken::Kind::Dot); return;
            case '+': single(TermToken::Kind::Plus); return;
            case '=': single(TermToken::Kind::Eq); return;
            case ';': single(TermToken::Kind::Semi); return;
            default: break;
        }
        if (c == '0') { single(TermToken::Kind::Zero); return; }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
                    src_[pos_] == '\''))
                { ++pos_; ++col_; }
            tok_.kind = TermToken::Kind::Ident;
            tok_.text = src_.substr(start, pos_ - start);
            return;
        }
        throw ParseError(line_, "unexpected character '" + std::string(1, c) + "' at column " +
                                    std::to_string(col_));
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    TermToken tok_;
};

class TermParser {
public:
    explicit TermParser(const std::string& src) : lex_(src) {}

    // Returns definitions in source order.
    std::vector<std::pair<std::string, TermPtr>> parse_defs() {
        std::vector<std::pair<std::string, TermPtr>> defs;
        std::set<std::string> names;
        while (lex_.peek().kind != TermToken::Kind::End) {
            TermToken name = expect(TermToken::Kind::Ident, "definition name");
            if (!names.insert(name.text).second)
                throw ParseError(name.line, "duplicate definition: " + name.text);
            expect(TermToken::Kind::Eq, "'='");
            TermPtr body = parse_sum();
            expect(TermToken::Kind::Semi, "';'");
            defs.emplace_back(name.text, body);
        }
        if (defs.empty()) throw ParseError(1, "no definitions");
        return defs;
    }

private:
    TermToken expect(TermToken::Kind k, const char* what) {
        if (lex_.peek().kind != k)
            throw ParseError(lex_.peek().line,
                             std::string("expected ") + what + ", found '" + lex_.peek().text +
                                 "' at column " + std::to_string(lex_.peek().col));
        return lex_.take();
    }

    TermPtr parse_sum() {
        std::vector<TermPtr> parts{parse_factor()};
        while (lex_.peek().kind == TermToken::Kind::Plus) {
            lex_.take();
            TermPtr next = parse_factor();
            // flatten: "+" is associative
            if (next->kind == Term::Kind::Sum)
                parts.insert(parts.end(), next->parts.begin(), next->parts.end());
            else
                parts.push_back(next);
        }
        if (parts.size() == 1) return parts[0];
        auto t = std::make_shared<Term>();
        t->kind = Term::Kind::Sum;
        t->parts = std::move(parts);
        return t;
    }

    TermPtr parse_factor() {
        const TermToken& tok = lex_.peek();
        if (tok.kind == TermToken::Kind::Zero) {
            lex_.take();
            auto t = std::make_shared<Term>();
            t->kind = Term::Kind::Nil;
            return t;
        }
        if (tok.kind == TermToken::Kind::Ident) {
            TermToken id = lex_.take();
            if (lex_.peek().kind == TermToken::Kind::Dot) {
                lex_.take();
                auto t = std::make_shared<Term>();
                t->kind = Term::Kind::Prefix;
                t->name = id.text;
                t->child = parse_factor();
                return t;
            }
            auto t = std::make_shared<Term>();
            t->kind = Term::Kind::Ref;
            t->name = id.text;
            return t;
        }
        throw ParseError(tok.line, "expected '0', action prefix or name, found '" + tok.text +
                                       "' at column " + std::to_string(tok.col));
    }

    TermLexer lex_;
};

// Outgoing transitions of a term, unfolding constants. Unfolding may not pass
// through the same constant twice without a prefix in between.
void term_transitions(const TermPtr& t,
                      const std::map<std::string, TermPtr>& defs,
                      std::set<std::string>& unfolding,
                      std::vector<std::pair<std::string, TermPtr>>& out) {
    switch (t->kind) {
        case Term::Kind::Nil:
            return;
        case Term::Kind::Prefix:
            out.emplace_back(t->name, t->child);
            return;
        case Term::Kind::Sum:
            for (const auto& p : t->parts) term_transitions(p, defs, unfolding, out);
            return;
        case Term::Kind::Ref: {
            auto it = defs.find(t->name);
            if (it == defs.end())
                throw std::invalid_argument("undefined name: " + t->name);
            if (!unfolding.insert(t->name).second)
                throw std::invalid_argument("unguarded recursion through: " + t->name);
            term_transitions(it->second, defs, unfolding, out);
            unfolding.erase(t->name);
            return;
        }
    }
}

} // namespace

Lts parse_term(const std::string& text) {
    TermParser parser(text);
    auto def_list = parser.parse_defs();
    std::map<std::string, TermPtr> defs(def_list.begin(), def_list.end());

    // Initial state is the first-defined constant; reachable terms are states.
    auto root = std::make_shared<Term>();
    root->kind = Term::Kind::Ref;
    root->name = def_list.front().first;

    std::vector<TermPtr> states;
    std::unordered_map<std::string, std::size_t> index_of;
    std::vector<std::tuple<std::size_t, std::string, std::size_t>> triples;

    auto intern = [&](const TermPtr& t) {
        std::string key = term_to_string(t);
        auto [it, inserted] = index_of.emplace(key, states.size());
        if (inserted) states.push_back(t);
        return it->second;
    };

    std::deque<std::size_t> queue{intern(root)};
    std::set<std::size_t> expanded;
    while (!queue.empty()) {
        std::size_t s = queue.front();
        queue.pop_front();
        if (!expanded.insert(s).second) continue;
        std::vector<std::pair<std::string, TermPtr>> moves;
        std::set<std::string> unfolding;
        term_transitions(states[s], defs, unfolding, moves);
        for (const auto& [action, target] : moves) {
            std::size_t d = intern(target);
            triples.emplace_back(s, action, d);
            if (!expanded.count(d)) queue.push_back(d);
        }
    }

    std::vector<std::string> labels;
    for (const auto& [src, a, dst] : triples) labels.push_back(a);
    Lts lts(states.size(), sorted_unique(std::move(labels)));
    for (const auto& [src, a, dst] : triples)
        lts.add_transition(src, *lts.action_index(a), dst);
    lts.set_initial(0);
    std::vector<std::string> names;
    names.reserve(states.size());
    for (const auto& t : states) names.push_back(term_to_string(t));
    lts.set_state_labels(std::move(names));
    return lts;
}

// --- loading / partitions / unification ---

Lts load_lts(const std::string& path) {
    auto dot = path.rfind('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot);
    std::string text = read_file(path);
    if (ext == ".aut") return parse_aut(text);
    if (ext == ".term") return parse_term(text);
    if (ext == ".json") return parse_native(text);
    throw std::invalid_argument("unknown LTS file extension (want .aut, .term or .json): " + path);
}

ActionPartition parse_partition(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("invalid partition JSON: ") + e.what());
    }
    ActionPartition p;
    if (doc.contains("r")) p.r = doc["r"].get<std::vector<std::string>>();
    if (doc.contains("l")) p.l = doc["l"].get<std::vector<std::string>>();
    if (doc.contains("bi")) p.bi = doc["bi"].get<std::vector<std::string>>();
    return p;
}

ActionPartition load_partition(const std::string& path) {
    return parse_partition(read_file(path));
}

bool unify_alphabets(Lts& a, Lts& b) {
    if (a.alphabet() == b.alphabet()) return true;
    std::vector<std::string> merged = a.alphabet();
    merged.insert(merged.end(), b.alphabet().begin(), b.alphabet().end());
    merged = sorted_unique(std::move(merged));
    auto rebuild = [&](const Lts& old) {
        Lts fresh(old.state_count(), merged);
        for (const auto& [src, act, dst] : old.transitions())
            fresh.add_transition(src, *fresh.action_index(old.alphabet()[act]), dst);
        if (old.initial()) fresh.set_initial(*old.initial());
        if (!old.state_labels().empty()) {
            auto labels = old.state_labels();
            fresh.set_state_labels(labels);
        }
        return fresh;
    };
    a = rebuild(a);
    b = rebuild(b);
    return false;
}

} // namespace simcoal
