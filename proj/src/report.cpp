#include "simcoal/report.hpp"

#include <sstream>
#include <stdexcept>

namespace simcoal {

StateMap::StateMap(std::size_t domain, std::size_t codomain, std::vector<std::size_t> t)
    : domain_size(domain), codomain_size(codomain), table(std::move(t)) {
    if (table.size() != domain_size)
        throw std::invalid_argument("StateMap: table length must equal domain size");
    for (std::size_t y : table)
        if (y >= codomain_size) throw std::invalid_argument("StateMap: entry out of codomain");
}

StateSet StateMap::image(const StateSet& subset) const {
    StateSet out(codomain_size);
    for (auto x = subset.find_first(); x != StateSet::npos; x = subset.find_next(x))
        out.set(table[x]);
    return out;
}

StateSet StateMap::preimage(const StateSet& subset) const {
    StateSet out(domain_size);
    for (std::size_t x = 0; x < domain_size; ++x)
        if (subset.test(table[x])) out.set(x);
    return out;
}

StepFunction StateMap::apply(const StepFunction& u) const {
    if (u.carrier_size != domain_size)
        throw std::invalid_argument("StateMap::apply: carrier mismatch");
    StepFunction out(codomain_size, u.alphabet_size());
    for (std::size_t a = 0; a < u.alphabet_size(); ++a) out.per_action[a] = image(u.per_action[a]);
    return out;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

Verdict verdict_from_string(const std::string& s) {
    if (s == "pass") return Verdict::Pass;
    if (s == "fail") return Verdict::Fail;
    if (s == "inconclusive") return Verdict::Inconclusive;
    throw std::invalid_argument("unknown verdict: " + s);
}

nlohmann::json step_fn_to_json(const StepFunction& u) {
    nlohmann::json doc;
    doc["carrier"] = u.carrier_size;
    auto& pa = doc["per_action"] = nlohmann::json::array();
    for (const auto& set : u.per_action) {
        nlohmann::json members = nlohmann::json::array();
        for (auto x = set.find_first(); x != StateSet::npos; x = set.find_next(x))
            members.push_back(x);
        pa.push_back(members);
    }
    return doc;
}

StepFunction step_fn_from_json(const nlohmann::json& doc) {
    StepFunction u(doc.at("carrier").get<std::size_t>(), doc.at("per_action").size());
    std::size_t a = 0;
    for (const auto& members : doc.at("per_action")) {
        for (const auto& x : members) u.per_action[a].set(x.get<std::size_t>());
        ++a;
    }
    return u;
}

nlohmann::json relation_to_json(const Relation& r) {
    nlohmann::json doc;
    doc["rows"] = r.rows();
    doc["cols"] = r.cols();
    auto& pairs = doc["pairs"] = nlohmann::json::array();
    for (const auto& [x, y] : r.pairs()) pairs.push_back({x, y});
    return doc;
}

Relation relation_from_json(const nlohmann::json& doc) {
    Relation r(doc.at("rows").get<std::size_t>(), doc.at("cols").get<std::size_t>());
    for (const auto& p : doc.at("pairs")) r.set(p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
    return r;
}

nlohmann::json state_map_to_json(const StateMap& m) {
    return {{"domain", m.domain_size}, {"codomain", m.codomain_size}, {"table", m.table}};
}

StateMap state_map_from_json(const nlohmann::json& doc) {
    return StateMap(doc.at("domain").get<std::size_t>(), doc.at("codomain").get<std::size_t>(),
                    doc.at("table").get<std::vector<std::size_t>>());
}

namespace {

nlohmann::json witness_to_json(const Witness& w) {
    nlohmann::json doc = nlohmann::json::object();
    if (w.f) doc["f"] = state_map_to_json(*w.f);
    if (w.g) doc["g"] = state_map_to_json(*w.g);
    if (w.rel) doc["relation"] = relation_to_json(*w.rel);
    if (w.u) doc["u"] = step_fn_to_json(*w.u);
    if (w.v) doc["v"] = step_fn_to_json(*w.v);
    if (w.w) doc["w"] = step_fn_to_json(*w.w);
    if (!w.equation.empty()) doc["equation"] = w.equation;
    return doc;
}

Witness witness_from_json(const nlohmann::json& doc) {
    Witness w;
    if (doc.contains("f")) w.f = state_map_from_json(doc["f"]);
    if (doc.contains("g")) w.g = state_map_from_json(doc["g"]);
    if (doc.contains("relation")) w.rel = relation_from_json(doc["relation"]);
    if (doc.contains("u")) w.u = step_fn_from_json(doc["u"]);
    if (doc.contains("v")) w.v = step_fn_from_json(doc["v"]);
    if (doc.contains("w")) w.w = step_fn_from_json(doc["w"]);
    if (doc.contains("equation")) w.equation = doc["equation"].get<std::string>();
    return w;
}

} // namespace

nlohmann::json CheckReport::to_json() const {
    nlohmann::json doc;
    doc["law"] = law;
    doc["verdict"] = to_string(verdict);
    doc["params"] = params.is_null() ? nlohmann::json::object() : params;
    doc["mode"] = mode;
    doc["instances"] = instances;
    if (seed) doc["seed"] = *seed;
    if (witness) doc["witness"] = witness_to_json(*witness);
    if (!details.is_null() && !details.empty()) doc["details"] = details;
    return doc;
}

CheckReport CheckReport::from_json(const nlohmann::json& doc) {
    CheckReport r;
    r.law = doc.at("law").get<std::string>();
    r.verdict = verdict_from_string(doc.at("verdict").get<std::string>());
    r.params = doc.value("params", nlohmann::json::object());
    r.mode = doc.value("mode", "exhaustive");
    r.instances = doc.value("instances", std::uint64_t{0});
    if (doc.contains("seed")) r.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("witness")) r.witness = witness_from_json(doc["witness"]);
    r.details = doc.value("details", nlohmann::json::object());
    return r;
}

std::string format_step_fn(const StepFunction& u) {
    std::ostringstream out;
    out << "{";
    for (std::size_t a = 0; a < u.alphabet_size(); ++a) {
        if (a) out << ", ";
        out << "a" << a << " -> {";
        bool first = true;
        for (auto x = u.per_action[a].find_first(); x != StateSet::npos;
             x = u.per_action[a].find_next(x)) {
            if (!first) out << ",";
            out << x;
            first = false;
        }
        out << "}";
    }
    out << "}";
    return out.str();
}

std::string format_report(const CheckReport& r) {
    std::ostringstream out;
    out << "law: " << r.law << "\n";
    for (auto it = r.params.begin(); it != r.params.end(); ++it)
        out << "  " << it.key() << ": " << it.value().dump() << "\n";
    out << "verdict: " << to_string(r.verdict) << " (" << r.mode << ", " << r.instances
        << " instances";
    if (r.seed) out << ", seed " << *r.seed;
    out << ")\n";
    if (!r.details.is_null() && !r.details.empty()) out << "details: " << r.details.dump() << "\n";
    if (r.witness) {
        const Witness& w = *r.witness;
        out << "witness:\n";
        if (!w.equation.empty()) out << "  equation: " << w.equation << "\n";
        auto show_map = [&](const char* name, const StateMap& m) {
            out << "  " << name << ": [";
            for (std::size_t i = 0; i < m.table.size(); ++i) {
                if (i) out << ",";
                out << m.table[i];
            }
            out << "]  (" << m.domain_size << " -> " << m.codomain_size << ")\n";
        };
        if (w.f) show_map("f", *w.f);
        if (w.g) show_map("g", *w.g);
        if (w.rel) {
            out << "  R: {";
            bool first = true;
            for (const auto& [x, y] : w.rel->pairs()) {
                if (!first) out << ", ";
                out << "(" << x << "," << y << ")";
                first = false;
            }
            out << "}  (" << w.rel->rows() << "x" << w.rel->cols() << ")\n";
        }
        if (w.u) out << "  u: " << format_step_fn(*w.u) << "\n";
        if (w.v) out << "  v: " << format_step_fn(*w.v) << "\n";
        if (w.w) out << "  w: " << format_step_fn(*w.w) << "\n";
    }
    return out.str();
}

} // namespace simcoal
