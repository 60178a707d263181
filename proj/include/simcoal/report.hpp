#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "simcoal/lts.hpp"
#include "simcoal/relation.hpp"

namespace simcoal {

/// A total function f : X → Y between finite carriers, as a lookup table.
struct StateMap {
    std::size_t domain_size = 0;
    std::size_t codomain_size = 0;
    std::vector<std::size_t> table;

    StateMap() = default;
    StateMap(std::size_t domain, std::size_t codomain, std::vector<std::size_t> t);

    std::size_t operator()(std::size_t x) const { return table[x]; }

    /// Direct image of a subset of the domain.
    StateSet image(const StateSet& subset) const;
    /// Preimage of a subset of the codomain.
    StateSet preimage(const StateSet& subset) const;
    /// Ff: elementwise image per action.
    StepFunction apply(const StepFunction& u) const;

    bool operator==(const StateMap&) const = default;
};

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

/// Structured counterexample attached to a failing check. Only the fields
/// relevant to the law at hand are present.
struct Witness {
    std::optional<StateMap> f;
    std::optional<StateMap> g;
    std::optional<Relation> rel;
    std::optional<StepFunction> u;
    std::optional<StepFunction> v;
    std::optional<StepFunction> w;
    std::string equation; // law-specific tag, e.g. which inclusion broke

    bool operator==(const Witness&) const = default;
};

/// Outcome of one law check: verdict, parameters, enumeration statistics and,
/// on failure, a self-contained witness.
struct CheckReport {
    std::string law;
    Verdict verdict = Verdict::Pass;
    nlohmann::json params;            // sizes, alphabet, order expressions, budget
    std::string mode = "exhaustive";  // or "sampled"
    std::uint64_t instances = 0;
    std::optional<std::uint64_t> seed;
    std::optional<Witness> witness;
    nlohmann::json details; // law-specific extras (sub-verdicts, precondition results)

    bool passed() const { return verdict == Verdict::Pass; }

    nlohmann::json to_json() const;
    static CheckReport from_json(const nlohmann::json& doc);

    bool operator==(const CheckReport& other) const { return to_json() == other.to_json(); }
};

nlohmann::json step_fn_to_json(const StepFunction& u);
StepFunction step_fn_from_json(const nlohmann::json& doc);
nlohmann::json relation_to_json(const Relation& r);
Relation relation_from_json(const nlohmann::json& doc);
nlohmann::json state_map_to_json(const StateMap& m);
StateMap state_map_from_json(const nlohmann::json& doc);

std::string format_step_fn(const StepFunction& u);
std::string format_report(const CheckReport& r);

} // namespace simcoal
