#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "simcoal/relation.hpp"

namespace simcoal {

/// One element of FX = P(X)^A: the per-action successor-set map of a state.
struct StepFunction {
    std::size_t carrier_size = 0;
    std::vector<StateSet> per_action; // indexed by action, each a subset of the carrier

    StepFunction() = default;
    StepFunction(std::size_t carrier, std::size_t alphabet)
        : carrier_size(carrier), per_action(alphabet, StateSet(carrier)) {}

    std::size_t alphabet_size() const { return per_action.size(); }

    bool operator==(const StepFunction& other) const {
        return carrier_size == other.carrier_size && per_action == other.per_action;
    }
    bool operator!=(const StepFunction& other) const { return !(*this == other); }
};

/// A finite labeled transition system: the coalgebra c : X → P(X)^A.
/// States are dense integer indices; action labels are metadata resolved
/// through a sorted alphabet.
class Lts {
public:
    Lts() = default;
    Lts(std::size_t state_count, std::vector<std::string> alphabet);

    std::size_t state_count() const { return state_count_; }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    std::size_t alphabet_size() const { return alphabet_.size(); }

    std::optional<std::size_t> initial() const { return initial_; }
    void set_initial(std::size_t s);

    std::optional<std::size_t> action_index(const std::string& label) const;

    void add_transition(std::size_t src, std::size_t action, std::size_t dst);

    /// Successor set of state s under action a; absent transitions are the empty set.
    const StateSet& successors(std::size_t s, std::size_t a) const;

    std::size_t transition_count() const;
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> transitions() const;

    /// The coalgebra map at s: per-action successor sets over the full carrier.
    StepFunction step_of(std::size_t s) const;

    /// Actions enabled at s (those with a nonempty successor set), as labels.
    std::vector<std::string> initials(std::size_t s) const;

    /// Optional per-state display names (set by the term parser; empty otherwise).
    const std::vector<std::string>& state_labels() const { return state_labels_; }
    void set_state_labels(std::vector<std::string> labels);
    std::optional<std::size_t> state_by_label(const std::string& label) const;

private:
    void check_state(std::size_t s) const;

    std::size_t state_count_ = 0;
    std::vector<std::string> alphabet_;
    std::vector<std::vector<StateSet>> succ_; // [state][action]
    std::optional<std::size_t> initial_;
    std::vector<std::string> state_labels_;
};

/// A partition of an alphabet into covariant (r), contravariant (l) and
/// bisimulation-like (bi) action classes.
struct ActionPartition {
    std::vector<std::string> r;
    std::vector<std::string> l;
    std::vector<std::string> bi;

    /// Checks pairwise disjointness and exact coverage of `alphabet`.
    void validate_against(const std::vector<std::string>& alphabet) const;
};

/// Index-level form of an ActionPartition, bound to a concrete alphabet size.
struct CcPartition {
    enum class Side : std::uint8_t { R, L, Bi };
    std::vector<Side> side; // one entry per action index

    std::size_t alphabet_size() const { return side.size(); }
    bool covariant(std::size_t a) const { return side[a] != Side::L; }     // r ∪ bi
    bool contravariant(std::size_t a) const { return side[a] != Side::R; } // l ∪ bi

    static CcPartition bind(const ActionPartition& p, const std::vector<std::string>& alphabet);
    /// All actions in one class.
    static CcPartition uniform(std::size_t alphabet, Side s) {
        return CcPartition{std::vector<Side>(alphabet, s)};
    }

    bool operator==(const CcPartition&) const = default;
    std::string to_string() const;
    static CcPartition parse(const std::string& text);
};

// --- input/output formats ---

/// Parses an Aldebaran .aut document.
Lts parse_aut(const std::string& text);
std::string to_aut(const Lts& lts);

/// Parses the native JSON document (states / initial / alphabet / transitions).
Lts parse_native(const std::string& text);
std::string to_native(const Lts& lts);

/// Parses a process-term definition list and returns the reachable-state LTS
/// of the first definition.
Lts parse_term(const std::string& defs);

/// Loads an LTS choosing the parser by file extension (.aut, .term, .json).
Lts load_lts(const std::string& path);

ActionPartition parse_partition(const std::string& text);
ActionPartition load_partition(const std::string& path);

/// Rebuilds both systems over the union of their alphabets; missing actions
/// get empty successor sets. Returns whether the alphabets already agreed.
bool unify_alphabets(Lts& a, Lts& b);

} // namespace simcoal
