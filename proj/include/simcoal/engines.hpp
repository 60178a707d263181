#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "simcoal/lifting.hpp"
#include "simcoal/lts.hpp"
#include "simcoal/orders.hpp"
#include "simcoal/relation.hpp"

namespace simcoal {

enum class LiftMode { Fast, Generic };

/// Decides whether a pair may stay in the candidate relation given the current
/// relation between successors.
using StepPredicate = std::function<bool(const Relation&, std::size_t, std::size_t)>;

struct RefineResult {
    Relation relation;
    std::size_t sweeps = 0;
    /// Pair count after every sweep, starting with the full relation.
    std::vector<std::size_t> sizes;
};

/// Greatest fixed point by pair deletion: start from the full relation and
/// repeatedly drop every pair whose step clauses fail under the current
/// relation, until a sweep removes nothing.
RefineResult refine_to_fixpoint(std::size_t states_x, std::size_t states_y,
                                const StepPredicate& predicate);

StepPredicate classical_step_predicate(const Lts& x, const Lts& y, const Semantics& semantics);
StepPredicate coalgebraic_step_predicate(const Lts& x, const Lts& y, const Order& order,
                                         LiftMode mode, std::uint64_t budget = kDefaultLiftBudget);

/// Largest relation closed under the classical step clauses of `semantics`.
/// Requires identical alphabets (unify_alphabets first when needed).
Relation greatest_classical_sim(const Lts& x, const Lts& y, const Semantics& semantics);

/// Greatest fixed point of R ↦ {(x,y) | (c(x), d(y)) ∈ lax lifting of R}.
/// Fast mode dispatches to the step-clause decision whenever the order has
/// one; generic mode always runs the complete witness search.
Relation greatest_coalgebraic_sim(const Lts& x, const Lts& y, const Order& order, LiftMode mode,
                                  std::uint64_t budget = kDefaultLiftBudget);

/// Greatest bisimulation, as the fixed point of the symmetric step clauses.
Relation greatest_bisimulation(const Lts& x, const Lts& y);

/// Union of every relation closed under `predicate`, by enumeration of all
/// 2^(|X|*|Y|) relations. Requires |X|*|Y| <= 16. The returned union is
/// verified closed.
Relation brute_force_similarity(const Lts& x, const Lts& y, const StepPredicate& predicate);

bool holds(const Lts& x, std::size_t state_x, const Lts& y, std::size_t state_y,
           const Semantics& semantics);
bool holds(const Lts& x, std::size_t state_x, const Lts& y, std::size_t state_y,
           const Order& order, LiftMode mode = LiftMode::Fast,
           std::uint64_t budget = kDefaultLiftBudget);

} // namespace simcoal
