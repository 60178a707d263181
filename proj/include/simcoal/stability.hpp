#pragma once

#include <cstdint>

#include "simcoal/lifting.hpp"
#include "simcoal/orders.hpp"
#include "simcoal/report.hpp"

namespace simcoal {

inline constexpr std::uint64_t kDefaultStabilityBudget = 10'000'000;

struct StabilityOptions {
    std::uint64_t budget = kDefaultStabilityBudget;
    /// When the instance count exceeds the budget, draw `budget` seeded
    /// uniform samples instead of failing.
    bool allow_sampling = false;
    std::uint64_t seed = 0;
    std::uint64_t lift_budget = kDefaultLiftBudget;
};

/// Right-stability: for every f : X → Y, whenever v ⊑_Y Ff(u) there is some
/// u' with Ff(u') = v and u' ⊑_X u.
CheckReport check_right_stable(const Order& order, std::size_t size_x, std::size_t size_y,
                               std::size_t alphabet, const StabilityOptions& opt = {});

/// Left-stability: for every f : X → Y, whenever Ff(u) ⊑_Y v there is some
/// u' with u ⊑_X u' and Ff(u') = v.
CheckReport check_left_stable(const Order& order, std::size_t size_x, std::size_t size_y,
                              std::size_t alphabet, const StabilityOptions& opt = {});

/// Stability: the lax lifting commutes with substitution along every
/// f : X → Z, g : Y → W and relation R ⊆ Z × W. The inclusion of the lifted
/// pullback in the pullback of the lifting always holds and is asserted; only
/// the converse can genuinely fail.
CheckReport check_stable(const Order& order, std::size_t size_x, std::size_t size_y,
                         std::size_t size_z, std::size_t size_w, std::size_t alphabet,
                         const StabilityOptions& opt = {});

/// Reports separately whether Rel(F)(R) ∘ ⊑_X ⊆ ⊑_Y ∘ Rel(F)(R) (inclusion)
/// and ⊑_Y ∘ Rel(F)(R) ∘ ⊑_X = ⊑_Y ∘ Rel(F)(R) (equality) hold on all
/// enumerated instances.
CheckReport check_interchange(const Order& order, std::size_t size_x, std::size_t size_y,
                              std::size_t alphabet, const StabilityOptions& opt = {});

/// Pointwise equality of the two composites of `a` and `b`.
CheckReport check_commute(const Order& a, const Order& b, std::size_t carrier,
                          std::size_t alphabet, const StabilityOptions& opt = {});

/// Composition laws. With sizes {x, y}: two right-stable (or two left-stable)
/// orders compose to a right-stable (left-stable) order. With sizes
/// {x, y, z, w}: a commuting right-stable/left-stable pair composes to a
/// stable order. Failed preconditions yield an inconclusive verdict.
CheckReport check_composition_stability(const Order& a, const Order& b,
                                        const std::vector<std::size_t>& sizes,
                                        std::size_t alphabet, const StabilityOptions& opt = {});

/// Equality of the full lax lifting of `order` with the factored lifting that
/// applies `x_side` at the source carrier and `y_side` at the target carrier.
CheckReport check_factored_lift(const Order& order, const Order& x_side, const Order& y_side,
                                std::size_t size_x, std::size_t size_y, std::size_t alphabet,
                                const StabilityOptions& opt = {});

/// Instance-by-instance agreement of the stability of `order` at (f, g, R, u, v)
/// with the stability of its opposite at (g, f, Rᵀ, v, u).
CheckReport check_op_duality(const Order& order, std::size_t size_x, std::size_t size_y,
                             std::size_t size_z, std::size_t size_w, std::size_t alphabet,
                             const StabilityOptions& opt = {});

// Single-instance evaluations, shared by the checks, the sampled paths and
// witness re-validation. Each returns whether the law holds at the instance.
bool right_stable_instance(const Order& order, const StateMap& f, const StepFunction& u,
                           const StepFunction& v, std::uint64_t lift_budget = kDefaultLiftBudget);
bool left_stable_instance(const Order& order, const StateMap& f, const StepFunction& u,
                          const StepFunction& v, std::uint64_t lift_budget = kDefaultLiftBudget);
bool stable_instance(const Order& order, const StateMap& f, const StateMap& g, const Relation& rel,
                     const StepFunction& u, const StepFunction& v,
                     std::uint64_t lift_budget = kDefaultLiftBudget);

/// Re-evaluates a fail report's witness against the named law using the base
/// operations; true iff the witness still violates the law.
bool revalidate_witness(const CheckReport& report);

} // namespace simcoal
