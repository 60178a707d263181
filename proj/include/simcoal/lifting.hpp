#pragma once

#include <cstdint>

#include "simcoal/orders.hpp"
#include "simcoal/relation.hpp"

namespace simcoal {

/// Cap on the product of the two step-function space sizes searched by the
/// generic lax lifting. Sized so that two four-state systems over a
/// three-action alphabet still fit.
inline constexpr std::uint64_t kDefaultLiftBudget = std::uint64_t{1} << 24;

/// Relation lifting Rel(P^A)(R): per action, every element of u(a) is related
/// to some element of v(a) and vice versa.
bool rel_lift(const Relation& rel, const StepFunction& u, const StepFunction& v);

/// Lax relation lifting ⊑_Y ∘ Rel(F)(R) ∘ ⊑_X, decided by complete search over
/// the finite step-function spaces: true iff there are u', v' with u ⊑ u',
/// rel_lift(R, u', v') and v' ⊑ v.
bool lax_lift_generic(const Order& order, const Relation& rel, const StepFunction& u,
                      const StepFunction& v, std::uint64_t budget = kDefaultLiftBudget);

/// Factored lifting with a different order on each side: the x-side order is
/// applied at the source carrier, the y-side order at the target carrier.
bool lax_lift_two(const Order& x_side, const Order& y_side, const Relation& rel,
                  const StepFunction& u, const StepFunction& v,
                  std::uint64_t budget = kDefaultLiftBudget);

/// Direct step-clause decision for the named classical semantics; agrees with
/// lax_lift_generic on the matching order.
bool lax_lift_fast(const Semantics& semantics, const Relation& rel, const StepFunction& u,
                   const StepFunction& v);

} // namespace simcoal
