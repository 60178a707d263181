#include "simcoal/lifting.hpp"

#include <stdexcept>

#include "simcoal/enumeration.hpp"
#include "simcoal/errors.hpp"

namespace simcoal {

namespace {

void check_dims(const Relation& rel, const StepFunction& u, const StepFunction& v) {
    if (u.carrier_size != rel.rows() || v.carrier_size != rel.cols())
        throw std::invalid_argument("lifting: step-function carriers do not match the relation");
    if (u.alphabet_size() != v.alphabet_size())
        throw std::invalid_argument("lifting: alphabet mismatch");
}

bool covers_forward(const Relation& rel, const StateSet& left, const StateSet& right) {
    for (auto x = left.find_first(); x != StateSet::npos; x = left.find_next(x))
        if (!rel.row(x).intersects(right)) return false;
    return true;
}

bool covers_backward(const Relation& rel, const StateSet& left, const StateSet& right) {
    for (auto y = right.find_first(); y != StateSet::npos; y = right.find_next(y))
        if (!rel.col(y).intersects(left)) return false;
    return true;
}

} // namespace

bool rel_lift(const Relation& rel, const StepFunction& u, const StepFunction& v) {
    check_dims(rel, u, v);
    for (std::size_t a = 0; a < u.alphabet_size(); ++a) {
        if (!covers_forward(rel, u.per_action[a], v.per_action[a])) return false;
        if (!covers_backward(rel, u.per_action[a], v.per_action[a])) return false;
    }
    return true;
}

bool lax_lift_two(const Order& x_side, const Order& y_side, const Relation& rel,
                  const StepFunction& u, const StepFunction& v, std::uint64_t budget) {
    check_dims(rel, u, v);
    const std::size_t alphabet = u.alphabet_size();
    std::uint64_t nx = enumeration::step_fn_count(u.carrier_size, alphabet);
    std::uint64_t ny = enumeration::step_fn_count(v.carrier_size, alphabet);
    if (ny != 0 && nx > budget / ny)
        throw BudgetError("budget exceeded: lax lifting witness search over " +
                          std::to_string(nx) + " x " + std::to_string(ny) + " step functions");

    // Candidates v' with v' ⊑_Y v, collected once.
    std::vector<StepFunction> v_candidates;
    for (std::uint64_t j = 0; j < ny; ++j) {
        StepFunction vp = enumeration::step_fn_from_index(j, v.carrier_size, alphabet);
        if (y_side.leq(vp, v, budget)) v_candidates.push_back(std::move(vp));
    }
    for (std::uint64_t i = 0; i < nx; ++i) {
        StepFunction up = enumeration::step_fn_from_index(i, u.carrier_size, alphabet);
        if (!x_side.leq(u, up, budget)) continue;
        for (const StepFunction& vp : v_candidates)
            if (rel_lift(rel, up, vp)) return true;
    }
    return false;
}

bool lax_lift_generic(const Order& order, const Relation& rel, const StepFunction& u,
                      const StepFunction& v, std::uint64_t budget) {
    return lax_lift_two(order, order, rel, u, v, budget);
}

bool lax_lift_fast(const Semantics& semantics, const Relation& rel, const StepFunction& u,
                   const StepFunction& v) {
    check_dims(rel, u, v);
    const std::size_t alphabet = u.alphabet_size();
    switch (semantics.kind) {
        case Semantics::Kind::Plain:
            for (std::size_t a = 0; a < alphabet; ++a)
                if (!covers_forward(rel, u.per_action[a], v.per_action[a])) return false;
            return true;
        case Semantics::Kind::Reverse:
            for (std::size_t a = 0; a < alphabet; ++a)
                if (!covers_backward(rel, u.per_action[a], v.per_action[a])) return false;
            return true;
        case Semantics::Kind::Cc: {
            const CcPartition& p = *semantics.partition;
            if (p.alphabet_size() != alphabet)
                throw std::invalid_argument("lax_lift_fast: partition alphabet mismatch");
            for (std::size_t a = 0; a < alphabet; ++a) {
                if (p.covariant(a) && !covers_forward(rel, u.per_action[a], v.per_action[a]))
                    return false;
                if (p.contravariant(a) && !covers_backward(rel, u.per_action[a], v.per_action[a]))
                    return false;
            }
            return true;
        }
        case Semantics::Kind::Conformance:
            for (std::size_t a = 0; a < alphabet; ++a) {
                if (u.per_action[a].none()) continue;
                if (v.per_action[a].none()) return false;
                if (!covers_backward(rel, u.per_action[a], v.per_action[a])) return false;
            }
            return true;
        case Semantics::Kind::Bisimulation:
            return rel_lift(rel, u, v);
    }
    return false;
}

} // namespace simcoal
