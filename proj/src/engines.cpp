#include "simcoal/engines.hpp"

#include <stdexcept>

#include "simcoal/errors.hpp"

namespace simcoal {

namespace {

void check_shared_alphabet(const Lts& x, const Lts& y) {
    if (x.alphabet() != y.alphabet())
        throw std::invalid_argument(
            "engines: the two systems must share an alphabet (unify_alphabets first)");
}

std::vector<StepFunction> all_steps(const Lts& lts) {
    std::vector<StepFunction> out;
    out.reserve(lts.state_count());
    for (std::size_t s = 0; s < lts.state_count(); ++s) out.push_back(lts.step_of(s));
    return out;
}

} // namespace

RefineResult refine_to_fixpoint(std::size_t states_x, std::size_t states_y,
                                const StepPredicate& predicate) {
    RefineResult result;
    result.relation = Relation::full(states_x, states_y);
    result.sizes.push_back(result.relation.pair_count());
    while (true) {
        ++result.sweeps;
        std::vector<std::pair<std::size_t, std::size_t>> doomed;
        for (const auto& [x, y] : result.relation.pairs())
            if (!predicate(result.relation, x, y)) doomed.emplace_back(x, y);
        if (doomed.empty()) break;
        for (const auto& [x, y] : doomed) result.relation.set(x, y, false);
        result.sizes.push_back(result.relation.pair_count());
    }
    return result;
}

StepPredicate classical_step_predicate(const Lts& x, const Lts& y, const Semantics& semantics) {
    check_shared_alphabet(x, y);
    if (semantics.kind == Semantics::Kind::Cc &&
        semantics.partition->alphabet_size() != x.alphabet_size())
        throw std::invalid_argument("engines: partition does not match the alphabet");
    return [steps_x = all_steps(x), steps_y = all_steps(y), semantics](
               const Relation& rel, std::size_t sx, std::size_t sy) {
        return lax_lift_fast(semantics, rel, steps_x[sx], steps_y[sy]);
    };
}

StepPredicate coalgebraic_step_predicate(const Lts& x, const Lts& y, const Order& order,
                                         LiftMode mode, std::uint64_t budget) {
    check_shared_alphabet(x, y);
    if (mode == LiftMode::Fast) {
        if (auto semantics = order.fast_semantics())
            return classical_step_predicate(x, y, *semantics);
    }
    return [steps_x = all_steps(x), steps_y = all_steps(y), order, budget](
               const Relation& rel, std::size_t sx, std::size_t sy) {
        return lax_lift_generic(order, rel, steps_x[sx], steps_y[sy], budget);
    };
}

Relation greatest_classical_sim(const Lts& x, const Lts& y, const Semantics& semantics) {
    return refine_to_fixpoint(x.state_count(), y.state_count(),
                              classical_step_predicate(x, y, semantics))
        .relation;
}

Relation greatest_coalgebraic_sim(const Lts& x, const Lts& y, const Order& order, LiftMode mode,
                                  std::uint64_t budget) {
    return refine_to_fixpoint(x.state_count(), y.state_count(),
                              coalgebraic_step_predicate(x, y, order, mode, budget))
        .relation;
}

Relation greatest_bisimulation(const Lts& x, const Lts& y) {
    return greatest_classical_sim(x, y, Semantics::bisimulation());
}

Relation brute_force_similarity(const Lts& x, const Lts& y, const StepPredicate& predicate) {
    const std::size_t nx = x.state_count();
    const std::size_t ny = y.state_count();
    if (nx * ny > 16)
        throw BudgetError("brute_force_similarity: " + std::to_string(nx * ny) +
                          " state pairs exceed the cap of 16");
    check_shared_alphabet(x, y);

    const std::uint64_t count = std::uint64_t{1} << (nx * ny);
    auto build = [&](std::uint64_t bits) {
        Relation rel(nx, ny);
        for (std::size_t i = 0; i < nx * ny; ++i)
            if (bits & (std::uint64_t{1} << i)) rel.set(i / ny, i % ny);
        return rel;
    };
    auto closed = [&](const Relation& rel) {
        for (const auto& [sx, sy] : rel.pairs())
            if (!predicate(rel, sx, sy)) return false;
        return true;
    };

    std::uint64_t union_bits = 0;
    for (std::uint64_t bits = 0; bits < count; ++bits)
        if (closed(build(bits))) union_bits |= bits;
    Relation result = build(union_bits);
    if (!closed(result))
        throw std::logic_error("brute_force_similarity: union of closed relations is not closed");
    return result;
}

bool holds(const Lts& x, std::size_t state_x, const Lts& y, std::size_t state_y,
           const Semantics& semantics) {
    return greatest_classical_sim(x, y, semantics).at(state_x, state_y);
}

bool holds(const Lts& x, std::size_t state_x, const Lts& y, std::size_t state_y,
           const Order& order, LiftMode mode, std::uint64_t budget) {
    return greatest_coalgebraic_sim(x, y, order, mode, budget).at(state_x, state_y);
}

} // namespace simcoal
