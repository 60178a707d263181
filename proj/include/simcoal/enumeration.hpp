#pragma once

#include <cstdint>
#include <vector>

#include "simcoal/lts.hpp"
#include "simcoal/relation.hpp"
#include "simcoal/report.hpp"

namespace simcoal::enumeration {

/// Throws BudgetError when `count` exceeds `budget`.
void require_budget(std::uint64_t count, std::uint64_t budget, const char* what);

/// 2^carrier; throws BudgetError when it does not fit in 63 bits.
std::uint64_t subset_count(std::size_t carrier);
/// (2^carrier)^alphabet = 2^(carrier*alphabet), same guard.
std::uint64_t step_fn_count(std::size_t carrier, std::size_t alphabet);
/// codomain^domain, same guard.
std::uint64_t state_map_count(std::size_t domain, std::size_t codomain);
/// 2^(rows*cols), same guard.
std::uint64_t relation_count(std::size_t rows, std::size_t cols);

StateSet subset_from_bits(std::uint64_t bits, std::size_t carrier);
std::uint64_t bits_from_subset(const StateSet& set);

/// Step functions are indexed as alphabet-many subset masks, action 0 in the
/// least significant position.
StepFunction step_fn_from_index(std::uint64_t index, std::size_t carrier, std::size_t alphabet);
std::uint64_t index_of_step_fn(const StepFunction& u);

/// Maps are indexed as base-codomain numerals, domain element 0 least significant.
StateMap state_map_from_index(std::uint64_t index, std::size_t domain, std::size_t codomain);

/// Relations are indexed row-major: bit x*cols + y.
Relation relation_from_bits(std::uint64_t bits, std::size_t rows, std::size_t cols);
std::uint64_t bits_from_relation(const Relation& r);

/// All step functions over one finite carrier, materialized once.
class StepSpace {
public:
    StepSpace(std::size_t carrier, std::size_t alphabet, std::uint64_t budget);

    std::size_t carrier() const { return carrier_; }
    std::size_t alphabet() const { return alphabet_; }
    std::size_t size() const { return fns_.size(); }
    const StepFunction& at(std::size_t i) const { return fns_[i]; }

    /// Index of Ff(u_i) in the step space over f's codomain, for every i.
    std::vector<std::uint64_t> map_along(const StateMap& f) const;

private:
    std::size_t carrier_;
    std::size_t alphabet_;
    std::vector<StepFunction> fns_;
};

} // namespace simcoal::enumeration
