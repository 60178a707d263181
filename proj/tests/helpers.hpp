#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "simcoal/engines.hpp"
#include "simcoal/lts.hpp"

namespace simcoal::testing {

// rng() % n instead of uniform_int_distribution keeps sequences identical
// across standard libraries.
inline std::size_t rand_below(std::mt19937_64& rng, std::size_t n) {
    return n == 0 ? 0 : static_cast<std::size_t>(rng() % n);
}

inline std::vector<std::string> letters(std::size_t k) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < k; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
    return out;
}

inline Lts random_lts(std::mt19937_64& rng, std::size_t max_states, std::size_t alphabet,
                      std::size_t density_pct = 30) {
    std::size_t n = 1 + rand_below(rng, max_states);
    Lts lts(n, letters(alphabet));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t a = 0; a < alphabet; ++a)
            for (std::size_t d = 0; d < n; ++d)
                if (rand_below(rng, 100) < density_pct) lts.add_transition(s, a, d);
    lts.set_initial(0);
    return lts;
}

// Exhaustive family of all LTSs with exactly n states over k actions:
// 2^(n*n*k) successor configurations.
inline std::uint64_t lts_family_count(std::size_t n, std::size_t k) {
    return std::uint64_t{1} << (n * n * k);
}

inline Lts lts_from_index(std::uint64_t index, std::size_t n, std::size_t k) {
    Lts lts(n, letters(k));
    std::size_t bit = 0;
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t d = 0; d < n; ++d, ++bit)
                if (index & (std::uint64_t{1} << bit)) lts.add_transition(s, a, d);
    lts.set_initial(0);
    return lts;
}

inline std::vector<Lts> lts_family_up_to(std::size_t max_states, std::size_t k) {
    std::vector<Lts> out;
    for (std::size_t n = 1; n <= max_states; ++n)
        for (std::uint64_t i = 0; i < lts_family_count(n, k); ++i)
            out.push_back(lts_from_index(i, n, k));
    return out;
}

// The four engines of the agreement property. Returns true when they all
// produce the same relation.
inline bool engines_agree(const Lts& x, const Lts& y, const Semantics& semantics,
                          std::uint64_t budget = kDefaultLiftBudget) {
    Order order = semantics.order();
    Relation classical = greatest_classical_sim(x, y, semantics);
    Relation fast = greatest_coalgebraic_sim(x, y, order, LiftMode::Fast, budget);
    Relation generic = greatest_coalgebraic_sim(x, y, order, LiftMode::Generic, budget);
    Relation brute = brute_force_similarity(x, y, classical_step_predicate(x, y, semantics));
    return classical == fast && classical == generic && classical == brute;
}

inline CcPartition cc_r_a_l_b() {
    return CcPartition{{CcPartition::Side::R, CcPartition::Side::L}};
}

} // namespace simcoal::testing
