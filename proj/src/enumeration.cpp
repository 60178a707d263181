#include "simcoal/enumeration.hpp"

#include <stdexcept>
#include <string>

#include "simcoal/errors.hpp"

namespace simcoal::enumeration {

void require_budget(std::uint64_t count, std::uint64_t budget, const char* what) {
    if (count > budget)
        throw BudgetError(std::string("budget exceeded: ") + what + " needs " +
                          std::to_string(count) + " instances, cap is " + std::to_string(budget));
}

namespace {

std::uint64_t pow2_checked(std::size_t bits, const char* what) {
    if (bits >= 63) throw BudgetError(std::string("budget exceeded: ") + what + " space too large");
    return std::uint64_t{1} << bits;
}

} // namespace

std::uint64_t subset_count(std::size_t carrier) { return pow2_checked(carrier, "subset"); }

std::uint64_t step_fn_count(std::size_t carrier, std::size_t alphabet) {
    return pow2_checked(carrier * alphabet, "step-function");
}

std::uint64_t state_map_count(std::size_t domain, std::size_t codomain) {
    if (domain == 0) return 1;
    if (codomain == 0) throw std::invalid_argument("no maps into an empty codomain");
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < domain; ++i) {
        if (n > (std::uint64_t{1} << 62) / codomain)
            throw BudgetError("budget exceeded: state-map space too large");
        n *= codomain;
    }
    return n;
}

std::uint64_t relation_count(std::size_t rows, std::size_t cols) {
    return pow2_checked(rows * cols, "relation");
}

StateSet subset_from_bits(std::uint64_t bits, std::size_t carrier) {
    StateSet s(carrier);
    for (std::size_t i = 0; i < carrier; ++i)
        if (bits & (std::uint64_t{1} << i)) s.set(i);
    return s;
}

std::uint64_t bits_from_subset(const StateSet& set) {
    std::uint64_t bits = 0;
    for (auto x = set.find_first(); x != StateSet::npos; x = set.find_next(x))
        bits |= std::uint64_t{1} << x;
    return bits;
}

StepFunction step_fn_from_index(std::uint64_t index, std::size_t carrier, std::size_t alphabet) {
    StepFunction u(carrier, alphabet);
    std::uint64_t mask = subset_count(carrier) - 1;
    for (std::size_t a = 0; a < alphabet; ++a)
        u.per_action[a] = subset_from_bits((index >> (a * carrier)) & mask, carrier);
    return u;
}

std::uint64_t index_of_step_fn(const StepFunction& u) {
    std::uint64_t index = 0;
    for (std::size_t a = 0; a < u.alphabet_size(); ++a)
        index |= bits_from_subset(u.per_action[a]) << (a * u.carrier_size);
    return index;
}

StateMap state_map_from_index(std::uint64_t index, std::size_t domain, std::size_t codomain) {
    std::vector<std::size_t> table(domain);
    for (std::size_t x = 0; x < domain; ++x) {
        table[x] = static_cast<std::size_t>(index % codomain);
        index /= codomain;
    }
    return StateMap(domain, codomain, std::move(table));
}

Relation relation_from_bits(std::uint64_t bits, std::size_t rows, std::size_t cols) {
    Relation r(rows, cols);
    for (std::size_t x = 0; x < rows; ++x)
        for (std::size_t y = 0; y < cols; ++y)
            if (bits & (std::uint64_t{1} << (x * cols + y))) r.set(x, y);
    return r;
}

std::uint64_t bits_from_relation(const Relation& r) {
    std::uint64_t bits = 0;
    for (const auto& [x, y] : r.pairs()) bits |= std::uint64_t{1} << (x * r.cols() + y);
    return bits;
}

StepSpace::StepSpace(std::size_t carrier, std::size_t alphabet, std::uint64_t budget)
    : carrier_(carrier), alphabet_(alphabet) {
    std::uint64_t n = step_fn_count(carrier, alphabet);
    require_budget(n, budget, "step-function enumeration");
    fns_.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i)
        fns_.push_back(step_fn_from_index(i, carrier, alphabet));
}

std::vector<std::uint64_t> StepSpace::map_along(const StateMap& f) const {
    if (f.domain_size != carrier_)
        throw std::invalid_argument("StepSpace::map_along: domain mismatch");
    // image of every subset of the domain, by bit dynamic programming
    std::uint64_t nsub = subset_count(carrier_);
    std::vector<std::uint64_t> img(nsub, 0);
    for (std::uint64_t bits = 1; bits < nsub; ++bits) {
        std::uint64_t low = bits & (~bits + 1);
        std::size_t x = static_cast<std::size_t>(__builtin_ctzll(low));
        img[bits] = img[bits & (bits - 1)] | (std::uint64_t{1} << f(x));
    }
    std::vector<std::uint64_t> out(fns_.size());
    std::uint64_t mask = nsub - 1;
    for (std::size_t i = 0; i < fns_.size(); ++i) {
        std::uint64_t src = index_of_step_fn(fns_[i]);
        std::uint64_t dst = 0;
        for (std::size_t a = 0; a < alphabet_; ++a)
            dst |= img[(src >> (a * carrier_)) & mask] << (a * f.codomain_size);
        out[i] = dst;
    }
    return out;
}

} // namespace simcoal::enumeration
