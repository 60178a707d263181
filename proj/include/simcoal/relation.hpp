#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace simcoal {

/// A set of state indices, represented as a bit vector over a fixed carrier.
using StateSet = boost::dynamic_bitset<>;

inline StateSet make_state_set(std::size_t carrier, std::initializer_list<std::size_t> members) {
    StateSet s(carrier);
    for (std::size_t m : members) s.set(m);
    return s;
}

/// A relation R ⊆ X × Y as a boolean matrix. Rows index X, columns index Y.
/// Row and column bit views are kept in sync so membership tests against
/// either side are allocation-free.
class Relation {
public:
    Relation() = default;
    Relation(std::size_t rows, std::size_t cols, bool fill = false);

    static Relation identity(std::size_t n);
    static Relation full(std::size_t rows, std::size_t cols) { return Relation(rows, cols, true); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool at(std::size_t x, std::size_t y) const { return row_[x].test(y); }
    void set(std::size_t x, std::size_t y, bool value = true);

    /// All y related to x, as a bitset over Y.
    const StateSet& row(std::size_t x) const { return row_[x]; }
    /// All x related to y, as a bitset over X.
    const StateSet& col(std::size_t y) const { return col_[y]; }

    std::size_t pair_count() const;
    std::vector<std::pair<std::size_t, std::size_t>> pairs() const;

    Relation transpose() const;

    /// Pairs (x, z) with some y such that this(x, y) and second(y, z).
    Relation compose(const Relation& second) const;

    bool subset_of(const Relation& other) const;

    bool operator==(const Relation& other) const;
    bool operator!=(const Relation& other) const { return !(*this == other); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<StateSet> row_;
    std::vector<StateSet> col_;
};

} // namespace simcoal
