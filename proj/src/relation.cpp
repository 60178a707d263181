#include "simcoal/relation.hpp"

#include <stdexcept>

namespace simcoal {

Relation::Relation(std::size_t rows, std::size_t cols, bool fill)
    : rows_(rows), cols_(cols),
      row_(rows, StateSet(cols)), col_(cols, StateSet(rows)) {
    if (fill) {
        for (auto& r : row_) r.set();
        for (auto& c : col_) c.set();
    }
}

Relation Relation::identity(std::size_t n) {
    Relation r(n, n);
    for (std::size_t i = 0; i < n; ++i) r.set(i, i);
    return r;
}

void Relation::set(std::size_t x, std::size_t y, bool value) {
    if (x >= rows_ || y >= cols_) throw std::out_of_range("Relation::set: index out of range");
    row_[x].set(y, value);
    col_[y].set(x, value);
}

std::size_t Relation::pair_count() const {
    std::size_t n = 0;
    for (const auto& r : row_) n += r.count();
    return n;
}

std::vector<std::pair<std::size_t, std::size_t>> Relation::pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(pair_count());
    for (std::size_t x = 0; x < rows_; ++x)
        for (std::size_t y = row_[x].find_first(); y != StateSet::npos; y = row_[x].find_next(y))
            out.emplace_back(x, y);
    return out;
}

Relation Relation::transpose() const {
    Relation t(cols_, rows_);
    t.row_ = col_;
    t.col_ = row_;
    return t;
}

Relation Relation::compose(const Relation& second) const {
    if (cols_ != second.rows_)
        throw std::invalid_argument("Relation::compose: inner dimensions differ");
    Relation out(rows_, second.cols_);
    for (std::size_t x = 0; x < rows_; ++x) {
        StateSet acc(second.cols_);
        for (std::size_t y = row_[x].find_first(); y != StateSet::npos; y = row_[x].find_next(y))
            acc |= second.row_[y];
        for (std::size_t z = acc.find_first(); z != StateSet::npos; z = acc.find_next(z))
            out.set(x, z);
    }
    return out;
}

bool Relation::subset_of(const Relation& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("Relation::subset_of: dimension mismatch");
    for (std::size_t x = 0; x < rows_; ++x)
        if (!row_[x].is_subset_of(other.row_[x])) return false;
    return true;
}

bool Relation::operator==(const Relation& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && row_ == other.row_;
}

} // namespace simcoal
