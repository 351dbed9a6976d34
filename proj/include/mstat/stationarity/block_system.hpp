#pragma once

#include "mstat/geometry/polyhedron.hpp"

#include <initializer_list>
#include <utility>

namespace mstat::stationarity {

// A polyhedron over named variable blocks; pieces are placed on chosen blocks.
class BlockSystem {
public:
    std::size_t add(std::size_t k) {
        std::size_t off = dim_;
        dim_ += k;
        sizes_.push_back({off, k});
        return sizes_.size() - 1;
    }
    std::size_t dim() const { return dim_; }
    std::size_t offset(std::size_t b) const { return sizes_[b].first; }
    std::size_t size(std::size_t b) const { return sizes_[b].second; }
    std::vector<std::size_t> coords(std::initializer_list<std::size_t> blocks) const {
        std::vector<std::size_t> c;
        for (auto b : blocks)
            for (std::size_t i = 0; i < size(b); ++i) c.push_back(offset(b) + i);
        return c;
    }
    Vec value(const Vec& x, std::size_t b) const { return slice(x, offset(b), size(b)); }

    geometry::ConvexPolyhedron base() const { return geometry::ConvexPolyhedron(dim_); }
    void place(geometry::ConvexPolyhedron& sys, const geometry::ConvexPolyhedron& piece, std::initializer_list<std::size_t> blocks) const {
        sys = geometry::intersect(sys, geometry::embed(piece, dim_, coords(blocks)));
    }
    /// Σ coeff_b x_b = 0 for blocks of equal size.
    void linear_zero(geometry::ConvexPolyhedron& sys, std::initializer_list<std::pair<std::size_t, int>> terms) const {
        const std::size_t k = size(terms.begin()->first);
        for (std::size_t i = 0; i < k; ++i) {
            Vec row = zeros(dim_);
            for (auto [b, c] : terms) row[offset(b) + i] += c;
            sys.add_eq(std::move(row), 0);
        }
    }
    void fix_zero(geometry::ConvexPolyhedron& sys, std::size_t b) const {
        for (std::size_t i = 0; i < size(b); ++i) sys.add_eq(unit(dim_, offset(b) + i), 0);
    }

private:
    std::size_t dim_ = 0;
    std::vector<std::pair<std::size_t, std::size_t>> sizes_;
};

}  // namespace mstat::stationarity
