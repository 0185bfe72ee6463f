#pragma once

#include "distlat/lattice.hpp"

#include <span>
#include <vector>

namespace distlat {

// Finite subset of a translated lattice tau + Lambda, stored as integer
// coordinates in the lattice basis.  Points are kept sorted and deduplicated,
// so equality of sets is equality of vectors.
class LatticePointSet {
public:
    static LatticePointSet make(LatticePtr model, Vec2Q offset, std::vector<Vec2I> points);

    const LatticeModel& model() const { return *model_; }
    const LatticePtr& model_ptr() const { return model_; }
    const Vec2Q& offset() const { return offset_; }
    const std::vector<Vec2I>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }

    // Integer distance key F(p_i - p_j); squared distance is scale * key.
    Int key_between(std::size_t i, std::size_t j) const;

private:
    LatticePtr model_;
    Vec2Q offset_;
    std::vector<Vec2I> points_;
};

// Embed arbitrary rational planar points into a scaled copy of the integer
// lattice: with d the common denominator, the model has Gram (1/d^2) * I and
// coordinates d * p, so every pairwise squared distance is preserved exactly.
LatticePointSet rationalize(const std::vector<Vec2Q>& pts);

// Row-interval representation of a convex set of lattice coordinates: for
// each row y = j0 + idx a contiguous inclusive range [lo, hi].  Interior rows
// whose segment misses every integer are kept as the sentinel (1, 0) so that
// row indices stay aligned with y; leading/trailing empty rows are trimmed.
struct RowIntervals {
    Int j0 = 0;                                   // y of rows.front()
    std::vector<std::pair<Int, Int>> rows;        // inclusive [lo, hi] per row
    std::uint64_t point_count = 0;

    static RowIntervals from_rows(Int j0, std::vector<std::pair<Int, Int>> rows);
    std::vector<Vec2I> materialize() const;
    bool contains(Vec2I p) const;

    std::size_t size() const { return rows.size(); }
    const std::pair<Int, Int>& operator[](std::size_t i) const { return rows[i]; }
};

} // namespace distlat
