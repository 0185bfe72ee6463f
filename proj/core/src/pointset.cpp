#include "distlat/pointset.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>

namespace distlat {

LatticePointSet LatticePointSet::make(LatticePtr model, Vec2Q offset, std::vector<Vec2I> points) {
    if (!model) throw precondition_error("point set needs a lattice model");
    if (points.empty()) throw precondition_error("point set must be nonempty");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    LatticePointSet s;
    s.model_ = std::move(model);
    s.offset_ = std::move(offset);
    s.points_ = std::move(points);
    return s;
}

Int LatticePointSet::key_between(std::size_t i, std::size_t j) const {
    const Vec2I d = points_[i] - points_[j];
    return model_->key_of(d);
}

LatticePointSet rationalize(const std::vector<Vec2Q>& pts) {
    if (pts.empty()) throw precondition_error("rationalize: empty input");
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    BigInt d = 1;
    for (const auto& p : pts) {
        d = boost::multiprecision::lcm(d, denominator(p.x));
        d = boost::multiprecision::lcm(d, denominator(p.y));
    }
    std::vector<Vec2I> coords;
    coords.reserve(pts.size());
    for (const auto& p : pts) {
        coords.push_back({to_int_checked(numerator(Rat(p.x * d))),
                          to_int_checked(numerator(Rat(p.y * d)))});
    }
    const Rat inv_d_sq = Rat(1) / Rat(d * d);
    auto model = std::make_shared<LatticeModel>(
        LatticeModel::from_gram({inv_d_sq, Rat(0), inv_d_sq}, "rationalized"));
    return LatticePointSet::make(std::move(model), Vec2Q{}, std::move(coords));
}

RowIntervals RowIntervals::from_rows(Int j0, std::vector<std::pair<Int, Int>> in) {
    // Trim empty rows at either end so j0 always names an occupied row.
    auto is_empty = [](const std::pair<Int, Int>& r) { return r.first > r.second; };
    while (!in.empty() && is_empty(in.back())) in.pop_back();
    std::size_t skip = 0;
    while (skip < in.size() && is_empty(in[skip])) ++skip;
    in.erase(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(skip));

    RowIntervals r;
    r.j0 = j0 + static_cast<Int>(skip);
    r.rows = std::move(in);
    for (auto& row : r.rows) {
        if (row.first > row.second) {
            row = {1, 0};               // canonical empty-row sentinel
        } else {
            r.point_count += static_cast<std::uint64_t>(row.second - row.first + 1);
        }
    }
    return r;
}

std::vector<Vec2I> RowIntervals::materialize() const {
    std::vector<Vec2I> pts;
    pts.reserve(point_count);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Int y = j0 + static_cast<Int>(i);
        for (Int x = rows[i].first; x <= rows[i].second; ++x) pts.push_back({x, y});
    }
    return pts;
}

bool RowIntervals::contains(Vec2I p) const {
    const Int idx = p.y - j0;
    if (idx < 0 || idx >= static_cast<Int>(rows.size())) return false;
    const auto& [lo, hi] = rows[static_cast<std::size_t>(idx)];
    return lo <= p.x && p.x <= hi;
}

} // namespace distlat
