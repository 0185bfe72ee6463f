#include "distlat/extremal.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <numbers>
#include <optional>

namespace distlat {

namespace {

Vec2Q center_point(const LatticeModel& model, CenterChoice center) {
    switch (center) {
        case CenterChoice::Lattice: return {Rat(0), Rat(0)};
        case CenterChoice::DeepHole: return model.deep_hole();
        case CenterChoice::Edge: return model.edge_midpoint();
    }
    throw precondition_error("construct_for_k: unknown center choice");
}

Int center_denominator(const Vec2Q& z) {
    using boost::multiprecision::denominator;
    return to_int_checked(boost::multiprecision::lcm(denominator(z.x), denominator(z.y)));
}

// |D(W)| for the window whose membership test is F(d u - p) <= key; the
// radius that realizes exactly this key bound is R^2 = s key / d^2.
struct KeyProbe {
    LatticePtr model;
    Vec2Q z;
    Int denom = 1;
    std::uint64_t max_points;
    std::uint64_t sweep_budget;

    std::optional<DiskWindow> window(Int key) const {
        if (key < 1) return std::nullopt;
        const Rat r_sq = model->scale() * Rat(key) / Rat(denom * denom);
        return build_disk_window(model, {Rat(0), Rat(0)}, z, r_sq, max_points);
    }

    std::uint64_t distinct(Int key) const {
        const auto w = window(key);
        if (!w || w->size() < 2) return 0;
        return distinct_key_count_from_rows(*model, w->rows, sweep_budget);
    }
};

} // namespace

ExtremalWitness construct_for_k(LatticePtr model, std::uint64_t k, CenterChoice center,
                                double c_est, std::uint64_t max_points,
                                std::uint64_t sweep_budget_bytes) {
    if (!model) throw precondition_error("construct_for_k: needs a lattice model");
    if (k < 1) throw precondition_error("construct_for_k: needs k >= 1");

    const Vec2Q z = center_point(*model, center);
    KeyProbe probe{model, z, center_denominator(z), max_points, sweep_budget_bytes};
    const double d_sq = static_cast<double>(probe.denom) * static_cast<double>(probe.denom);

    // Initial bracket: the census inversion predicts diameter key 4R^2/s = T,
    // i.e. membership key T d^2 / 4; without a density estimate fall back on
    // the k sqrt(log k) scale.  Grow until the distinct count exceeds k.
    double guess;
    if (c_est > 0 && k >= 3) {
        guess = invert_k_to_T(static_cast<double>(k), c_est).t * d_sq / 4.0;
    } else {
        const double dk = static_cast<double>(k);
        guess = 2.0 * dk * std::sqrt(std::log(dk) + 1.0) * d_sq;
    }
    Int hi = std::max<Int>(8, static_cast<Int>(std::min(guess * 1.25 + 8.0, 4e18)));
    while (probe.distinct(hi) <= k) {
        if (hi > (Int(1) << 61))
            throw budget_error("construct_for_k: bracket for k exceeds the key range");
        hi *= 2;
    }

    // Largest key with |D| <= k; |D| is nondecreasing in the key bound.
    Int lo = 0;
    while (lo < hi - 1) {
        const Int mid = lo + (hi - lo) / 2;
        if (probe.distinct(mid) <= k)
            lo = mid;
        else
            hi = mid;
    }

    ExtremalWitness wit;
    wit.k_target = k;
    wit.key_ceiling = lo;
    if (lo >= 1) {
        wit.window = *probe.window(lo);
        wit.r_sq = wit.window.radius_sq.rational_value();
        wit.n = wit.window.size();
        wit.k_actual = probe.distinct(lo);
    } else {
        // Degenerate: even the first shell exceeds k.  The witness is the
        // bare center when it is a lattice point, otherwise empty.
        wit.r_sq = Rat(0);
        wit.n = probe.denom == 1 ? 1 : 0;
        wit.k_actual = 0;
    }
    wit.next_k = probe.distinct(lo + 1);
    wit.maximal = wit.next_k > k;
    if (!wit.maximal)
        throw internal_error("construct_for_k: bisection exit lost maximality");

    if (k >= 3) {
        const double dk = static_cast<double>(k);
        wit.ratio_n = static_cast<double>(wit.n) / (dk * std::sqrt(std::log(dk)));
    }
    if (c_est > 0) {
        wit.pred_a = (std::numbers::pi / 4.0) * s_star(*model, c_est).value;
        wit.pred_b = std::numbers::pi / (3.0 * c_est);
    }
    return wit;
}

LowerBoundTable lower_bound_table(LatticePtr model, const std::vector<std::uint64_t>& k_grid,
                                  double c_est, CenterChoice center, std::uint64_t max_points,
                                  std::uint64_t sweep_budget_bytes) {
    if (!model) throw precondition_error("lower_bound_table: needs a lattice model");
    if (!(c_est > 0)) throw precondition_error("lower_bound_table: needs a census density estimate");
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        if (k_grid[i] < 3)
            throw precondition_error("lower_bound_table: grid entries must be at least 3");
        if (i > 0 && k_grid[i] <= k_grid[i - 1])
            throw precondition_error("lower_bound_table: grid must be strictly increasing");
    }

    LowerBoundTable table;
    table.c_est = c_est;
    table.label = model->label();
    const double s = rat_d(model->scale());
    for (const std::uint64_t k : k_grid) {
        const ExtremalWitness wit =
            construct_for_k(model, k, center, c_est, max_points, sweep_budget_bytes);
        LowerBoundRow row;
        row.k = k;
        row.t_predicted = invert_k_to_T(static_cast<double>(k), c_est).t;
        row.r_sq_predicted = s * row.t_predicted / 4.0;
        row.n = wit.n;
        row.k_actual = wit.k_actual;
        row.r_sq_realized = rat_d(wit.r_sq);
        row.ratio_n = wit.ratio_n;
        row.ratio_pred_a = wit.pred_a;
        row.ratio_pred_b = wit.pred_b;
        table.rows.push_back(row);
    }
    return table;
}

UpperBoundCurve upper_bound_curve(const std::vector<std::uint64_t>& k_grid, double c1) {
    if (!(c1 > 0) || !std::isfinite(c1))
        throw precondition_error("upper_bound_curve: needs C1 > 0");
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        if (k_grid[i] < 1)
            throw precondition_error("upper_bound_curve: grid entries must be at least 1");
        if (i > 0 && k_grid[i] <= k_grid[i - 1])
            throw precondition_error("upper_bound_curve: grid must be strictly increasing");
    }

    UpperBoundCurve curve;
    curve.c1 = c1;
    curve.k = k_grid;
    const double e = std::exp(1.0);
    for (const std::uint64_t ku : k_grid) {
        const double k = static_cast<double>(ku);
        const double a = c1 * k;
        curve.m_closed.push_back(std::max(2.0 * a, 2.0 * a * std::log(k)));

        // Least M beyond which a log M' < M' holds for every M' >= M.  For
        // a <= e the inequality holds on all of [1, inf); otherwise it is the
        // upper root of M = a log M, bracketed and bisected.
        double fixed = 1.0;
        if (a > e) {
            double lo = e, hi = std::max(2.0 * a, e * e);
            while (a * std::log(hi) >= hi) hi *= 2.0;
            for (int iter = 0; iter < 200 && (hi - lo) > 1e-13 * hi; ++iter) {
                const double mid = 0.5 * (lo + hi);
                if (a * std::log(mid) >= mid)
                    lo = mid;
                else
                    hi = mid;
            }
            fixed = 0.5 * (lo + hi);
        }
        curve.m_fixed.push_back(fixed);
        curve.closed_dominates.push_back(curve.m_closed.back() >= fixed);
    }
    return curve;
}

} // namespace distlat
