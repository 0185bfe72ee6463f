#pragma once

#include "distlat/census.hpp"
#include "distlat/windows.hpp"

#include <vector>

namespace distlat {

// Window center for witness construction: a lattice point, the deep hole
// (Delaunay circumcenter), or a Delaunay edge midpoint.
enum class CenterChoice { Lattice, DeepHole, Edge };

// Largest disk window around the chosen center whose distinct distance count
// stays at or below the target k.  Maximality is certified by evaluating the
// next integer key step: one more quantum of radius exceeds k.
struct ExtremalWitness {
    std::uint64_t k_target = 0;
    DiskWindow window;
    std::uint64_t n = 0;             // |W|
    std::uint64_t k_actual = 0;      // |D(W)| <= k_target
    Int key_ceiling = 0;             // membership key bound in scaled units
    Rat r_sq;                        // window radius squared
    std::uint64_t next_k = 0;        // |D| one key step further out
    bool maximal = false;            // next_k > k_target
    double ratio_n = 0.0;            // n / (k sqrt(log k)), 0 when k < 3
    double pred_a = 0.0;             // (pi/4) S*, when a density estimate is given
    double pred_b = 0.0;             // pi / (3 C_est), when a density estimate is given
};

// Bisection over the integer membership-key radius: |D(W)| is nondecreasing
// in the key bound, so the largest bound with |D| <= k is well defined.
// c_est > 0 supplies the represented-number density used for the initial
// bracket and the predicted-constant columns; 0 skips both.
ExtremalWitness construct_for_k(LatticePtr model, std::uint64_t k,
                                CenterChoice center = CenterChoice::Lattice, double c_est = 0.0,
                                std::uint64_t max_points = kDefaultWindowBudget,
                                std::uint64_t sweep_budget_bytes = std::uint64_t(1) << 31);

struct LowerBoundRow {
    std::uint64_t k = 0;
    double t_predicted = 0.0;        // census bound from the inversion
    double r_sq_predicted = 0.0;     // s * T / 4
    std::uint64_t n = 0;
    std::uint64_t k_actual = 0;
    double r_sq_realized = 0.0;
    double ratio_n = 0.0;
    double ratio_pred_a = 0.0;       // (pi/4) S*
    double ratio_pred_b = 0.0;       // pi / (3 C_est)
};

struct LowerBoundTable {
    std::vector<LowerBoundRow> rows;
    double c_est = 0.0;
    std::string label;               // lattice label, for table output
};

LowerBoundTable lower_bound_table(LatticePtr model, const std::vector<std::uint64_t>& k_grid,
                                  double c_est, CenterChoice center = CenterChoice::Lattice,
                                  std::uint64_t max_points = kDefaultWindowBudget,
                                  std::uint64_t sweep_budget_bytes = std::uint64_t(1) << 31);

// Upper-bound curve M(k) = max(2 C1 k, 2 C1 k log k) next to the numeric
// threshold: the least M beyond which C1 k log M' < M' holds for every
// M' >= M (the attracting fixed point of M = C1 k log M, or 1 when
// C1 k <= e and the inequality holds everywhere).
struct UpperBoundCurve {
    std::vector<std::uint64_t> k;
    std::vector<double> m_closed;
    std::vector<double> m_fixed;
    std::vector<bool> closed_dominates;   // m_closed >= m_fixed per grid point
    double c1 = 1.0;
};

UpperBoundCurve upper_bound_curve(const std::vector<std::uint64_t>& k_grid, double c1);

} // namespace distlat
