#pragma once

#include "distlat/pointset.hpp"
#include "distlat/spectrum.hpp"

#include <vector>

namespace distlat {

// Quadratic surd a + b*sqrt(d) with rational a, b and d >= 0.  Radii derived
// from a rational radius-squared and the covering radius live in this field,
// so shrunken windows keep exact membership predicates.
struct SurdVal {
    Rat a, b, d;

    static SurdVal exact(Rat v) { return {std::move(v), Rat(0), Rat(0)}; }
    bool is_rational() const { return b == 0 || d == 0; }
    Rat rational_value() const;           // requires is_rational()
    int sign() const { return sign_a_plus_b_sqrt(a, b, d); }
    double approx() const;
};

// W = (tau + Lambda) intersect B(z, R), stored as row intervals of the
// integer coordinates u with Q(u - (z - tau)) <= R^2.  Membership is the
// exact integer test F(denom * u - scaled_center) <= key_bound, obtained by
// clearing denominators from the rational (or surd) radius comparison.
struct DiskWindow {
    LatticePtr model;
    Vec2Q tau;              // translate of the lattice
    Vec2Q center;           // z, in the same coordinates as tau
    SurdVal radius_sq;
    Int denom = 1;          // common denominator of z - tau
    Vec2I scaled_center;    // denom * (z - tau)
    i128 key_bound = 0;     // F(denom * u - scaled_center) <= key_bound
    RowIntervals rows;

    std::uint64_t size() const { return rows.point_count; }
    bool contains(Vec2I u) const;
    LatticePointSet point_set() const;    // requires size() >= 1
};

inline constexpr std::uint64_t kDefaultWindowBudget = std::uint64_t(1) << 25;

DiskWindow build_disk_window(LatticePtr model, const Vec2Q& tau, const Vec2Q& z, const Rat& radius_sq,
                             std::uint64_t max_points = kDefaultWindowBudget);
DiskWindow build_disk_window(LatticePtr model, const Vec2Q& tau, const Vec2Q& z, const SurdVal& radius_sq,
                             std::uint64_t max_points = kDefaultWindowBudget);

// Distance spectrum of a window via the row sweep.
DistanceSpectrum window_spectrum(const DiskWindow& w,
                                 std::uint64_t budget_bytes = std::uint64_t(1) << 31);

// All nonzero lattice vectors v with F(v) <= key_bound.
std::vector<Vec2I> lattice_vectors_upto(const QuadForm& form, i128 key_bound,
                                        std::uint64_t max_vectors = std::uint64_t(1) << 24);

// Difference-set covering: every lattice vector of squared length at most
// (2R - 2mu)^2 must be a difference of two window points.  The report also
// measures how far beyond the guarantee the covering actually extends.
struct CoveringReport {
    i128 guaranteed_key_bound = 0;   // floor((2R - 2mu)^2 / s); <= 0 means vacuous
    i128 diameter_key_bound = 0;     // floor(4 R^2 / s); no difference can exceed it
    i128 largest_covered_key = 0;    // max K with r_W(v) >= 1 for every 0 < F(v) <= K
    std::uint64_t vectors_checked = 0;
    bool guarantee_holds = false;
};

CoveringReport verify_diffset_covering(const DiskWindow& w);

// Inner regularity certificate: B(z, (1-c)R) and B(z, R) sandwich the window,
// (1-c)R exceeds the covering radius, and the bounding rectangle in reduced
// basis coordinates has the recorded aspect ratio.
struct InnerRegularCert {
    Rat c;
    SurdVal radius_sq;
    double aspect_bound = 1.0;
    std::uint64_t core_removed = 0;  // |W| - |B(z, (1-c)R) ∩ (z + Lambda)|
    bool valid = false;
};

InnerRegularCert certify_inner_regular(const DiskWindow& w, const Rat& c);

// Safe core W_in = B(z, (1-c)R - Delta) with Delta = max{|v1|, |v2|, |v1+v2|}
// over the input basis: every core point stays inside the parent under all
// four shifts with {0,1}^2 coordinates.  The stability check is exhaustive; a
// violation is a broken theorem and throws internal_error.
struct InnerCore {
    DiskWindow core;
    Rat delta_sq;
    std::uint64_t removed = 0;       // |W| - |W_in|
    std::uint64_t shift_checks = 0;
};

InnerCore inner_core(const DiskWindow& w, const InnerRegularCert& cert);

// Exact count of (tau + Lambda) points in the lens B(z, rho) ∩ B(z - u, rho),
// i.e. points p in the window with p + u also inside, against the closed-form
// lens area.  bound_unit = 1 + 4*pi*rho carries the error normalisation.
struct LensReport {
    std::uint64_t count = 0;
    double area_over_covol = 0.0;
    double residual = 0.0;
    double bound_unit = 1.0;
    double fitted_c = 0.0;           // residual / bound_unit
};

LensReport lens_count(LatticePtr model, const Vec2Q& tau, const Vec2Q& z, const Rat& rho_sq, Vec2I u,
                      std::uint64_t max_points = kDefaultWindowBudget);

// Lattice point count of a bounded convex region against area/covolume.
// Polygon vertices are given in lattice coordinates; the geometric area is
// then covolume * (coordinate area), so count - area/covol compares the exact
// row-scan count with the coordinate shoelace area.  Perimeter is geometric.
struct ConvexCountReport {
    std::uint64_t count = 0;
    double area_over_covol = 0.0;
    double residual = 0.0;
    double perimeter = 0.0;
    double fitted_c = 0.0;           // residual / (1 + perimeter)
};

ConvexCountReport convex_count_polygon(LatticePtr model, const Vec2Q& tau,
                                       const std::vector<Vec2Q>& vertices,
                                       std::uint64_t max_points = kDefaultWindowBudget);
ConvexCountReport convex_count_disk(LatticePtr model, const Vec2Q& tau, const Vec2Q& z,
                                    const Rat& rho_sq,
                                    std::uint64_t max_points = kDefaultWindowBudget);

// ---------------------------------------------------------------------------
// Rectangle toolkit.

// W = {a0 + (i, j) : 0 <= i < L1, 0 <= j < L2} in lattice coordinates.
struct LambdaRectangle {
    Vec2I a0;
    Int L1 = 1, L2 = 1;

    bool proper() const { return L1 >= 2 && L2 >= 2; }
    u128 area() const { return u128(L1) * u128(L2); }
    bool contains(Vec2I p) const {
        return p.x >= a0.x && p.x < a0.x + L1 && p.y >= a0.y && p.y < a0.y + L2;
    }
};

// Subset of a LambdaRectangle, stored as a row-major bitmask.
class RectSubset {
public:
    static RectSubset make(LambdaRectangle rect, const std::vector<Vec2I>& points);
    static RectSubset full(LambdaRectangle rect);

    const LambdaRectangle& rect() const { return rect_; }
    std::uint64_t count() const { return count_; }
    Rat beta() const;                          // count / (L1 * L2)
    bool test(Int i, Int j) const;             // relative cell coordinates
    std::vector<Vec2I> points() const;         // absolute coordinates, sorted

private:
    LambdaRectangle rect_;
    std::vector<std::uint64_t> bits_;          // L2 rows of ceil(L1/64) words
    std::size_t words_per_row_ = 0;
    std::uint64_t count_ = 0;
};

// Additive energy of the full L1 x L2 rectangle, diagonal included:
// the closed form (2/3 L1^3 + 1/3 L1)(2/3 L2^3 + 1/3 L2), always integral.
u128 rect_energy_exact(Int L1, Int L2);

// r_W(u) = max{0, L1 - |u1|} * max{0, L2 - |u2|} for the full rectangle.
u128 rect_rep_count(Int L1, Int L2, Int u1, Int u2);

// Best axis shifts of a rectangle subset: the s in 1..L1-1 (and t in 1..L2-1)
// maximising |A ∩ (A + s v1)|, with the averaging lower bound
// max{0, (beta L1 - 1) / (2 (L1 - 1))} * |A| each one must beat.  Reversed
// shifts pair bijectively with forward ones, so the signs are always +1 and
// the scan over positive shifts is exhaustive; ties pick the smallest shift.
struct HeavyShifts {
    Int s = 1;
    int eps1 = 1;
    std::uint64_t overlap1 = 0;
    Rat bound1;
    Int t = 1;
    int eps2 = 1;
    std::uint64_t overlap2 = 0;
    Rat bound2;
    bool bounds_hold = false;
};

HeavyShifts find_heavy_shifts(const RectSubset& a);

// Cyclic column-window averaging: locate an L2 x L2 subrectangle whose
// density is at least beta/2 (at least beta when the best cyclic window does
// not wrap).  Requires L1 >= L2 >= 2.
struct SquareExtract {
    LambdaRectangle window;
    std::uint64_t points_in_window = 0;
    Rat density;
    Int s_star = 0;
    bool wrap_used = false;
    bool guarantee_holds = false;    // density >= beta/2, rechecked exactly
};

SquareExtract extract_square_window(const RectSubset& a);

// Smallest rectangle containing every translate t + P for t in T, with the
// exact size identity |P*| = |P| + da * L2 + dg * L1 + da * dg.
struct GapHull {
    LambdaRectangle hull;
    Int delta_alpha = 0;
    Int delta_gamma = 0;
    bool containment_ok = false;
    bool size_identity = false;
};

GapHull gap_hull(const LambdaRectangle& p, const std::vector<Vec2I>& t);

// Pair-count lower bounds on an inner-regular window: every lattice vector v
// with |v| <= (2 - delta) * rho_eps, rho_eps = (1 - c - eps) R - mu, must be
// a popular difference.  Optionally re-checks the deletion bound
// r_X(v) >= r_W(v) - 2|W \ X| exactly for X = W minus the given points.
struct PairCoverageReport {
    i128 key_threshold = 0;          // floor((2 - delta)^2 rho_eps^2 / s)
    std::uint64_t lambdas_checked = 0;
    std::uint64_t min_rep = 0;
    Vec2I argmin_lambda;
    double kappa = 0.0;              // min_rep / R^2
    bool all_positive = false;
    std::uint64_t deleted_count = 0;
    std::uint64_t min_rep_after = 0;
    bool deletion_bound_holds = true;
};

PairCoverageReport verify_inner_regular_pairs(const DiskWindow& w, const InnerRegularCert& cert,
                                              const Rat& eps, const Rat& delta,
                                              const std::vector<Vec2I>& deleted = {});

} // namespace distlat
