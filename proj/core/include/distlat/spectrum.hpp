#pragma once

#include "distlat/pointset.hpp"

#include <array>
#include <optional>
#include <unordered_map>

namespace distlat {

// One row of a distance spectrum: integer key t = F(p - q) together with the
// number m_t of ordered pairs realising it.  Squared distance = scale * t.
struct SpectrumEntry {
    Int key = 0;
    std::uint64_t m = 0;
};

struct DistanceSpectrum {
    std::vector<SpectrumEntry> entries;   // distinct keys, ascending
    std::uint64_t n = 0;

    std::size_t k() const { return entries.size(); }
    u128 total_mass() const;              // always n(n-1)
    std::uint64_t multiplicity(Int key) const;
};

// Exact all-pairs spectrum; requires at least two points.
DistanceSpectrum distance_spectrum(const LatticePointSet& pts);

// Fast path for convex windows held as row intervals: per row-shift e the
// pair counts over x-shifts form sums of interval cross-correlations, which
// are accumulated by their second differences and integrated twice, then
// binned by key.  Runs in O(#shift-grid) time and never enumerates pairs.
DistanceSpectrum spectrum_from_rows(const LatticeModel& model, const RowIntervals& rows,
                                    std::uint64_t budget_bytes = std::uint64_t(1) << 31);

// Same sweep, but only tracks which keys occur.  Cheaper by a word-per-key.
std::uint64_t distinct_key_count_from_rows(const LatticeModel& model, const RowIntervals& rows,
                                           std::uint64_t budget_bytes = std::uint64_t(1) << 31);

// Ordered-pair count with fixed difference v between two row-interval sets.
std::uint64_t rep_count_rows(const RowIntervals& rows, Vec2I v);

struct QOrdResult {
    u128 q_ord = 0;        // sum over keys of m_t^2
    Rat cs_floor;          // n^2 (n-1)^2 / k
    bool floor_holds = false;
};

// Order-two moment of the spectrum plus its Cauchy-Schwarz floor.
QOrdResult q_ord(const DistanceSpectrum& spec);

// Key t* such that exactly floor(theta * k) keys exceed it; theta in [0, 1).
Int quantile_radius(const DistanceSpectrum& spec, double theta);

struct TopCapSplit {
    std::uint64_t cap_count = 0;   // L = floor(theta * k)
    Int t_star = 0;
    u128 top_mass = 0;             // ordered pairs with key > t*
    u128 bottom_mass = 0;
    double cs_bound = 0.0;         // sqrt(Q_ord * L)
    bool bound_holds = false;      // top_mass^2 <= Q_ord * L, checked exactly
};

TopCapSplit top_cap_split(const DistanceSpectrum& spec, double theta);

// Difference-vector counts r(v) = #{(x, y) ordered : x - y = v}, v != 0.
struct ShiftHistogram {
    std::unordered_map<Vec2I, std::uint64_t, Vec2IHash> counts;
    std::uint64_t n = 0;

    u128 energy_offdiagonal() const;
    u128 energy_with_diagonal() const;      // adds the diagonal n^2
    std::uint64_t max_count() const;
    std::uint64_t count(Vec2I v) const;
};

ShiftHistogram shift_histogram(const LatticePointSet& pts);

struct AdditiveEnergy {
    u128 with_diagonal = 0;     // counts quadruples x1 + x2 = x3 + x4 including x1 = x3
    u128 offdiagonal = 0;
};

AdditiveEnergy additive_energy(const LatticePointSet& pts);

// Primitive direction with canonical sign (y > 0, or y = 0 and x > 0).
Vec2I primitive_direction(Vec2I v);

// A line through lattice points: primitive direction plus the invariant
// anchor x * dir.y - y * dir.x shared by all its points.
struct LineKey {
    Vec2I dir;
    Int anchor = 0;
    friend bool operator==(const LineKey&, const LineKey&) = default;
    friend auto operator<=>(const LineKey&, const LineKey&) = default;
};

struct LineKeyHash {
    std::size_t operator()(const LineKey& k) const noexcept {
        std::size_t h = Vec2IHash{}(k.dir);
        h ^= static_cast<std::size_t>(k.anchor) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }
};

struct LineHistogram {
    std::unordered_map<LineKey, std::uint64_t, LineKeyHash> counts;   // points per line
    std::uint64_t n = 0;

    std::uint64_t max_line() const;                  // >= 1 for nonempty sets
    std::optional<LineKey> argmax() const;           // deterministic tie-break
    bool pair_identity_holds() const;                // sum C(s,2) == C(n,2)
};

LineHistogram line_histogram(const LatticePointSet& pts);

// Sum of r(v) over nonzero shifts parallel to a primitive direction.
u128 directional_mass(const ShiftHistogram& hist, Vec2I primitive_dir);
// Sum of s(s-1) over lines with the given direction; equal to the above.
u128 line_direction_mass(const LineHistogram& lines, Vec2I primitive_dir);

// Split by coordinate parity; bucket index is (u1 mod 2) + 2 * (u2 mod 2).
struct ResidueDecomposition {
    std::array<std::uint64_t, 4> sizes{};
    std::array<std::vector<std::uint32_t>, 4> members;   // indices into the input

    std::size_t argmax_bucket() const;    // largest size, ties to lower index
};

ResidueDecomposition residue_decompose(std::span<const Vec2I> pts);
ResidueDecomposition residue_decompose(const LatticePointSet& pts);

// A direct isometry in lattice coordinates.  The linear part is
// cos * I + sigma * [[-g12, -g22], [g11, g12]] with cos and sigma rational,
// so the whole key is exact; sigma carries sin(theta) = sigma * covolume.
struct IsometryKey {
    Rat c;          // cos(theta)
    Rat sigma;
    Rat t1, t2;     // translation, lattice coordinates
    friend bool operator==(const IsometryKey&, const IsometryKey&) = default;
};

struct IsometryEntry {
    IsometryKey key;
    std::uint64_t r_g = 0;        // #{x in X : g(x) in X}
    bool is_translation = false;
};

struct IsometrySpectrum {
    std::vector<IsometryEntry> entries;   // all g with r_g >= 2, sorted by key
    u128 q_star = 0;                      // sum r_g (r_g - 1)
    u128 q_ord_value = 0;                 // sum m_t^2; equal to q_star
    std::uint64_t max_per_pair = 0;       // max # isometries sending x to x'
    std::uint64_t n = 0;
};

// Enumerates every direct isometry matching at least one ordered pair of
// equal-length segments, computes each r_g by direct application, and checks
// the exact identity sum r_g(r_g - 1) = sum m_t^2.  Quadratic-space blowup is
// guarded by the size cap.
IsometrySpectrum isometry_spectrum(const LatticePointSet& pts, std::size_t size_cap = 80);

} // namespace distlat
