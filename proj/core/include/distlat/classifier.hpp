#pragma once

#include "distlat/windows.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>

namespace distlat {

// Thresholds for the structure trichotomy.  The underlying statements hold
// with unnamed absolute constants; these are the knobs that make each branch
// checkable, and every report records the values it was run with.
struct ClassifierConfig {
    double sigma = 0.25;           // quantile exponent, in (0, 1/4]
    double c_line = 0.10;          // line-heaviness fraction of n
    double c_shift = 0.10;         // popular-shift fraction of n
    double alpha_energy = 0.10;    // energy gate multiplier for n^3
    double eta_override = 0.0;     // localization deficiency; 0 = sqrt(theta_k)

    void validate() const;
    double theta(std::uint64_t k) const;   // (log k)^(-1/2 - sigma), clamped below 1
    double eta(std::uint64_t k) const;     // override, or sqrt(theta_k)
};

enum class Outcome { LineHeavy, TwoShift, Localized, Indeterminate };

std::string outcome_str(Outcome o);

struct LineCertificate {
    LineKey line;
    std::uint64_t s_line = 0;
    double fraction = 0.0;         // s_line / n
};

// Two nonparallel heavily-realized shifts plus the residue concentration
// data inside an extracted grid window.  Everything needed to re-verify is
// embedded: the sublattice basis (v1, v2), the coset anchor, the rectangle
// and window in sublattice coordinates, and the claimed counts.
struct TwoShiftCertificate {
    Vec2I v1, v2;                        // nonparallel popular shifts (basis of L')
    std::uint64_t r1 = 0, r2 = 0;        // r_X(v1), r_X(v2) over the whole set
    Vec2I anchor;                        // coset representative, original coordinates
    std::uint64_t excluded = 0;          // points outside the anchored coset of L'
    LambdaRectangle bounding;            // bounding rectangle, L'-coordinates
    LambdaRectangle window;              // extracted square window W
    std::uint64_t n_window = 0;          // N = |X ∩ W|
    Rat density;                         // N / |W|
    Vec2I shift1, shift2;                // heavy shifts s v1, t v2, original coordinates
    std::uint64_t overlap1 = 0, overlap2 = 0;   // |A ∩ (A + shift_i)|
    std::array<std::uint64_t, 4> residue_sizes{};   // classes of L'/2L'
    std::uint64_t max_residue = 0;
    u128 energy_window = 0;              // E_+(X ∩ W), diagonal included
    u128 residue_rhs = 0;                // 4 N^2 max_j m_j
    bool energy_residue_holds = false;   // E_+ <= 4 N^2 max m_j
    bool window_energy_gate = false;     // E_+(X ∩ W) >= alpha N^3
    bool residue_concentration = false;  // max m_j >= (alpha/4) N, when gated
};

struct LocalizationCertificate {
    Vec2I z;
    std::size_t z_index = 0;             // index in the set's canonical order
    Int t_star_key = 0;
    std::uint64_t ball_count = 0;
    double required = 0.0;               // (1 - eta) n
};

struct ClassificationReport {
    Outcome outcome = Outcome::Indeterminate;
    std::uint64_t n = 0;
    std::uint64_t k = 0;                 // |D(X)|, exact
    ClassifierConfig config;
    double theta = 0.0;
    double eta = 0.0;
    u128 energy = 0;                     // E_+(X), diagonal included
    std::uint64_t max_line = 0;
    std::optional<LineCertificate> line;
    std::optional<TwoShiftCertificate> two_shift;
    std::optional<LocalizationCertificate> localization;
    std::vector<std::string> diagnostics;   // why skipped branches did not fire
};

// Branch order: line-heavy (cheapest), then the two-shift pipeline behind the
// energy gate E_+ >= alpha n^3, then quantile localization; Indeterminate
// with diagnostics when nothing fires at the configured constants.
ClassificationReport classify(const LatticePointSet& pts, const ClassifierConfig& config = {});

struct LocalizeResult {
    bool ok = false;
    Vec2I z;
    std::size_t z_index = 0;
    std::uint64_t count = 0;
    double required = 0.0;
    double deficit = 0.0;        // required bottom mass minus actual, when !ok
};

// Best closed-ball count at squared-distance key t_star; succeeds whenever
// ordered pairs with key <= t_star make up a (1 - eta) fraction, by averaging.
LocalizeResult localize(const LatticePointSet& pts, Int t_star_key, double eta);

struct PopularShiftReport {
    std::vector<std::pair<Vec2I, std::uint64_t>> popular;   // canonical-sign reps
    bool has_nonparallel = false;
    Vec2I v1, v2;                        // best nonparallel pair (max min r)
    std::uint64_t r1 = 0, r2 = 0;
    Vec2I common_dir;                    // when all popular shifts are parallel
    u128 directional_mass_total = 0;     // sum of r over that direction
};

// U = {v != 0 : r_X(v) >= rho_star n}, reduced to one representative per
// +-v pair.  Returns the nonparallel pair maximizing the smaller count, or
// the common direction with its full directional pair mass.
PopularShiftReport popular_shift_analysis(const LatticePointSet& pts, double rho_star);

struct TwoShiftOutcome {
    bool ok = false;
    std::string fail_reason;             // "no-nonparallel-shifts" | "window-density-below-threshold"
    std::optional<TwoShiftCertificate> cert;
};

// Constructive two-shift pipeline: popular-shift basis, coset restriction,
// bounding rectangle, square window extraction, heavy shifts, and the
// residue-energy inequality on the window.
TwoShiftOutcome two_shift_pipeline(const LatticePointSet& pts, const ClassifierConfig& config);

struct EnergyResidueReport {
    std::uint64_t n = 0;
    u128 energy = 0;                     // E_+ with diagonal
    std::array<std::uint64_t, 4> residue_sizes{};
    std::uint64_t max_residue = 0;
    u128 rhs = 0;                        // 4 n^2 max m_j
    bool inequality_holds = false;       // E_+ <= rhs; a theorem, never false
    bool gate = false;                   // E_+ >= alpha n^3
    bool concentration_holds = true;     // gate implies max m_j >= (alpha/4) n
};

// Both sides of the residue-energy inequality for points given in sublattice
// coordinates (residues are coordinate parities, classes of L'/2L').
EnergyResidueReport energy_residue_check(std::span<const Vec2I> pts_in_sublattice, double alpha);

} // namespace distlat
