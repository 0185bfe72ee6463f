#include "distlat/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace distlat {

namespace {

// Fraction thresholds are config doubles against integer counts; the slack
// keeps exact-boundary instances (count == frac * n in the rationals) firing.
bool meets_fraction(std::uint64_t count, double frac, std::uint64_t n) {
    return static_cast<long double>(count) + 1e-9L >= static_cast<long double>(frac) * n;
}

i128 cross(Vec2I a, Vec2I b) {
    return i128(a.x) * i128(b.y) - i128(a.y) * i128(b.x);
}

LatticePtr unit_square_model() {
    static const LatticePtr z2 = std::make_shared<LatticeModel>(LatticeModel::builtin("Z2"));
    return z2;
}

// E_+ of a coordinate multiset-free point list, diagonal included.  Additive
// energy only depends on the coordinate tuples, not on the metric, so any
// model works; the unit square keeps keys small.
u128 coordinate_energy(const std::vector<Vec2I>& pts) {
    auto ps = LatticePointSet::make(unit_square_model(), Vec2Q{}, pts);
    return additive_energy(ps).with_diagonal;
}

std::string fraction_note(const char* what, std::uint64_t count, double frac, double scale) {
    std::ostringstream os;
    os << what << ": " << count << " < " << frac * scale;
    return os.str();
}

} // namespace

void ClassifierConfig::validate() const {
    if (!(sigma > 0.0 && sigma <= 0.25)) throw precondition_error("sigma must lie in (0, 1/4]");
    if (!(c_line > 0.0 && c_line <= 1.0)) throw precondition_error("c_line must lie in (0, 1]");
    if (!(c_shift > 0.0 && c_shift <= 1.0)) throw precondition_error("c_shift must lie in (0, 1]");
    if (!(alpha_energy > 0.0 && alpha_energy <= 1.0))
        throw precondition_error("alpha_energy must lie in (0, 1]");
    if (!(eta_override >= 0.0 && eta_override <= 1.0))
        throw precondition_error("eta_target must lie in [0, 1]");
}

double ClassifierConfig::theta(std::uint64_t k) const {
    // (log k)^(-1/2 - sigma) exceeds 1 for k <= e; the quantile split needs
    // theta < 1, so the few-distance regime clamps just below it.
    double raw = 1.0;
    if (k >= 2) raw = std::pow(std::log(static_cast<double>(k)), -0.5 - sigma);
    return std::min(raw, 1.0 - 1e-12);
}

double ClassifierConfig::eta(std::uint64_t k) const {
    if (eta_override > 0.0) return eta_override;
    return std::sqrt(theta(k));
}

std::string outcome_str(Outcome o) {
    switch (o) {
        case Outcome::LineHeavy: return "LineHeavy";
        case Outcome::TwoShift: return "TwoShift";
        case Outcome::Localized: return "Localized";
        case Outcome::Indeterminate: return "Indeterminate";
    }
    throw internal_error("unknown outcome");
}

LocalizeResult localize(const LatticePointSet& pts, Int t_star_key, double eta) {
    const std::size_t n = pts.size();
    if (n < 2) throw precondition_error("localization needs at least two points");
    if (!(eta >= 0.0 && eta <= 1.0)) throw precondition_error("eta must lie in [0, 1]");

    // Per-point neighbour counts within the key; their sum is the bottom mass.
    std::vector<std::uint64_t> near(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (pts.key_between(i, j) <= t_star_key) {
                ++near[i];
                ++near[j];
            }
        }
    }
    u128 bottom = 0;
    for (std::uint64_t c : near) bottom += c;

    LocalizeResult res;
    res.required = (1.0 - eta) * static_cast<double>(n);
    const long double need_mass =
        (1.0L - static_cast<long double>(eta)) * static_cast<long double>(n) * (n - 1);
    if (static_cast<long double>(bottom) + 1e-9L < need_mass) {
        res.ok = false;
        res.deficit = static_cast<double>(need_mass - static_cast<long double>(bottom));
        return res;
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (near[i] > near[best]) best = i;   // ties keep the earliest point
    }
    res.ok = true;
    res.z = pts.points()[best];
    res.z_index = best;
    res.count = near[best] + 1;               // the ball is closed; z belongs to it
    // Averaging: sum over z of |X ∩ B(z, t*)| equals n + bottom mass, so the
    // maximum meets (1 - eta) n whenever the mass precondition holds.
    if (static_cast<long double>(res.count) + 1e-6L <
        (1.0L - static_cast<long double>(eta)) * static_cast<long double>(n)) {
        throw internal_error("localization averaging bound failed");
    }
    return res;
}

namespace {

PopularShiftReport popular_from_hist(const ShiftHistogram& hist, double rho_star) {
    PopularShiftReport rep;
    const std::uint64_t n = hist.n;
    // r(v) = r(-v), so one representative per +-v pair carries everything.
    for (const auto& [v, r] : hist.counts) {
        const bool canonical = v.y > 0 || (v.y == 0 && v.x > 0);
        if (!canonical) continue;
        if (meets_fraction(r, rho_star, n)) rep.popular.emplace_back(v, r);
    }
    std::sort(rep.popular.begin(), rep.popular.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (rep.popular.empty()) return rep;

    rep.v1 = rep.popular.front().first;
    rep.r1 = rep.popular.front().second;
    for (std::size_t j = 1; j < rep.popular.size(); ++j) {
        if (cross(rep.v1, rep.popular[j].first) != 0) {
            // Sorted by count, so the first nonparallel partner of the top
            // shift maximises the smaller of the two counts.
            rep.has_nonparallel = true;
            rep.v2 = rep.popular[j].first;
            rep.r2 = rep.popular[j].second;
            return rep;
        }
    }
    rep.common_dir = primitive_direction(rep.v1);
    rep.directional_mass_total = directional_mass(hist, rep.common_dir);
    return rep;
}

} // namespace

PopularShiftReport popular_shift_analysis(const LatticePointSet& pts, double rho_star) {
    if (!(rho_star > 0.0 && rho_star < 1.0)) throw precondition_error("rho must lie in (0, 1)");
    if (pts.size() < 2) throw precondition_error("shift analysis needs at least two points");
    return popular_from_hist(shift_histogram(pts), rho_star);
}

EnergyResidueReport energy_residue_check(std::span<const Vec2I> pts_in_sublattice, double alpha) {
    if (pts_in_sublattice.empty()) throw precondition_error("residue check needs points");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw precondition_error("alpha must lie in (0, 1]");

    // Normalise through the set container so duplicates cannot skew n.
    auto ps = LatticePointSet::make(unit_square_model(), Vec2Q{},
                                    std::vector<Vec2I>(pts_in_sublattice.begin(),
                                                       pts_in_sublattice.end()));
    EnergyResidueReport rep;
    rep.n = ps.size();
    rep.energy = ps.size() >= 2 ? additive_energy(ps).with_diagonal : u128(1);
    const ResidueDecomposition dec = residue_decompose(ps);
    rep.residue_sizes = dec.sizes;
    rep.max_residue = dec.sizes[dec.argmax_bucket()];
    rep.rhs = u128(4) * u128(rep.n) * u128(rep.n) * u128(rep.max_residue);
    rep.inequality_holds = rep.energy <= rep.rhs;
    const long double nnn =
        static_cast<long double>(rep.n) * rep.n * static_cast<long double>(rep.n);
    rep.gate = static_cast<long double>(rep.energy) >= static_cast<long double>(alpha) * nnn;
    if (rep.gate) {
        rep.concentration_holds =
            meets_fraction(rep.max_residue, alpha / 4.0, rep.n);
    }
    return rep;
}

namespace {

TwoShiftOutcome two_shift_impl(const LatticePointSet& pts, const ClassifierConfig& config,
                               const ShiftHistogram& hist) {
    const std::uint64_t n = pts.size();
    TwoShiftOutcome out;

    PopularShiftReport pop = popular_from_hist(hist, config.c_shift);
    if (!pop.has_nonparallel) {
        out.fail_reason = "no-nonparallel-shifts";
        return out;
    }

    Vec2I b1 = pop.v1, b2 = pop.v2;
    std::uint64_t r1 = pop.r1, r2 = pop.r2;
    const i128 det = cross(b1, b2);

    // Coordinates in the basis (b1, b2) by the adjugate; points land in the
    // sublattice cosets according to the numerators modulo det.
    auto numerators = [&](Vec2I p) -> std::pair<i128, i128> {
        return {i128(b2.y) * p.x - i128(b2.x) * p.y, i128(b1.x) * p.y - i128(b1.y) * p.x};
    };
    const i128 mod = det < 0 ? -det : det;
    auto coset_of = [&](Vec2I p) -> std::pair<i128, i128> {
        auto [q1, q2] = numerators(p);
        i128 c1 = q1 % mod, c2 = q2 % mod;
        if (c1 < 0) c1 += mod;
        if (c2 < 0) c2 += mod;
        return {c1, c2};
    };

    // The constructive step works inside one coset of L' = Z b1 + Z b2;
    // keep the most populated one and count the rest as excluded.
    std::map<std::pair<i128, i128>, std::uint64_t> coset_sizes;
    for (const Vec2I p : pts.points()) ++coset_sizes[coset_of(p)];
    std::pair<i128, i128> best_coset = coset_sizes.begin()->first;
    std::uint64_t best_size = coset_sizes.begin()->second;
    for (const auto& [key, size] : coset_sizes) {
        if (size > best_size) {
            best_coset = key;
            best_size = size;
        }
    }

    Vec2I anchor;
    std::vector<Vec2I> q;
    q.reserve(n);
    bool have_anchor = false;
    for (const Vec2I p : pts.points()) {
        if (coset_of(p) != best_coset) continue;
        if (!have_anchor) {
            anchor = p;
            have_anchor = true;
        }
        auto [q1, q2] = numerators(p - anchor);
        const i128 x = q1 / det, y = q2 / det;
        constexpr i128 lim = i128(std::numeric_limits<Int>::max());
        if (x > lim || x < -lim || y > lim || y < -lim)
            throw budget_error("sublattice coordinates exceed the 64-bit range");
        q.push_back({static_cast<Int>(x), static_cast<Int>(y)});
    }
    const std::uint64_t excluded = n - q.size();

    Vec2I lo = q.front(), hi = q.front();
    for (const Vec2I p : q) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    // Orient the long side first, as the window extraction requires.
    if (hi.x - lo.x < hi.y - lo.y) {
        std::swap(b1, b2);
        std::swap(r1, r2);
        std::swap(lo.x, lo.y);
        std::swap(hi.x, hi.y);
        for (Vec2I& p : q) std::swap(p.x, p.y);
    }
    const LambdaRectangle bounding{lo, hi.x - lo.x + 1, hi.y - lo.y + 1};
    if (bounding.L2 < 2) {
        // The coset collapses to a single row of L'; no square window exists.
        out.fail_reason = "window-density-below-threshold";
        return out;
    }

    const RectSubset a0 = RectSubset::make(bounding, q);
    const SquareExtract ex = extract_square_window(a0);
    if (!ex.guarantee_holds) throw internal_error("window extraction lost its density guarantee");

    std::vector<Vec2I> qin;
    for (const Vec2I p : q) {
        if (ex.window.contains(p)) qin.push_back(p);
    }
    const std::uint64_t nw = qin.size();
    if (nw < 2) {
        out.fail_reason = "window-density-below-threshold";
        return out;
    }

    const RectSubset a = RectSubset::make(ex.window, qin);
    const HeavyShifts heavy = find_heavy_shifts(a);
    if (!meets_fraction(heavy.overlap1, config.c_shift, nw) ||
        !meets_fraction(heavy.overlap2, config.c_shift, nw)) {
        out.fail_reason = "window-density-below-threshold";
        return out;
    }

    TwoShiftCertificate cert;
    cert.v1 = b1;
    cert.v2 = b2;
    cert.r1 = r1;
    cert.r2 = r2;
    cert.anchor = anchor;
    cert.excluded = excluded;
    cert.bounding = bounding;
    cert.window = ex.window;
    cert.n_window = nw;
    cert.density = a.beta();
    cert.shift1 = {b1.x * heavy.s, b1.y * heavy.s};
    cert.shift2 = {b2.x * heavy.t, b2.y * heavy.t};
    cert.overlap1 = heavy.overlap1;
    cert.overlap2 = heavy.overlap2;

    const ResidueDecomposition dec = residue_decompose(qin);
    cert.residue_sizes = dec.sizes;
    cert.max_residue = dec.sizes[dec.argmax_bucket()];
    cert.energy_window = coordinate_energy(qin);
    cert.residue_rhs = u128(4) * u128(nw) * u128(nw) * u128(cert.max_residue);
    cert.energy_residue_holds = cert.energy_window <= cert.residue_rhs;
    if (!cert.energy_residue_holds) throw internal_error("residue-energy inequality violated");

    const long double nnn = static_cast<long double>(nw) * nw * static_cast<long double>(nw);
    cert.window_energy_gate = static_cast<long double>(cert.energy_window) >=
                              static_cast<long double>(config.alpha_energy) * nnn;
    if (cert.window_energy_gate) {
        cert.residue_concentration = meets_fraction(cert.max_residue, config.alpha_energy / 4.0, nw);
        if (!cert.residue_concentration)
            throw internal_error("residue concentration bound violated under the energy gate");
    }

    out.ok = true;
    out.cert = std::move(cert);
    return out;
}

} // namespace

TwoShiftOutcome two_shift_pipeline(const LatticePointSet& pts, const ClassifierConfig& config) {
    config.validate();
    if (pts.size() < 3) throw precondition_error("two-shift pipeline needs at least three points");
    const ShiftHistogram hist = shift_histogram(pts);
    const std::uint64_t n = pts.size();
    const long double nnn = static_cast<long double>(n) * n * static_cast<long double>(n);
    if (static_cast<long double>(hist.energy_with_diagonal()) <
        static_cast<long double>(config.alpha_energy) * nnn) {
        throw precondition_error("two-shift pipeline requires the energy gate E+ >= alpha n^3");
    }
    return two_shift_impl(pts, config, hist);
}

ClassificationReport classify(const LatticePointSet& pts, const ClassifierConfig& config) {
    config.validate();
    if (pts.size() < 3) throw precondition_error("classification needs at least three points");

    ClassificationReport rep;
    rep.config = config;
    rep.n = pts.size();

    const DistanceSpectrum spec = distance_spectrum(pts);
    rep.k = spec.k();
    rep.theta = config.theta(rep.k);
    rep.eta = config.eta(rep.k);

    // Branch 1: line-heaviness, the cheapest statistic.
    const LineHistogram lines = line_histogram(pts);
    rep.max_line = lines.max_line();
    if (meets_fraction(rep.max_line, config.c_line, rep.n)) {
        LineCertificate cert;
        cert.line = *lines.argmax();
        cert.s_line = rep.max_line;
        cert.fraction = static_cast<double>(rep.max_line) / static_cast<double>(rep.n);
        rep.line = cert;
        rep.outcome = Outcome::LineHeavy;
        return rep;
    }
    rep.diagnostics.push_back(fraction_note("line-heavy max line", rep.max_line, config.c_line,
                                            static_cast<double>(rep.n)));

    // Branch 2: the two-shift pipeline behind the energy gate.
    const ShiftHistogram hist = shift_histogram(pts);
    rep.energy = hist.energy_with_diagonal();
    const long double nnn =
        static_cast<long double>(rep.n) * rep.n * static_cast<long double>(rep.n);
    if (static_cast<long double>(rep.energy) >=
        static_cast<long double>(config.alpha_energy) * nnn) {
        TwoShiftOutcome two = two_shift_impl(pts, config, hist);
        if (two.ok) {
            rep.two_shift = std::move(two.cert);
            rep.outcome = Outcome::TwoShift;
            return rep;
        }
        rep.diagnostics.push_back("two-shift: " + two.fail_reason);
    } else {
        rep.diagnostics.push_back("energy-gate: E+ = " + u128_str(rep.energy) +
                                  " below alpha n^3");
    }

    // Branch 3: quantile localization.
    const Int t_star = quantile_radius(spec, rep.theta);
    const LocalizeResult loc = localize(pts, t_star, rep.eta);
    if (loc.ok) {
        LocalizationCertificate cert;
        cert.z = loc.z;
        cert.z_index = loc.z_index;
        cert.t_star_key = t_star;
        cert.ball_count = loc.count;
        cert.required = loc.required;
        rep.localization = cert;
        rep.outcome = Outcome::Localized;
        return rep;
    }
    {
        std::ostringstream os;
        os << "localization: bottom-mass deficit " << loc.deficit;
        rep.diagnostics.push_back(os.str());
    }
    rep.outcome = Outcome::Indeterminate;
    return rep;
}

} // namespace distlat
