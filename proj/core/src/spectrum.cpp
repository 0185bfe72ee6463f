#include "distlat/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace distlat {

u128 DistanceSpectrum::total_mass() const {
    u128 t = 0;
    for (const auto& e : entries) t += e.m;
    return t;
}

std::uint64_t DistanceSpectrum::multiplicity(Int key) const {
    const auto it = std::lower_bound(
        entries.begin(), entries.end(), key,
        [](const SpectrumEntry& e, Int k) { return e.key < k; });
    return (it != entries.end() && it->key == key) ? it->m : 0;
}

DistanceSpectrum distance_spectrum(const LatticePointSet& pts) {
    if (pts.size() < 2) throw precondition_error("distance spectrum needs at least two points");
    const auto& p = pts.points();
    const QuadForm f = pts.model().form();
    std::unordered_map<Int, std::uint64_t> acc;
    acc.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            const Vec2I d = p[i] - p[j];
            acc[f.eval(d.x, d.y)] += 2;     // both orders at once
        }
    }
    DistanceSpectrum s;
    s.n = p.size();
    s.entries.reserve(acc.size());
    for (const auto& [key, m] : acc) s.entries.push_back({key, m});
    std::sort(s.entries.begin(), s.entries.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.key < b.key; });
    return s;
}

namespace {

// Shared sweep over the shift grid of a row-interval window.  For each row
// shift e >= 0 the ordered-pair count against x-shift u1 is a sum of interval
// cross-correlation trapezoids; each contributes four second-difference
// stabs, and two prefix passes recover the counts.  sink(key, count) receives
// every nonzero bin; mirrored shifts (e > 0) arrive pre-doubled.
template <class Sink>
void sweep_shift_grid(const QuadForm& form, const RowIntervals& rows, Sink&& sink) {
    const Int h = static_cast<Int>(rows.size());
    std::vector<std::int64_t> buf;
    for (Int e = 0; e < h; ++e) {
        Int lo = std::numeric_limits<Int>::max();
        Int hi = std::numeric_limits<Int>::min();
        for (Int i = 0; i + e < h; ++i) {
            const auto& [a1, b1] = rows[static_cast<std::size_t>(i)];
            const auto& [a2, b2] = rows[static_cast<std::size_t>(i + e)];
            if (a1 > b1 || a2 > b2) continue;   // empty-row sentinel
            lo = std::min(lo, a2 - b1);
            hi = std::max(hi, b2 - a1);
        }
        if (hi < lo) continue;                  // every pair at this shift was empty
        const std::size_t width = static_cast<std::size_t>(hi - lo + 1);
        buf.assign(width + 2, 0);
        for (Int i = 0; i + e < h; ++i) {
            const auto& [a1, b1] = rows[static_cast<std::size_t>(i)];
            const auto& [a2, b2] = rows[static_cast<std::size_t>(i + e)];
            if (a1 > b1 || a2 > b2) continue;   // empty-row sentinel
            buf[static_cast<std::size_t>(a2 - b1 - lo)] += 1;
            buf[static_cast<std::size_t>(b2 - b1 + 1 - lo)] -= 1;
            buf[static_cast<std::size_t>(a2 - a1 + 1 - lo)] -= 1;
            buf[static_cast<std::size_t>(b2 - a1 + 2 - lo)] += 1;
        }
        std::int64_t d1 = 0, f = 0;
        for (std::size_t idx = 0; idx < width; ++idx) {
            d1 += buf[idx];
            f += d1;
            if (f == 0) continue;
            const Int u1 = lo + static_cast<Int>(idx);
            if (e == 0) {
                if (u1 == 0) continue;          // self-pairs
                sink(form.eval(u1, 0), static_cast<std::uint64_t>(f));
            } else {
                sink(form.eval(u1, e), 2 * static_cast<std::uint64_t>(f));
            }
        }
    }
}

// Largest key visited by the sweep: for each row shift the key is convex in
// the x-shift, so only interval endpoints matter.
Int max_key_on_grid(const QuadForm& form, const RowIntervals& rows) {
    const Int h = static_cast<Int>(rows.size());
    Int best = 0;
    for (Int e = 0; e < h; ++e) {
        Int lo = std::numeric_limits<Int>::max();
        Int hi = std::numeric_limits<Int>::min();
        for (Int i = 0; i + e < h; ++i) {
            const auto& [a1, b1] = rows[static_cast<std::size_t>(i)];
            const auto& [a2, b2] = rows[static_cast<std::size_t>(i + e)];
            if (a1 > b1 || a2 > b2) continue;   // empty-row sentinel
            lo = std::min(lo, a2 - b1);
            hi = std::max(hi, b2 - a1);
        }
        if (hi < lo) continue;
        best = std::max({best, form.eval(lo, e), form.eval(hi, e)});
    }
    return best;
}

} // namespace

DistanceSpectrum spectrum_from_rows(const LatticeModel& model, const RowIntervals& rows,
                                    std::uint64_t budget_bytes) {
    if (rows.point_count < 2) throw precondition_error("distance spectrum needs at least two points");
    const QuadForm form = model.form();
    const Int max_key = max_key_on_grid(form, rows);
    const std::uint64_t bins = static_cast<std::uint64_t>(max_key) + 1;
    if (bins * sizeof(std::uint64_t) > budget_bytes) {
        throw budget_error("spectrum bins exceed byte budget: need " +
                           std::to_string(bins * sizeof(std::uint64_t)));
    }
    std::vector<std::uint64_t> m(bins, 0);
    u128 mass = 0;
    sweep_shift_grid(form, rows, [&](Int key, std::uint64_t cnt) {
        m[static_cast<std::size_t>(key)] += cnt;
        mass += cnt;
    });
    const u128 expect = u128(rows.point_count) * (rows.point_count - 1);
    if (mass != expect) throw internal_error("row sweep lost pairs");
    DistanceSpectrum s;
    s.n = rows.point_count;
    for (std::uint64_t key = 1; key < bins; ++key) {
        if (m[key] != 0) s.entries.push_back({static_cast<Int>(key), m[key]});
    }
    return s;
}

std::uint64_t distinct_key_count_from_rows(const LatticeModel& model, const RowIntervals& rows,
                                           std::uint64_t budget_bytes) {
    if (rows.point_count < 2) return 0;
    const QuadForm form = model.form();
    const Int max_key = max_key_on_grid(form, rows);
    const std::uint64_t bins = static_cast<std::uint64_t>(max_key) + 1;
    if (bins / 8 + 8 > budget_bytes) {
        throw budget_error("key presence bits exceed byte budget");
    }
    std::vector<std::uint64_t> bits(bins / 64 + 1, 0);
    sweep_shift_grid(form, rows, [&](Int key, std::uint64_t) {
        bits[static_cast<std::size_t>(key) >> 6] |= std::uint64_t(1) << (key & 63);
    });
    std::uint64_t count = 0;
    for (const std::uint64_t w : bits) count += static_cast<std::uint64_t>(__builtin_popcountll(w));
    return count;
}

std::uint64_t rep_count_rows(const RowIntervals& rows, Vec2I v) {
    const Int h = static_cast<Int>(rows.size());
    std::uint64_t total = 0;
    for (Int i = 0; i < h; ++i) {
        const Int j = i + v.y;
        if (j < 0 || j >= h) continue;
        const auto& [a1, b1] = rows[static_cast<std::size_t>(i)];
        const auto& [a2, b2] = rows[static_cast<std::size_t>(j)];
        // x in row i with x + v.x in row j; pairs (p, q) = (x + v, x) have p - q = v
        const Int lo = std::max(a1, a2 - v.x);
        const Int hi = std::min(b1, b2 - v.x);
        if (lo <= hi) total += static_cast<std::uint64_t>(hi - lo + 1);
    }
    return total;
}

QOrdResult q_ord(const DistanceSpectrum& spec) {
    QOrdResult r;
    for (const auto& e : spec.entries) r.q_ord += u128(e.m) * e.m;
    const Rat n(spec.n);
    r.cs_floor = n * n * (n - 1) * (n - 1) / Rat(static_cast<Int>(spec.k()));
    const Rat q(to_bigint(r.q_ord));
    r.floor_holds = q >= r.cs_floor;
    if (!r.floor_holds) throw internal_error("Cauchy-Schwarz floor violated");
    return r;
}

namespace {

std::uint64_t cap_count_for(double theta, std::size_t k) {
    if (!(theta >= 0.0) || theta >= 1.0) {
        throw precondition_error("quantile parameter must lie in [0, 1)");
    }
    return static_cast<std::uint64_t>(std::floor(theta * static_cast<double>(k) + 1e-9));
}

} // namespace

Int quantile_radius(const DistanceSpectrum& spec, double theta) {
    const std::size_t k = spec.k();
    if (k == 0) throw precondition_error("empty spectrum");
    const std::uint64_t cap = cap_count_for(theta, k);
    return spec.entries[k - 1 - static_cast<std::size_t>(cap)].key;
}

TopCapSplit top_cap_split(const DistanceSpectrum& spec, double theta) {
    const std::size_t k = spec.k();
    if (k == 0) throw precondition_error("empty spectrum");
    TopCapSplit out;
    out.cap_count = cap_count_for(theta, k);
    out.t_star = spec.entries[k - 1 - static_cast<std::size_t>(out.cap_count)].key;
    for (std::size_t i = k - static_cast<std::size_t>(out.cap_count); i < k; ++i) {
        out.top_mass += spec.entries[i].m;
    }
    u128 qo = 0;
    u128 total = 0;
    for (const auto& e : spec.entries) {
        qo += u128(e.m) * e.m;
        total += e.m;
    }
    out.bottom_mass = total - out.top_mass;
    out.cs_bound = std::sqrt(static_cast<double>(qo) * static_cast<double>(out.cap_count));
    // exact check: top_mass^2 <= Q_ord * L
    const BigInt lhs = to_bigint(out.top_mass) * to_bigint(out.top_mass);
    const BigInt rhs = to_bigint(qo) * BigInt(out.cap_count);
    out.bound_holds = lhs <= rhs;
    if (!out.bound_holds) throw internal_error("top-cap mass exceeds Cauchy-Schwarz bound");
    return out;
}

u128 ShiftHistogram::energy_offdiagonal() const {
    u128 e = 0;
    for (const auto& [v, r] : counts) e += u128(r) * r;
    return e;
}

u128 ShiftHistogram::energy_with_diagonal() const {
    return energy_offdiagonal() + u128(n) * n;
}

std::uint64_t ShiftHistogram::max_count() const {
    std::uint64_t best = 0;
    for (const auto& [v, r] : counts) best = std::max(best, r);
    return best;
}

std::uint64_t ShiftHistogram::count(Vec2I v) const {
    const auto it = counts.find(v);
    return it == counts.end() ? 0 : it->second;
}

ShiftHistogram shift_histogram(const LatticePointSet& pts) {
    ShiftHistogram h;
    const auto& p = pts.points();
    h.n = p.size();
    h.counts.reserve(p.size() * 4);
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (i == j) continue;
            ++h.counts[p[i] - p[j]];
        }
    }
    return h;
}

AdditiveEnergy additive_energy(const LatticePointSet& pts) {
    const ShiftHistogram h = shift_histogram(pts);
    AdditiveEnergy e;
    e.offdiagonal = h.energy_offdiagonal();
    e.with_diagonal = h.energy_with_diagonal();
    return e;
}

Vec2I primitive_direction(Vec2I v) {
    if (v.x == 0 && v.y == 0) throw precondition_error("zero vector has no direction");
    const Int g = std::gcd(v.x, v.y);
    Vec2I d{v.x / g, v.y / g};
    if (d.y < 0 || (d.y == 0 && d.x < 0)) d = -d;
    return d;
}

std::uint64_t LineHistogram::max_line() const {
    std::uint64_t best = n >= 1 ? 1 : 0;
    for (const auto& [key, s] : counts) best = std::max(best, s);
    return best;
}

std::optional<LineKey> LineHistogram::argmax() const {
    std::optional<LineKey> best;
    std::uint64_t best_s = 0;
    for (const auto& [key, s] : counts) {
        if (s > best_s || (s == best_s && best && key < *best)) {
            best = key;
            best_s = s;
        }
    }
    return best;
}

bool LineHistogram::pair_identity_holds() const {
    u128 pair_sum = 0;
    for (const auto& [key, s] : counts) pair_sum += u128(s) * (s - 1) / 2;
    return pair_sum == u128(n) * (n - 1) / 2;
}

LineHistogram line_histogram(const LatticePointSet& pts) {
    LineHistogram out;
    const auto& p = pts.points();
    out.n = p.size();
    std::unordered_map<LineKey, std::uint64_t, LineKeyHash> pair_counts;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            const Vec2I dir = primitive_direction(p[j] - p[i]);
            const i128 anchor = i128(p[i].x) * dir.y - i128(p[i].y) * dir.x;
            if (anchor > std::numeric_limits<Int>::max() || anchor < std::numeric_limits<Int>::min()) {
                throw internal_error("line anchor overflows 64 bits");
            }
            ++pair_counts[LineKey{dir, static_cast<Int>(anchor)}];
        }
    }
    for (const auto& [key, c] : pair_counts) {
        // invert c = s(s-1)/2 exactly
        const std::uint64_t s = (1 + isqrt_u64(8 * c + 1)) / 2;
        if (s * (s - 1) / 2 != c) throw internal_error("line pair count is not triangular");
        out.counts.emplace(key, s);
    }
    return out;
}

u128 directional_mass(const ShiftHistogram& hist, Vec2I primitive_dir) {
    u128 total = 0;
    for (const auto& [v, r] : hist.counts) {
        if (primitive_direction(v) == primitive_dir) total += r;
    }
    return total;
}

u128 line_direction_mass(const LineHistogram& lines, Vec2I primitive_dir) {
    u128 total = 0;
    for (const auto& [key, s] : lines.counts) {
        if (key.dir == primitive_dir) total += u128(s) * (s - 1);
    }
    return total;
}

std::size_t ResidueDecomposition::argmax_bucket() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < 4; ++i) {
        if (sizes[i] > sizes[best]) best = i;
    }
    return best;
}

ResidueDecomposition residue_decompose(std::span<const Vec2I> pts) {
    if (pts.size() > std::numeric_limits<std::uint32_t>::max()) {
        throw budget_error("residue decomposition index overflow");
    }
    ResidueDecomposition out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::size_t bucket =
            static_cast<std::size_t>(pts[i].x & 1) | (static_cast<std::size_t>(pts[i].y & 1) << 1);
        ++out.sizes[bucket];
        out.members[bucket].push_back(static_cast<std::uint32_t>(i));
    }
    return out;
}

ResidueDecomposition residue_decompose(const LatticePointSet& pts) {
    return residue_decompose(std::span<const Vec2I>(pts.points()));
}

namespace {

struct IsometryKeyHash {
    std::size_t operator()(const IsometryKey& k) const noexcept {
        std::size_t h = hash_rat(k.c);
        boost::hash_combine(h, hash_rat(k.sigma));
        boost::hash_combine(h, hash_rat(k.t1));
        boost::hash_combine(h, hash_rat(k.t2));
        return h;
    }
};

bool key_less(const IsometryKey& a, const IsometryKey& b) {
    if (a.c != b.c) return a.c < b.c;
    if (a.sigma != b.sigma) return a.sigma < b.sigma;
    if (a.t1 != b.t1) return a.t1 < b.t1;
    return a.t2 < b.t2;
}

} // namespace

IsometrySpectrum isometry_spectrum(const LatticePointSet& pts, std::size_t size_cap) {
    const auto& p = pts.points();
    if (p.size() < 2) throw precondition_error("isometry spectrum needs at least two points");
    if (p.size() > size_cap) {
        throw budget_error("isometry spectrum capped at " + std::to_string(size_cap) + " points");
    }
    const GramMatrix& g = pts.model().gram();
    const Rat covol_sq = pts.model().covolume_sq();

    // ordered pairs bucketed by distance key
    std::unordered_map<Int, std::vector<std::pair<std::uint32_t, std::uint32_t>>> buckets;
    for (std::uint32_t i = 0; i < p.size(); ++i) {
        for (std::uint32_t j = 0; j < p.size(); ++j) {
            if (i == j) continue;
            buckets[pts.key_between(i, j)].push_back({i, j});
        }
    }

    // Each ordered pair of same-key segments determines exactly one direct
    // isometry; group quadruples by the exact key of that isometry.
    std::unordered_map<IsometryKey, u128, IsometryKeyHash> quads;
    for (const auto& [key, pairs] : buckets) {
        (void)key;
        for (const auto& [i, j] : pairs) {
            const Vec2I d = p[j] - p[i];
            const Rat qd = g.eval(d);
            for (const auto& [i2, j2] : pairs) {
                const Vec2I d2 = p[j2] - p[i2];
                const Rat c = g.pairing(to_vec2q(d), to_vec2q(d2)) / qd;
                const Rat sigma = Rat(BigInt(d.x) * d2.y - BigInt(d.y) * d2.x) / qd;
                if (c * c + sigma * sigma * covol_sq != 1) {
                    throw internal_error("isometry key fails cos/sin identity");
                }
                // linear part in lattice coordinates
                const Rat m11 = c - sigma * g.g12, m12 = -sigma * g.g22;
                const Rat m21 = sigma * g.g11, m22 = c + sigma * g.g12;
                const Rat t1 = Rat(p[i2].x) - (m11 * p[i].x + m12 * p[i].y);
                const Rat t2 = Rat(p[i2].y) - (m21 * p[i].x + m22 * p[i].y);
                ++quads[IsometryKey{c, sigma, t1, t2}];
            }
        }
    }

    const std::unordered_set<Vec2I, Vec2IHash> members(p.begin(), p.end());
    auto index_of = [&](Vec2I v) {
        return static_cast<std::uint64_t>(
            std::lower_bound(p.begin(), p.end(), v) - p.begin());
    };

    IsometrySpectrum out;
    out.n = p.size();
    std::unordered_map<std::uint64_t, std::uint64_t> per_pair;
    for (const auto& [key, quad_count] : quads) {
        const Rat m11 = key.c - key.sigma * g.g12, m12 = -key.sigma * g.g22;
        const Rat m21 = key.sigma * g.g11, m22 = key.c + key.sigma * g.g12;
        std::uint64_t r_g = 0;
        for (const Vec2I& x : p) {
            const Rat y1 = m11 * x.x + m12 * x.y + key.t1;
            const Rat y2 = m21 * x.x + m22 * x.y + key.t2;
            using boost::multiprecision::denominator;
            using boost::multiprecision::numerator;
            if (denominator(y1) != 1 || denominator(y2) != 1) continue;
            const Vec2I y{to_int_checked(numerator(y1)), to_int_checked(numerator(y2))};
            if (!members.contains(y)) continue;
            ++r_g;
            ++per_pair[(index_of(x) << 32) | index_of(y)];
        }
        if (u128(r_g) * (r_g - 1) != quad_count) {
            throw internal_error("isometry pair count does not match its quadruples");
        }
        const bool is_translation = key.c == 1 && key.sigma == 0;
        out.entries.push_back({key, r_g, is_translation});
        out.q_star += quad_count;
    }
    std::sort(out.entries.begin(), out.entries.end(),
              [](const IsometryEntry& a, const IsometryEntry& b) { return key_less(a.key, b.key); });
    for (const auto& [pair_id, cnt] : per_pair) {
        (void)pair_id;
        out.max_per_pair = std::max(out.max_per_pair, cnt);
    }

    // exact cross-checks against the plain spectra
    const DistanceSpectrum spec = distance_spectrum(pts);
    for (const auto& e : spec.entries) out.q_ord_value += u128(e.m) * e.m;
    if (out.q_ord_value != out.q_star) {
        throw internal_error("isometry mass does not match ordered spectrum mass");
    }
    const ShiftHistogram hist = shift_histogram(pts);
    for (const auto& e : out.entries) {
        if (!e.is_translation) continue;
        using boost::multiprecision::denominator;
        using boost::multiprecision::numerator;
        if (denominator(e.key.t1) != 1 || denominator(e.key.t2) != 1) {
            throw internal_error("translation with fractional shift");
        }
        const Vec2I v{to_int_checked(numerator(e.key.t1)), to_int_checked(numerator(e.key.t2))};
        if (v == Vec2I{0, 0}) {
            if (e.r_g != pts.size()) throw internal_error("identity must fix every point");
        } else if (e.r_g != hist.count(v)) {
            throw internal_error("translation count disagrees with shift histogram");
        }
    }
    return out;
}

} // namespace distlat
