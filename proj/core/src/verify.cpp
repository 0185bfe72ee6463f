#include "distlat/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

namespace distlat {

namespace {

// Deterministic 64-bit LCG; the high bits feed every randomized sweep, so a
// fixed seed reproduces each suite bit for bit on any platform.
struct Sweep {
    std::uint64_t s;

    explicit Sweep(std::uint64_t seed) : s(seed) {}

    std::uint64_t next() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return s >> 33;
    }
    std::uint64_t below(std::uint64_t m) { return m ? next() % m : 0; }
    Int range(Int lo, Int hi) {   // inclusive
        return lo + static_cast<Int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    double unit() { return static_cast<double>(next() % 1000000) / 1000000.0; }
};

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 1469598103934665603ull;
    for (char ch : text) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ull;
    }
    return h;
}

double u128_d(u128 v) { return static_cast<double>(v); }

const LatticePtr& model_z2() {
    static const LatticePtr m = std::make_shared<LatticeModel>(LatticeModel::builtin("Z2"));
    return m;
}
const LatticePtr& model_hex() {
    static const LatticePtr m = std::make_shared<LatticeModel>(LatticeModel::builtin("hex"));
    return m;
}
const LatticePtr& model_hexu() {
    static const LatticePtr m =
        std::make_shared<LatticeModel>(LatticeModel::builtin("hex-unimodular"));
    return m;
}

// One assertion: bump the counter, record the first failing description.
void check(SuiteResult& r, bool ok, const std::string& what) {
    ++r.checks;
    if (!ok) {
        ++r.failures;
        if (r.detail.empty()) r.detail = "first failure: " + what;
    }
}

void set_detail(SuiteResult& r, const std::string& text) {
    if (r.failures == 0) r.detail = text;
}

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// Random subset of a coordinate box with at least two points; small boxes
// force repeated distances, which is where the identities earn their keep.
LatticePointSet random_set(Sweep& rng, LatticePtr model, std::uint64_t lo, std::uint64_t hi,
                           Int box) {
    const std::uint64_t target = lo + rng.below(hi - lo + 1);
    if (Int(box + 1) * Int(box + 1) < Int(2 * target)) {
        box = static_cast<Int>(isqrt_u64(2 * target)) + 1;
    }
    std::set<Vec2I> pts;
    std::uint64_t guard = 100 * target + 1000;
    while (pts.size() < target && guard-- > 0) {
        pts.insert({rng.range(0, box), rng.range(0, box)});
    }
    while (pts.size() < 2) pts.insert({static_cast<Int>(pts.size() + 1) * (box + 1), 0});
    return LatticePointSet::make(std::move(model), {}, {pts.begin(), pts.end()});
}

i128 cross_i(Vec2I a, Vec2I b) {
    return i128(a.x) * i128(b.y) - i128(a.y) * i128(b.x);
}

// ---------------------------------------------------------------------------
// Suite bodies.  Each one is a pure function of (options, salted generator).

void suite_lattice(SuiteResult& r, const SuiteOptions& o, Sweep& rng) {
    std::vector<LatticePtr> models = {model_z2(), model_hex(), model_hexu()};
    for (int t = 0; t < 3; ++t) {
        const Int a = 1 + rng.range(0, 4);
        const Int c = 1 + rng.range(0, 4);
        const Int q = 1 + rng.range(0, 2);
        const Int bound = std::min(a, c);
        const Int d = rng.range(-bound, bound);
        // |g12| <= min(g11, g22) / 2 keeps the matrix positive definite.
        GramMatrix g{Rat(a, q), Rat(d, 2 * q), Rat(c, q)};
        models.push_back(std::make_shared<LatticeModel>(LatticeModel::from_gram(g)));
    }

    double max_ratio = 0.0;
    const std::uint64_t samples = std::max<std::uint64_t>(200, o.trials * 5);
    for (const auto& m : models) {
        // Scale split: the Gram form equals scale times the primitive form.
        bool split_ok = true;
        for (Int x = -20; x <= 20; ++x) {
            for (Int y = -20; y <= 20; ++y) {
                const Vec2I u{x, y};
                if (m->gram().eval(u) != m->scale() * Rat(m->form().eval(x, y))) split_ok = false;
            }
        }
        check(r, split_ok, "gram value != scale * primitive form on " + m->label());

        // Reducing an already reduced Gram must be the identity move.
        const ReductionResult again = gauss_reduce(m->reduction().reduced);
        check(r, again.change == Unimodular{}, "reduction not idempotent on " + m->label());
        check(r, again.reduced == m->reduction().reduced,
              "re-reduction changed the Gram on " + m->label());

        // Shortest vector by brute force over the reduced basis.
        Rat best;
        bool first = true;
        for (Int x = -3; x <= 3; ++x) {
            for (Int y = -3; y <= 3; ++y) {
                if (x == 0 && y == 0) continue;
                const Rat v = m->reduction().reduced.eval(Vec2I{x, y});
                if (first || v < best) {
                    best = v;
                    first = false;
                }
            }
        }
        check(r, best == m->lambda1_sq(), "lambda1^2 mismatch on " + m->label());

        // Squared covolume is the Gram determinant.
        check(r, m->covolume_sq() == m->gram().det(), "covolume^2 != det on " + m->label());

        // Covering radius oracle: every sampled cell point sits within mu of
        // the lattice, and the deep hole attains the radius exactly.
        double model_max = 0.0;
        bool within = true;
        for (std::uint64_t i = 0; i <= samples; ++i) {
            Vec2Q t;
            if (i == 0) {
                t = m->deep_hole();
            } else {
                t = {Rat(static_cast<Int>(rng.below(1000)), 1000),
                     Rat(static_cast<Int>(rng.below(1000)), 1000)};
            }
            Rat min_q;
            bool have = false;
            for (Int lx = -2; lx <= 3; ++lx) {
                for (Int ly = -2; ly <= 3; ++ly) {
                    const Rat q = m->gram().eval(t - to_vec2q(Vec2I{lx, ly}));
                    if (!have || q < min_q) {
                        min_q = q;
                        have = true;
                    }
                }
            }
            if (min_q > m->covering_radius_sq()) within = false;
            model_max = std::max(model_max, rat_d(min_q) / rat_d(m->covering_radius_sq()));
        }
        check(r, within, "sampled point farther than the covering radius on " + m->label());
        check(r, model_max >= 0.9801, "sampling never approached the covering radius on " +
                                          m->label());
        max_ratio = std::max(max_ratio, model_max);
    }
    r.statistic = max_ratio;
    set_detail(r, "max sampled (distance/mu)^2 = " + num(max_ratio) + " over " +
                      std::to_string(models.size()) + " lattices");
}

void suite_qord(SuiteResult& r, const SuiteOptions& o, Sweep& rng) {
    double min_ratio = 0.0;
    bool first = true;
    for (std::uint64_t t = 0; t < o.trials; ++t) {
        const LatticePtr& m = (t % 2 == 0) ? model_z2() : model_hex();
        const Int box = (t % 3 == 0) ? static_cast<Int>(o.nmax / 2 + 2)
                                     : static_cast<Int>(o.nmax + 10);
        const auto ps = random_set(rng, m, 2, o.nmax + 10, box);
        const auto spec = distance_spectrum(ps);
        const auto q = q_ord(spec);
        check(r, q.floor_holds, "moment below its distinct-count floor, n=" +
                                    std::to_string(ps.size()));
        const double ratio = u128_d(q.q_ord) / rat_d(q.cs_floor);
        if (first || ratio < min_ratio) {
            min_ratio = ratio;
            first = false;
        }
    }
    r.statistic = min_ratio;
    set_detail(r, "min moment/floor ratio = " + num(min_ratio));
}

void suite_L41(SuiteResult& r, const SuiteOptions& o, Sweep& rng) {
    const std::uint64_t instances = std::clamp<std::uint64_t>(o.trials / 8, 4, 40);
    const std::uint64_t cap = std::min<std::uint64_t>(o.nmax, 60);
    double max_q = 0.0;
    for (std::uint64_t t = 0; t < instances; ++t) {
        const LatticePtr& m = (t % 2 == 0) ? model_z2() : model_hex();
        const auto ps = random_set(rng, m, 3, cap, static_cast<Int>(cap / 2 + 6));
        const auto iso = isometry_spectrum(ps);
        check(r, iso.q_star == iso.q_ord_value, "isometry total != spectrum moment, n=" +
                                                    std::to_string(ps.size()));

        const auto spec = distance_spectrum(ps);
        check(r, iso.q_ord_value == q_ord(spec).q_ord, "moment disagrees across modules");

        // Translations alone must reproduce the difference-count identity;
        // the identity map is the zero translation and contributes n(n-1).
        u128 trans = 0;
        for (const auto& e : iso.entries) {
            if (e.is_translation) trans += u128(e.r_g) * (e.r_g - 1);
        }
        const std::uint64_t n = ps.size();
        u128 shifts = u128(n) * (n - 1);
        for (const auto& [v, c] : shift_histogram(ps).counts) shifts += u128(c) * (c - 1);
        check(r, trans == shifts, "translation part != shift pair count");
        check(r, iso.max_per_pair >= 1, "no isometry matched any pair");
        max_q = std::max(max_q, u128_d(iso.q_star));
    }
    r.statistic = max_q;
    set_detail(r, "largest exact moment = " + num(max_q) + " over " +
                      std::to_string(instances) + " sets");
}

void suite_hist(SuiteResult& r, const SuiteOptions& o, Sweep& rng) {
    for (std::uint64_t t = 0; t < o.trials; ++t) {
        const LatticePtr& m = (t % 2 == 0) ? model_z2() : model_hex();
        const Int box = (t % 3 == 0) ? static_cast<Int>(o.nmax / 2 + 2)
                                     : static_cast<Int>(o.nmax + 10);
        const auto ps = random_set(rng, m, 2, o.nmax + 10, box);
        const std::uint64_t n = ps.size();

        const auto hist = shift_histogram(ps);
        bool symmetric = true;
        u128 mass = 0;
        for (const auto& [v, c] : hist.counts) {
            if (hist.count(-v) != c) symmetric = false;
            mass += c;
        }
        check(r, symmetric, "difference counts not symmetric under negation");
        check(r, mass == u128(n) * (n - 1), "difference counts do not sum to n(n-1)");

        check(r, line_histogram(ps).pair_identity_holds(), "line pair identity failed");

        const auto energy = additive_energy(ps);
        check(r, energy.with_diagonal == hist.energy_with_diagonal(),
              "energy with diagonal disagrees with the histogram");
        check(r, energy.offdiagonal == hist.energy_offdiagonal(),
              "off-diagonal energy disagrees with the histogram");
    }
    r.statistic = static_cast<double>(r.checks);
    set_detail(r, "5 bookkeeping identities per set, " + std::to_string(o.trials) + " sets");
}

void suite_L32(SuiteResult& r, const SuiteOptions& o, Sweep& rng) {
    static constexpr double kThetas[] = {0.0, 0.15, 0.37, 0.5, 0.72, 0.9};
    double max_tight = 0.0;
    for (std::uint64_t t = 0; t < o.trials; ++t) {
        const LatticePtr& m = (t % 2 == 0) ? model_z2() : model_hex();
        const auto ps = random_set(rng, m, 2, o.nmax + 10, static_cast<Int>(o.nmax + 10));
        const auto spec = distance_spectrum(ps);
        const double theta = kThetas[t % 6];

        const auto top = top_cap_split(spec, theta);
        check(r, top.bound_holds, "top mass exceeded its moment bound");
        check(r, top.top_mass + top.bottom_mass == spec.total_mass(),
              "split masses do not add up to n(n-1)");
        check(r, top.t_star == quantile_radius(spec, theta), "split radius != quantile radius");
        if (top.cap_count > 0) {
            const double den = u128_d(q_ord(spec).q_ord) * static_cast<double>(top.cap_count);
            if (den > 0) {
                max_tight = std::max(max_tight, u128_d(top.top_mass) * u128_d(top.top_mass) / den);
            }
        }
    }
    r.statistic = max_tight;
    set_detail(r, "max top_mass^2 / (moment * cap) = " + num(max_tight));
}

void suite_P33(SuiteResult& r, const SuiteOptions& o, Sweep& rng) {
    std::uint64_t firing = 0;
    for (std::uint64_t t = 0; t <= o.trials; ++t) {
        LatticePointSet ps = [&] {
            if (t == o.trials) {
                // Engineered tail instance: a tight cluster plus one far point,
                // so at least one trial always meets the mass precondition.
                std::vector<Vec2I> pts;
                for (Int x = 0; x < 4; ++x)
                    for (Int y = 0; y < 4; ++y) pts.push_back({x, y});
                pts.push_back({9000, 9000});
                return LatticePointSet::make(model_z2(), {}, std::move(pts));
            }
            const LatticePtr& m = (t % 2 == 0) ? model_z2() : model_hex();
            return random_set(rng, m, 4, o.nmax + 10, static_cast<Int>(o.nmax / 2 + 4));
        }();
        const std::uint64_t n = ps.size();
        const auto spec = distance_spectrum(ps);
        const double theta = (t == o.trials) ? 0.3 : 0.08 + 0.5 * rng.unit();
        const double eta = (t == o.trials) ? 0.9
                           : (t % 2 == 0)  ? 0.75 + 0.24 * rng.unit()
                                           : 0.25 + 0.5 * rng.unit();
        const Int t_star = quantile_radius(spec, theta);

        const auto loc = localize(ps, t_star, eta);
        if (!loc.ok) continue;   // mass precondition did not hold; nothing asserted
        ++firing;
        check(r, static_cast<double>(loc.count) + 1e-6 >= (1.0 - eta) * static_cast<double>(n),
              "localized ball below the guaranteed fraction");

        // Recount the ball around the returned center from raw keys.
        check(r, ps.points()[loc.z_index] == loc.z, "center index does not match the center");
        std::uint64_t ball = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == loc.z_index || ps.key_between(loc.z_index, j) <= t_star) ++ball;
        }
        check(r, ball == loc.count, "ball recount disagrees with the returned count");
    }
    check(r, firing >= 1, "no trial ever met the mass precondition");
    r.statistic = static_cast<double>(firing) / static_cast<double>(o.trials + 1);
    set_detail(r, "precondition fired on " + std::to_string(firing) + " of " +
                      std::to_string(o.trials + 1) + " trials");
}

void suite_P66(SuiteResult& r, const SuiteOptions& o, Sweep& rng) {
    double max_ratio = 0.0;
    for (std::uint64_t t = 0; t < o.trials; ++t) {
        const Int l1 = rng.range(2, 9);
        const Int l2 = rng.range(2, 9);
        const Vec2I a0{rng.range(-20, 20), rng.range(-20, 20)};
        const std::uint64_t keep = 200 + rng.below(750);   // density in [0.2, 0.95)
        std::vector<Vec2I> pts;
        for (Int i = 0; i < l1; ++i) {
            for (Int j = 0; j < l2; ++j) {
                if (rng.below(1000) < keep) pts.push_back({a0.x + i, a0.y + j});
            }
        }
        if (pts.empty()) pts.push_back(a0);

        const auto rep = energy_residue_check(pts, 0.10);
        check(r, rep.inequality_holds, "energy exceeded 4 N^2 max residue class");
        if (rep.gate) {
            check(r, rep.concentration_holds, "gated set missed the residue concentration");
        }
        std::uint64_t sum = 0;
        for (std::uint64_t s : rep.residue_sizes) sum += s;
        check(r, sum == rep.n, "residue class sizes do not partition the set");
        max_ratio = std::max(max_ratio, u128_d(rep.energy) / u128_d(rep.rhs));
    }
    r.statistic = max_ratio;
    set_detail(r, "max energy/bound ratio = " + num(max_ratio));
}

void suite_L63(SuiteResult& r, const SuiteOptions& o, Sweep& rng) {
    double max_doubling = 0.0;
    for (std::uint64_t t = 0; t < o.trials; ++t) {
        const LatticePtr& m = (t % 2 == 0) ? model_z2() : model_hex();
        const Int box = (t % 3 == 0) ? static_cast<Int>(o.nmax / 2 + 2)
                                     : static_cast<Int>(o.nmax + 10);
        const auto ps = random_set(rng, m, 2, o.nmax + 10, box);
        const std::uint64_t n = ps.size();

        const auto hist = shift_histogram(ps);
        const std::uint64_t dsize = hist.counts.size() + 1;   // differences plus zero
        // v is popular when r(v) >= n^2 / (2|D|); zero always qualifies with r = n.
        std::uint64_t popular = 1;
        for (const auto& [v, c] : hist.counts) {
            if (u128(2) * dsize * c >= u128(n) * n) ++popular;
        }
        check(r, 2 * popular >= n, "fewer popular differences than half the set");
        max_doubling = std::max(max_doubling,
                                static_cast<double>(dsize) / static_cast<double>(n));
    }
    r.statistic = max_doubling;
    set_detail(r, "max measured doubling |D|/n = " + num(max_doubling));
}

void suite_L64(SuiteResult& r, const SuiteOptions& o, Sweep& rng) {
    for (std::uint64_t t = 0; t < o.trials; ++t) {
        const LatticePtr& m = (t % 2 == 0) ? model_z2() : model_hex();
        const auto ps = random_set(rng, m, 2, o.nmax + 10, static_cast<Int>(o.nmax / 2 + 4));
        const auto hist = shift_histogram(ps);
        const auto lines = line_histogram(ps);

        // Directions: the first distinct pair directions in canonical order,
        // two fixed axes, and one random coprime-ish direction.
        std::set<Vec2I> dirs = {{1, 0}, {0, 1}, {rng.range(1, 5), rng.range(-4, 4)}};
        const auto& pts = ps.points();
        for (std::size_t i = 0; i < pts.size() && dirs.size() < 23; ++i) {
            for (std::size_t j = i + 1; j < pts.size() && dirs.size() < 23; ++j) {
                dirs.insert(primitive_direction(pts[j] - pts[i]));
            }
        }
        for (const Vec2I d : dirs) {
            const Vec2I p = primitive_direction(d);
            check(r, directional_mass(hist, p) == line_direction_mass(lines, p),
                  "directional mass != per-line pair mass");
        }
    }
    r.statistic = static_cast<double>(r.checks);
    set_detail(r, "identity checked for up to 23 directions per set");
}

void suite_L211(SuiteResult& r, const SuiteOptions& o, Sweep& rng) {
    (void)rng;
    const std::uint64_t count = std::clamp<std::uint64_t>(o.trials / 16, 4, 14);
    double min_ratio = 0.0;
    bool first = true;
    for (const auto& m : {model_z2(), model_hex(), model_hexu()}) {
        const Int r_lo = static_cast<Int>(m->covering_radius()) + 2;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            const Int radius = r_lo + static_cast<Int>(idx);
            for (int variant = 0; variant < 2; ++variant) {
                const Vec2Q z = variant ? Vec2Q{Rat(1, 3), Rat(2, 7)} : Vec2Q{};
                const auto w = build_disk_window(m, {}, z, Rat(radius * radius));
                const auto rep = verify_diffset_covering(w);
                check(r, rep.guarantee_holds, "covering gap inside the guaranteed range, R=" +
                                                  std::to_string(radius) + " on " + m->label());
                check(r, rep.largest_covered_key <= rep.diameter_key_bound,
                      "coverage claimed beyond the diameter");
                if (rep.guaranteed_key_bound > 0) {
                    const double ratio = static_cast<double>(rep.largest_covered_key) /
                                         static_cast<double>(rep.guaranteed_key_bound);
                    if (first || ratio < min_ratio) {
                        min_ratio = ratio;
                        first = false;
                    }
                }
            }
        }
    }
    r.statistic = min_ratio;
    set_detail(r, "min covered/guaranteed key ratio = " + num(min_ratio));
}

void suite_P43(SuiteResult& r, const SuiteOptions& o, Sweep& rng) {
    double min_ratio = 0.0;
    bool first = true;
    for (std::uint64_t t = 0; t < o.trials; ++t) {
        const Int l2 = rng.range(2, 10);
        const Int l1 = l2 + rng.range(0, 18);
        const LambdaRectangle rect{{rng.range(-15, 15), rng.range(-15, 15)}, l1, l2};
        std::vector<Vec2I> pts;
        if (t % 5 == 0) {
            // Full column block: the extraction must find it at full density.
            const Int wid = rng.range(1, l2);
            const Int c0 = rng.range(0, l1 - wid);
            for (Int i = c0; i < c0 + wid; ++i)
                for (Int j = 0; j < l2; ++j) pts.push_back({rect.a0.x + i, rect.a0.y + j});
        } else {
            const std::uint64_t keep = 150 + rng.below(800);
            for (Int i = 0; i < l1; ++i)
                for (Int j = 0; j < l2; ++j)
                    if (rng.below(1000) < keep) pts.push_back({rect.a0.x + i, rect.a0.y + j});
            if (pts.empty()) pts.push_back(rect.a0);
        }
        const auto a = RectSubset::make(rect, pts);

        const auto ex = extract_square_window(a);
        check(r, ex.guarantee_holds, "extracted window below half the ambient density");
        std::uint64_t inside = 0;
        for (const Vec2I p : pts) {
            if (ex.window.contains(p)) ++inside;
        }
        check(r, inside == ex.points_in_window, "window point recount mismatch");
        check(r, ex.density == Rat(Int(ex.points_in_window)) / Rat(Int(ex.window.area())),
              "reported density is not count/area");
        const double ratio = rat_d(ex.density) / (rat_d(a.beta()) / 2.0);
        if (first || ratio < min_ratio) {
            min_ratio = ratio;
            first = false;
        }
    }
    r.statistic = min_ratio;
    set_detail(r, "min density/(beta/2) ratio = " + num(min_ratio));
}

void suite_rect_energy(SuiteResult& r, const SuiteOptions& o, Sweep& rng) {
    (void)o;
    for (Int l1 = 1; l1 <= 8; ++l1) {
        for (Int l2 = 1; l2 <= 8; ++l2) {
            std::vector<Vec2I> pts;
            for (Int i = 0; i < l1; ++i)
                for (Int j = 0; j < l2; ++j) pts.push_back({i, j});
            const auto ps = LatticePointSet::make(model_z2(), {}, pts);
            check(r, rect_energy_exact(l1, l2) == additive_energy(ps).with_diagonal,
                  "closed-form energy mismatch at " + std::to_string(l1) + "x" +
                      std::to_string(l2));

            for (int s = 0; s < 3; ++s) {
                const Int u1 = rng.range(-l1, l1);
                const Int u2 = rng.range(-l2, l2);
                std::uint64_t brute = 0;
                for (const Vec2I p : pts) {
                    const Vec2I q{p.x + u1, p.y + u2};
                    if (q.x >= 0 && q.x < l1 && q.y >= 0 && q.y < l2) ++brute;
                }
                check(r, rect_rep_count(l1, l2, u1, u2) == brute,
                      "closed-form shift count mismatch");
            }
        }
    }
    r.statistic = static_cast<double>(r.checks);
    set_detail(r, "all side lengths up to 8, three shifts each");
}

void suite_heavy_shifts(SuiteResult& r, const SuiteOptions& o, Sweep& rng) {
    for (std::uint64_t t = 0; t < o.trials; ++t) {
        const Int l1 = rng.range(2, 12);
        const Int l2 = rng.range(2, 12);
        const LambdaRectangle rect{{rng.range(-10, 10), rng.range(-10, 10)}, l1, l2};
        const std::uint64_t keep = 200 + rng.below(700);
        std::vector<Vec2I> pts;
        for (Int i = 0; i < l1; ++i)
            for (Int j = 0; j < l2; ++j)
                if (rng.below(1000) < keep) pts.push_back({rect.a0.x + i, rect.a0.y + j});
        if (pts.empty()) pts.push_back(rect.a0);
        const auto a = RectSubset::make(rect, pts);

        const auto hs = find_heavy_shifts(a);
        check(r, hs.bounds_hold, "axis shift overlap below its averaging bound");

        std::unordered_set<Vec2I, Vec2IHash> cells(pts.begin(), pts.end());
        std::uint64_t o1 = 0;
        std::uint64_t o2 = 0;
        for (const Vec2I p : pts) {
            if (cells.count({p.x + hs.s, p.y})) ++o1;
            if (cells.count({p.x, p.y + hs.t})) ++o2;
        }
        check(r, o1 == hs.overlap1, "first-axis overlap recount mismatch");
        check(r, o2 == hs.overlap2, "second-axis overlap recount mismatch");
        check(r, hs.eps1 == 1 && hs.eps2 == 1, "shift signs are not normalised");
    }
    r.statistic = static_cast<double>(r.checks);
    set_detail(r, "overlaps recounted from raw cells on every trial");
}

void suite_gap_hull(SuiteResult& r, const SuiteOptions& o, Sweep& rng) {
    for (std::uint64_t t = 0; t < o.trials; ++t) {
        const LambdaRectangle p{{rng.range(-10, 10), rng.range(-10, 10)}, rng.range(1, 10),
                                rng.range(1, 10)};
        std::set<Vec2I> tset;
        const std::uint64_t nt = 1 + rng.below(6);
        while (tset.size() < nt) tset.insert({rng.range(-8, 8), rng.range(-8, 8)});
        const std::vector<Vec2I> tvec(tset.begin(), tset.end());

        const auto g = gap_hull(p, tvec);
        check(r, g.containment_ok, "a translate escaped the hull");
        check(r, g.size_identity, "hull size identity failed");
        check(r, g.delta_alpha >= 0 && g.delta_gamma >= 0, "negative hull slack");
    }
    r.statistic = static_cast<double>(r.checks);
    set_detail(r, "hulls over up to 6 translates per trial");
}

void suite_lens(SuiteResult& r, const SuiteOptions& o, Sweep& rng) {
    // Empirical constants: the residual never has a closed form, so the suite
    // caps the fitted value generously and insists it stays put across scales.
    constexpr double kCap = 4.0;
    const std::uint64_t per_batch = std::clamp<std::uint64_t>(o.trials / 8, 6, 25);
    double max_c = 0.0;
    for (const auto& m : {model_z2(), model_hex()}) {
        double means[2] = {0.0, 0.0};
        for (int batch = 0; batch < 2; ++batch) {
            double sum = 0.0;
            for (std::uint64_t i = 0; i < per_batch; ++i) {
                const Int lo = batch == 0 ? 9 : 144;
                const Int hi = batch == 0 ? 64 : 400;
                const Rat rho_sq(rng.range(lo, hi));
                const Int ulim = static_cast<Int>(std::sqrt(rat_d(rho_sq))) * 2 + 1;
                Vec2I u{rng.range(0, ulim), rng.range(-ulim, ulim)};
                if (u == Vec2I{0, 0}) u = {1, 0};
                const auto rep = lens_count(m, {}, {}, rho_sq, u);
                check(r, rep.fitted_c <= kCap, "lens residual constant escaped its cap on " +
                                                   m->label());
                sum += rep.fitted_c;
                max_c = std::max(max_c, rep.fitted_c);
            }
            means[batch] = sum / static_cast<double>(per_batch);
        }
        // Stability across a scale jump; the floor keeps noise-level means
        // from turning the ratio test into a coin flip.
        const double floor_c = 0.05;
        check(r, means[1] <= 2.0 * std::max(means[0], floor_c) &&
                     means[0] <= 2.0 * std::max(means[1], floor_c),
              "lens residual constant drifted more than 2x across scales on " + m->label());

        for (int i = 0; i < 6; ++i) {
            const Rat rho_sq(rng.range(25, 900));
            const auto rep = convex_count_disk(m, {}, {}, rho_sq);
            check(r, rep.fitted_c <= kCap, "disk count residual constant escaped its cap on " +
                                               m->label());
            max_c = std::max(max_c, rep.fitted_c);
        }
        for (int i = 0; i < 6; ++i) {
            const Rat x0(rng.range(-9, 9), 2);
            const Rat y0(rng.range(-9, 9), 2);
            const Rat wdt(rng.range(3, 30), 2);
            const Rat hgt(rng.range(3, 30), 2);
            const std::vector<Vec2Q> box = {
                {x0, y0}, {x0 + wdt, y0}, {x0 + wdt, y0 + hgt}, {x0, y0 + hgt}};
            const auto rep = convex_count_polygon(m, {}, box);
            check(r, rep.fitted_c <= kCap, "polygon count residual constant escaped its cap on " +
                                               m->label());
            max_c = std::max(max_c, rep.fitted_c);
        }
    }
    r.statistic = max_c;
    set_detail(r, "max fitted residual constant = " + num(max_c) + " (cap " + num(kCap) + ")");
}

// F composed with a unimodular substitution of the coordinates.
QuadForm compose(const QuadForm& f, const Unimodular& u) {
    const Int a = f.eval(u.m11, u.m21);
    const Int c = f.eval(u.m12, u.m22);
    const Int b = 2 * f.a * u.m11 * u.m12 + f.b * (u.m11 * u.m22 + u.m12 * u.m21) +
                  2 * f.c * u.m21 * u.m22;
    return {a, b, c};
}

void suite_census_equiv(SuiteResult& r, const SuiteOptions& o, Sweep& rng) {
    const std::uint64_t t_max = std::clamp<std::uint64_t>(o.trials * 40, 2000, 10000);
    static constexpr QuadForm kForms[] = {
        {1, 0, 1}, {1, 1, 1}, {2, 1, 3}, {1, 0, 3}, {3, 2, 5}};
    static constexpr Unimodular kGens[] = {
        {1, 1, 0, 1}, {1, 0, 1, 1}, {0, -1, 1, 0}};
    for (const QuadForm& f : kForms) {
        const auto base = RepTable::build(f, t_max);
        for (int rep = 0; rep < 2; ++rep) {
            Unimodular u;
            const int factors = 3 + static_cast<int>(rng.below(3));
            for (int i = 0; i < factors; ++i) u = u.mul(kGens[rng.below(3)]);
            const QuadForm g = compose(f, u);

            const auto other = RepTable::build(g, t_max);
            check(r, other.count() == base.count(),
                  "represented-value count changed under " + f.str() + " -> " + g.str());
            std::uint64_t mismatches = 0;
            for (std::uint64_t n = 1; n <= t_max; ++n) {
                if (base.represented(n) != other.represented(n)) ++mismatches;
            }
            check(r, mismatches == 0, std::to_string(mismatches) +
                                          " bit mismatches between equivalent forms " + f.str() +
                                          " and " + g.str());
        }
    }
    r.statistic = static_cast<double>(t_max);
    set_detail(r, "tables compared bit-for-bit up to T = " + std::to_string(t_max));
}

void suite_census_monotone(SuiteResult& r, const SuiteOptions& o, Sweep& rng) {
    const std::uint64_t t_max = std::clamp<std::uint64_t>(o.trials * 50, 5000, 20000);
    double first_fit = 0.0;
    for (const QuadForm& f : {QuadForm{1, 0, 1}, QuadForm{1, 1, 1}}) {
        const auto tab = RepTable::build(f, t_max);
        check(r, tab.count_upto(t_max) == tab.count(), "full prefix count != total");
        bool steps_ok = true;
        for (int i = 0; i < 400; ++i) {
            const std::uint64_t n = 2 + rng.below(t_max - 1);
            const std::uint64_t step = tab.count_upto(n) - tab.count_upto(n - 1);
            if (step != (tab.represented(n) ? 1u : 0u)) steps_ok = false;
        }
        check(r, steps_ok, "prefix counts disagree with membership bits for " + f.str());

        const std::vector<std::uint64_t> grid = {t_max / 8, t_max / 4, t_max / 2, t_max};
        const auto est = bernays_estimate(f, grid);
        check(r, est.extrapolated, "four grid points did not produce a fit");
        check(r, est.c_fit > 0.0 && std::isfinite(est.c_fit), "fitted constant not positive");
        bool round_trip = true;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double back = est.estimates[i] * static_cast<double>(grid[i]) /
                                std::sqrt(std::log(static_cast<double>(grid[i])));
            if (std::abs(back - static_cast<double>(est.counts[i])) >
                1e-6 * static_cast<double>(est.counts[i]) + 1e-6) {
                round_trip = false;
            }
        }
        check(r, round_trip, "estimate does not invert back to the exact count");
        if (first_fit == 0.0) first_fit = est.c_fit;
    }
    r.statistic = first_fit;
    set_detail(r, "fitted density constant = " + num(first_fit) + " at T = " +
                      std::to_string(t_max));
}

void suite_P51(SuiteResult& r, const SuiteOptions& o, Sweep& rng) {
    (void)rng;
    std::vector<Int> radii = {5, 8, 12};
    if (o.trials >= 400) radii.push_back(16);
    double max_fill = 0.0;
    for (const auto& m : {model_z2(), model_hex(), model_hexu()}) {
        for (const Int radius : radii) {
            for (int variant = 0; variant < 2; ++variant) {
                const Vec2Q z = variant ? m->deep_hole() : Vec2Q{};
                const auto w = build_disk_window(m, {}, z, Rat(radius * radius));
                const auto cert = certify_inner_regular(w, Rat(1, 4));
                check(r, cert.valid, "inner-regularity certificate invalid, R=" +
                                         std::to_string(radius) + " on " + m->label());

                const auto pal = palette_bounds_check(w, cert);
                check(r, pal.sandwich_holds, "distinct count left its sandwich, R=" +
                                                 std::to_string(radius) + " on " + m->label());
                check(r, pal.distinct == window_spectrum(w).k(),
                      "palette distinct count != spectrum distinct count");
                if (pal.r_upper > 0) {
                    max_fill = std::max(max_fill, static_cast<double>(pal.distinct) /
                                                      static_cast<double>(pal.r_upper));
                }
            }
        }
    }
    r.statistic = max_fill;
    set_detail(r, "max distinct/upper-bound fill = " + num(max_fill));
}

void suite_inversion(SuiteResult& r, const SuiteOptions& o, Sweep& rng) {
    (void)rng;
    const std::uint64_t count = std::clamp<std::uint64_t>(o.trials, 50, 400);
    double max_rel = 0.0;
    for (const double c_est : {0.3, 0.7947, 1.5}) {
        for (std::uint64_t i = 0; i < count; ++i) {
            const double expo = 8.0 * static_cast<double>(i) / static_cast<double>(count - 1);
            const double t_true = 100.0 * std::pow(10.0, expo);
            const double k = c_est * t_true / std::sqrt(std::log(t_true));
            const auto inv = invert_k_to_T(k, c_est);
            const double rel = std::abs(inv.t - t_true) / t_true;
            check(r, rel <= 1e-6, "round trip off by " + num(rel) + " at T = " + num(t_true));
            check(r, inv.residual <= 1e-8, "fixed point did not converge at T = " + num(t_true));
            max_rel = std::max(max_rel, rel);
        }
    }
    r.statistic = max_rel;
    set_detail(r, "max relative round-trip error = " + num(max_rel));
}

void suite_extremal(SuiteResult& r, const SuiteOptions& o, Sweep& rng) {
    (void)rng;
    std::vector<std::uint64_t> ks = {40, 150};
    if (o.trials >= 150) ks.push_back(600);
    if (o.trials >= 300) ks.push_back(1200);
    double band_ratio = 0.0;
    for (const auto& m : {model_z2(), model_hex()}) {
        for (const std::uint64_t k : ks) {
            const auto wit = construct_for_k(m, k);
            check(r, wit.k_actual <= k, "witness exceeded its distinct-count target");
            check(r, wit.maximal && wit.next_k > k,
                  "one more radius step did not overshoot the target");
            check(r, 2 * wit.k_actual <= wit.n * (wit.n - 1),
                  "more distinct distances than point pairs");
            if (k >= 1000) {
                check(r, wit.ratio_n >= 0.2 && wit.ratio_n <= 3.0,
                      "witness density ratio left its band: " + num(wit.ratio_n));
                band_ratio = wit.ratio_n;
            }
        }

        // Distinct keys only accumulate as the window grows.
        std::set<Int> previous;
        for (const Int r_sq : {20, 45, 100}) {
            const auto w = build_disk_window(m, {}, {}, Rat(r_sq));
            const auto spec = window_spectrum(w);
            std::set<Int> keys;
            for (const auto& e : spec.entries) keys.insert(e.key);
            bool nested = true;
            for (const Int key : previous) {
                if (!keys.count(key)) nested = false;
            }
            check(r, nested, "a distinct key vanished when the window grew");
            previous = std::move(keys);
        }
    }
    r.statistic = band_ratio;
    set_detail(r, band_ratio > 0.0
                      ? "density ratio at the largest target = " + num(band_ratio)
                      : "targets below the band threshold; growth checks only");
}

// Exact re-verification of a two-shift certificate from the raw points.
void recheck_two_shift(SuiteResult& r, const std::vector<Vec2I>& pts,
                       const TwoShiftCertificate& cert) {
    const i128 det = cross_i(cert.v1, cert.v2);
    check(r, det != 0, "certificate basis is parallel");
    if (det == 0) return;

    // Sublattice coordinates via the adjugate; members divide exactly.
    std::vector<Vec2I> window_pts;
    std::uint64_t excluded = 0;
    for (const Vec2I p : pts) {
        const Vec2I w = p - cert.anchor;
        const i128 qx_num = i128(cert.v2.y) * w.x - i128(cert.v2.x) * w.y;
        const i128 qy_num = i128(cert.v1.x) * w.y - i128(cert.v1.y) * w.x;
        if (qx_num % det != 0 || qy_num % det != 0) {
            ++excluded;
            continue;
        }
        const Vec2I q{static_cast<Int>(qx_num / det), static_cast<Int>(qy_num / det)};
        if (!cert.bounding.contains(q)) {
            ++excluded;
            continue;
        }
        if (cert.window.contains(q)) window_pts.push_back(q);
    }
    check(r, excluded == cert.excluded, "excluded-point recount mismatch");
    check(r, window_pts.size() == cert.n_window, "window population recount mismatch");
    check(r, cert.density == Rat(Int(cert.n_window)) / Rat(Int(cert.window.area())),
          "certificate density is not count/area");

    // The claimed shifts, pulled back to sublattice coordinates.
    const auto pull = [&](Vec2I shift, Vec2I& out) {
        const i128 qx_num = i128(cert.v2.y) * shift.x - i128(cert.v2.x) * shift.y;
        const i128 qy_num = i128(cert.v1.x) * shift.y - i128(cert.v1.y) * shift.x;
        if (qx_num % det != 0 || qy_num % det != 0) return false;
        out = {static_cast<Int>(qx_num / det), static_cast<Int>(qy_num / det)};
        return true;
    };
    Vec2I s1;
    Vec2I s2;
    const bool shifts_integral = pull(cert.shift1, s1) && pull(cert.shift2, s2);
    check(r, shifts_integral, "claimed shifts are not sublattice vectors");
    if (shifts_integral) {
        std::unordered_set<Vec2I, Vec2IHash> cells(window_pts.begin(), window_pts.end());
        std::uint64_t o1 = 0;
        std::uint64_t o2 = 0;
        for (const Vec2I q : window_pts) {
            if (cells.count(q + s1)) ++o1;
            if (cells.count(q + s2)) ++o2;
        }
        check(r, o1 == cert.overlap1 && o2 == cert.overlap2, "shift overlap recount mismatch");
    }

    // Parity classes, energy, and the residue inequality, all from scratch.
    std::array<std::uint64_t, 4> sizes{};
    for (const Vec2I q : window_pts) {
        ++sizes[static_cast<std::size_t>(((q.x % 2) + 2) % 2 + 2 * (((q.y % 2) + 2) % 2))];
    }
    check(r, sizes == cert.residue_sizes, "residue class recount mismatch");
    check(r, cert.max_residue == *std::max_element(sizes.begin(), sizes.end()),
          "max residue class mismatch");
    if (!window_pts.empty()) {
        const auto ps = LatticePointSet::make(model_z2(), {}, window_pts);
        check(r, additive_energy(ps).with_diagonal == cert.energy_window,
              "window energy recount mismatch");
    }
    const u128 rhs = u128(4) * cert.n_window * cert.n_window * cert.max_residue;
    check(r, rhs == cert.residue_rhs, "residue bound recount mismatch");
    check(r, cert.energy_residue_holds && cert.energy_window <= rhs,
          "certificate violates the residue-energy inequality");
}

void suite_certs(SuiteResult& r, const SuiteOptions& o, Sweep& rng) {
    const std::uint64_t fam = std::clamp<std::uint64_t>(o.trials / 16, 3, 12);

    // Collinear sets must land in the line branch with a full-line witness.
    for (std::uint64_t t = 0; t < fam; ++t) {
        const Vec2I dir = primitive_direction({1 + rng.range(0, 4), rng.range(-4, 4)});
        const Vec2I base{rng.range(-50, 50), rng.range(-50, 50)};
        const Int count = 8 + rng.range(0, 22);
        std::vector<Vec2I> pts;
        for (Int i = 0; i < count; ++i) pts.push_back(base + Vec2I{i * dir.x, i * dir.y});
        const auto ps = LatticePointSet::make(model_z2(), {}, pts);

        const auto rep = classify(ps);
        check(r, rep.outcome == Outcome::LineHeavy, "collinear set not line-heavy");
        if (rep.line) {
            std::uint64_t on_line = 0;
            for (const Vec2I p : ps.points()) {
                if (p.x * rep.line->line.dir.y - p.y * rep.line->line.dir.x ==
                    rep.line->line.anchor) {
                    ++on_line;
                }
            }
            check(r, on_line == rep.line->s_line, "line population recount mismatch");
            check(r, rep.line->s_line == rep.n, "collinear set with an incomplete line witness");
        }
    }

    // Square grids fire the two-shift branch; the certificate must survive a
    // from-scratch recount of every claimed quantity.
    for (std::uint64_t t = 0; t < fam; ++t) {
        static constexpr Int kSides[] = {12, 13, 16};
        const Int side = kSides[t % 3];
        const Vec2I off{rng.range(-30, 30), rng.range(-30, 30)};
        std::vector<Vec2I> pts;
        for (Int i = 0; i < side; ++i)
            for (Int j = 0; j < side; ++j) pts.push_back({off.x + i, off.y + j});
        const auto ps = LatticePointSet::make(model_z2(), {}, pts);

        const auto rep = classify(ps);
        check(r, rep.outcome == Outcome::TwoShift, "grid did not reach the two-shift branch");
        if (rep.two_shift) {
            const auto hist = shift_histogram(ps);
            check(r, hist.count(rep.two_shift->v1) == rep.two_shift->r1 &&
                         hist.count(rep.two_shift->v2) == rep.two_shift->r2,
                  "claimed shift popularity mismatch");
            recheck_two_shift(r, ps.points(), *rep.two_shift);
        }
    }

    // Pseudorandom clouds with a handful of far outliers localize; the seeds
    // are fixed because each one's expected outcome was established up front.
    for (const std::uint64_t seed : {42ull, 7ull, 99ull}) {
        Sweep cloud_rng(seed);
        std::set<Vec2I> core;
        while (core.size() < 144) {
            const Int x = static_cast<Int>(cloud_rng.below(200));
            const Int y = static_cast<Int>(cloud_rng.below(200));
            core.insert({x, y});
        }
        std::vector<Vec2I> pts(core.begin(), core.end());
        for (Int j = 0; j < 6; ++j) {
            pts.push_back({1000000 + 37 * j + j * j, 1000003 + 101 * j + 3 * j * j});
        }
        const auto ps = LatticePointSet::make(model_z2(), {}, pts);

        const auto rep = classify(ps);
        check(r, rep.outcome == Outcome::Localized, "outlier cloud did not localize");
        if (rep.localization) {
            const auto& cert = *rep.localization;
            check(r, ps.points()[cert.z_index] == cert.z, "center index mismatch");
            std::uint64_t ball = 0;
            for (const Vec2I p : ps.points()) {
                if (ps.model().key_of(p - cert.z) <= cert.t_star_key) ++ball;
            }
            check(r, ball == cert.ball_count, "ball recount mismatch");
            check(r, static_cast<double>(cert.ball_count) + 1e-6 >= cert.required,
                  "localized ball below its required fraction");
        }
    }
    r.statistic = static_cast<double>(r.checks);
    set_detail(r, "every emitted certificate recounted from raw points");
}

// ---------------------------------------------------------------------------
// Registry and runners.

using SuiteFn = void (*)(SuiteResult&, const SuiteOptions&, Sweep&);

struct SuiteDef {
    const char* tag;
    const char* title;
    SuiteKind kind;
    SuiteFn fn;
};

constexpr SuiteDef kSuites[] = {
    {"lattice", "lattice normalization, reduction, and covering-radius invariants",
     SuiteKind::Theorem, suite_lattice},
    {"qord-cs", "order-two spectrum moment against its distinct-count floor",
     SuiteKind::Theorem, suite_qord},
    {"L4.1", "isometry-count identity for the order-two moment", SuiteKind::Theorem, suite_L41},
    {"hist", "difference and line histogram bookkeeping identities", SuiteKind::Theorem,
     suite_hist},
    {"L3.2", "quantile split mass bound", SuiteKind::Theorem, suite_L32},
    {"P3.3", "quantile-ball localization guarantee", SuiteKind::Theorem, suite_P33},
    {"P6.6", "residue-class energy inequality", SuiteKind::Theorem, suite_P66},
    {"L6.3", "popular differences under measured doubling", SuiteKind::Theorem, suite_L63},
    {"L6.4", "directional pair mass equals per-line pair mass", SuiteKind::Theorem, suite_L64},
    {"L2.11", "difference-set covering range of disk windows", SuiteKind::Theorem, suite_L211},
    {"P4.3", "square window extraction density floor", SuiteKind::Theorem, suite_P43},
    {"rect-energy", "rectangle energy and representation closed forms", SuiteKind::Theorem,
     suite_rect_energy},
    {"heavy-shifts", "axis shift overlap lower bounds", SuiteKind::Theorem, suite_heavy_shifts},
    {"gap-hull", "translate-hull size identity and containment", SuiteKind::Theorem,
     suite_gap_hull},
    {"lens-fit", "lens and convex count residual constants", SuiteKind::Fitted, suite_lens},
    {"census-equiv", "represented-value table invariance under basis change", SuiteKind::Theorem,
     suite_census_equiv},
    {"census-monotone", "census monotonicity and estimator round-trip", SuiteKind::Theorem,
     suite_census_monotone},
    {"P5.1", "distinct-distance palette sandwich", SuiteKind::Theorem, suite_P51},
    {"inversion", "census inversion round-trip accuracy", SuiteKind::Theorem, suite_inversion},
    {"extremal", "witness maximality and nested-window monotonicity", SuiteKind::Theorem,
     suite_extremal},
    {"certs", "classifier certificates re-verified from raw point data", SuiteKind::Theorem,
     suite_certs},
};

const SuiteDef* find_suite(std::string_view tag) {
    for (const SuiteDef& s : kSuites) {
        if (tag == s.tag) return &s;
    }
    return nullptr;
}

std::string known_tags() {
    std::string out;
    for (const SuiteDef& s : kSuites) {
        if (!out.empty()) out += ", ";
        out += s.tag;
    }
    return out;
}

} // namespace

std::string suite_kind_str(SuiteKind k) {
    return k == SuiteKind::Theorem ? "theorem" : "fitted";
}

void SuiteOptions::validate() const {
    if (trials < 1 || trials > 5000000) {
        throw precondition_error("trials must lie in [1, 5e6]");
    }
    if (nmax < 2 || nmax > 100000) throw precondition_error("nmax must lie in [2, 1e5]");
}

const std::vector<std::string>& verify_suite_tags() {
    static const std::vector<std::string> tags = [] {
        std::vector<std::string> out;
        for (const SuiteDef& s : kSuites) out.emplace_back(s.tag);
        return out;
    }();
    return tags;
}

bool has_suite(std::string_view tag) { return find_suite(tag) != nullptr; }

std::string suite_title(std::string_view tag) {
    const SuiteDef* s = find_suite(tag);
    if (!s) {
        throw precondition_error("unknown verify suite '" + std::string(tag) +
                                 "'; valid tags: " + known_tags());
    }
    return s->title;
}

SuiteKind suite_kind(std::string_view tag) {
    const SuiteDef* s = find_suite(tag);
    if (!s) {
        throw precondition_error("unknown verify suite '" + std::string(tag) +
                                 "'; valid tags: " + known_tags());
    }
    return s->kind;
}

SuiteResult run_suite(std::string_view tag, const SuiteOptions& opts) {
    const SuiteDef* s = find_suite(tag);
    if (!s) {
        throw precondition_error("unknown verify suite '" + std::string(tag) +
                                 "'; valid tags: " + known_tags());
    }
    opts.validate();

    SuiteResult result;
    result.tag = s->tag;
    result.title = s->title;
    result.kind = s->kind;

    // Salting the seed per tag decouples the suites: running one alone draws
    // the same instances it would see inside a full run.
    Sweep rng(opts.seed * 0x9e3779b97f4a7c15ull ^ fnv1a(s->tag));
    const auto start = std::chrono::steady_clock::now();
    s->fn(result, opts, rng);
    const auto stop = std::chrono::steady_clock::now();
    result.seconds = std::chrono::duration<double>(stop - start).count();
    result.passed = result.failures == 0 && result.checks > 0;
    return result;
}

std::vector<SuiteResult> run_all_suites(const SuiteOptions& opts) {
    std::vector<SuiteResult> out;
    out.reserve(std::size(kSuites));
    for (const SuiteDef& s : kSuites) out.push_back(run_suite(s.tag, opts));
    return out;
}

} // namespace distlat
