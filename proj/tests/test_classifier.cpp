#include "distlat/classifier.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <unordered_set>

using namespace distlat;

namespace {

LatticePtr z2() { return std::make_shared<LatticeModel>(LatticeModel::builtin("Z2")); }

LatticePointSet make_ps(std::vector<Vec2I> pts) {
    return LatticePointSet::make(z2(), Vec2Q{}, std::move(pts));
}

std::vector<Vec2I> grid(Int l1, Int l2, Vec2I at = {0, 0}) {
    std::vector<Vec2I> pts;
    for (Int i = 0; i < l1; ++i) {
        for (Int j = 0; j < l2; ++j) pts.push_back({at.x + i, at.y + j});
    }
    return pts;
}

// Deterministic 64-bit LCG, identical to the oracle that froze the expected
// values below; high bits only.
struct Lcg {
    std::uint64_t s;
    std::uint64_t next() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return s >> 33;
    }
};

// 144 distinct pseudorandom points in [0,200)^2 plus six far-away points on
// a convex arc: low energy, no heavy line, localizable core.
std::vector<Vec2I> cloud_instance(std::size_t core = 144, bool with_outliers = true) {
    Lcg gen{42};
    std::set<std::pair<Int, Int>> seen;
    std::vector<Vec2I> pts;
    while (pts.size() < core) {
        const Int x = static_cast<Int>(gen.next() % 200);
        const Int y = static_cast<Int>(gen.next() % 200);
        if (seen.insert({x, y}).second) pts.push_back({x, y});
    }
    if (with_outliers) {
        for (Int j = 0; j < 6; ++j) {
            pts.push_back({1000000 + 37 * j + j * j, 1000003 + 101 * j + 3 * j * j});
        }
    }
    return pts;
}

i128 cross_i(Vec2I a, Vec2I b) { return i128(a.x) * b.y - i128(a.y) * b.x; }

// Re-derives every claim in a two-shift certificate from the raw points and
// plain arithmetic: shift counts, coset coordinates, window membership,
// residue sizes, window energy, overlaps, and the residue-energy inequality.
void reverify_two_shift(const LatticePointSet& pts, const TwoShiftCertificate& cert,
                        double alpha) {
    const i128 det = cross_i(cert.v1, cert.v2);
    REQUIRE(det != 0);

    const ShiftHistogram hist = shift_histogram(pts);
    CHECK(hist.count(cert.v1) == cert.r1);
    CHECK(hist.count(cert.v2) == cert.r2);

    auto coords = [&](Vec2I p) -> std::optional<Vec2I> {
        const Vec2I d = p - cert.anchor;
        const i128 q1 = i128(cert.v2.y) * d.x - i128(cert.v2.x) * d.y;
        const i128 q2 = i128(cert.v1.x) * d.y - i128(cert.v1.y) * d.x;
        if (q1 % det != 0 || q2 % det != 0) return std::nullopt;
        return Vec2I{static_cast<Int>(q1 / det), static_cast<Int>(q2 / det)};
    };

    std::vector<Vec2I> qin;
    std::uint64_t excluded = 0;
    for (const Vec2I p : pts.points()) {
        const auto q = coords(p);
        if (!q) {
            ++excluded;
            continue;
        }
        CHECK(cert.bounding.contains(*q));
        if (cert.window.contains(*q)) qin.push_back(*q);
    }
    CHECK(excluded == cert.excluded);
    CHECK(qin.size() == cert.n_window);
    CHECK(cert.density == Rat(BigInt(cert.n_window)) / Rat(cert.window.area()));

    const ResidueDecomposition dec = residue_decompose(qin);
    CHECK(dec.sizes == cert.residue_sizes);
    CHECK(dec.sizes[dec.argmax_bucket()] == cert.max_residue);

    const auto win_ps = LatticePointSet::make(z2(), Vec2Q{}, qin);
    CHECK(additive_energy(win_ps).with_diagonal == cert.energy_window);

    // Overlaps |A ∩ (A + shift_i)| recounted in certificate coordinates.
    std::unordered_set<std::uint64_t> occupied;
    auto cell = [&](Vec2I q) {
        return static_cast<std::uint64_t>(q.x - cert.window.a0.x) * 100000ull +
               static_cast<std::uint64_t>(q.y - cert.window.a0.y);
    };
    for (const Vec2I q : qin) occupied.insert(cell(q));
    auto overlap_of = [&](Vec2I shift) {
        const Vec2I d = shift - Vec2I{0, 0};
        const i128 q1 = i128(cert.v2.y) * d.x - i128(cert.v2.x) * d.y;
        const i128 q2 = i128(cert.v1.x) * d.y - i128(cert.v1.y) * d.x;
        REQUIRE(q1 % det == 0);
        REQUIRE(q2 % det == 0);
        const Vec2I qs{static_cast<Int>(q1 / det), static_cast<Int>(q2 / det)};
        std::uint64_t count = 0;
        for (const Vec2I q : qin) {
            const Vec2I t = q + qs;
            if (cert.window.contains(t) && occupied.count(cell(t))) ++count;
        }
        return count;
    };
    CHECK(overlap_of(cert.shift1) == cert.overlap1);
    CHECK(overlap_of(cert.shift2) == cert.overlap2);
    CHECK(static_cast<double>(cert.overlap1) + 1e-9 >= 0.1 * static_cast<double>(cert.n_window));
    CHECK(static_cast<double>(cert.overlap2) + 1e-9 >= 0.1 * static_cast<double>(cert.n_window));

    CHECK(cert.residue_rhs ==
          u128(4) * u128(cert.n_window) * u128(cert.n_window) * u128(cert.max_residue));
    CHECK(cert.energy_residue_holds);
    CHECK(cert.energy_window <= cert.residue_rhs);
    if (cert.window_energy_gate) {
        CHECK(static_cast<double>(cert.max_residue) + 1e-9 >=
              (alpha / 4.0) * static_cast<double>(cert.n_window));
        CHECK(cert.residue_concentration);
    }
}

} // namespace

TEST_CASE("config: validation and derived quantities") {
    ClassifierConfig cfg;
    cfg.validate();
    CHECK(cfg.sigma == 0.25);
    CHECK(cfg.c_line == 0.10);
    CHECK(cfg.c_shift == 0.10);
    CHECK(cfg.alpha_energy == 0.10);
    CHECK(cfg.eta_override == 0.0);

    CHECK(cfg.theta(6722) == doctest::Approx(0.19550234045014098).epsilon(1e-12));
    CHECK(cfg.eta(6722) == doctest::Approx(0.4421564660277411).epsilon(1e-12));
    CHECK(cfg.theta(1) < 1.0);
    CHECK(cfg.theta(2) < 1.0);   // raw value exceeds 1 below k = e; clamped

    ClassifierConfig override_eta;
    override_eta.eta_override = 0.25;
    CHECK(override_eta.eta(6722) == 0.25);

    auto bad = [](auto mutate) {
        ClassifierConfig c;
        mutate(c);
        CHECK_THROWS_AS(c.validate(), precondition_error);
    };
    bad([](ClassifierConfig& c) { c.sigma = 0.0; });
    bad([](ClassifierConfig& c) { c.sigma = 0.3; });
    bad([](ClassifierConfig& c) { c.c_line = 0.0; });
    bad([](ClassifierConfig& c) { c.c_line = 1.5; });
    bad([](ClassifierConfig& c) { c.c_shift = -0.1; });
    bad([](ClassifierConfig& c) { c.alpha_energy = 0.0; });
    bad([](ClassifierConfig& c) { c.eta_override = -0.1; });
    bad([](ClassifierConfig& c) { c.eta_override = 1.5; });
}

TEST_CASE("classify: collinear points are line-heavy") {
    std::vector<Vec2I> pts;
    for (Int i = 0; i < 20; ++i) pts.push_back({i, 2 * i});
    const auto ps = make_ps(pts);
    const ClassificationReport rep = classify(ps);

    CHECK(rep.outcome == Outcome::LineHeavy);
    CHECK(outcome_str(rep.outcome) == "LineHeavy");
    CHECK(rep.n == 20);
    CHECK(rep.k == 19);
    CHECK(rep.max_line == 20);
    REQUIRE(rep.line.has_value());
    CHECK(rep.line->s_line == 20);
    CHECK(rep.line->fraction == 1.0);
    CHECK(rep.line->line.dir == Vec2I{1, 2});
    CHECK(rep.line->line.anchor == 0);

    // Certificate re-verification: count the points on the claimed line.
    std::uint64_t on_line = 0;
    for (const Vec2I p : ps.points()) {
        if (p.x * rep.line->line.dir.y - p.y * rep.line->line.dir.x == rep.line->line.anchor)
            ++on_line;
    }
    CHECK(on_line == rep.line->s_line);
    CHECK(rep.diagnostics.empty());
}

TEST_CASE("classify: square grid produces a two-shift certificate") {
    const auto ps = make_ps(grid(16, 16));
    const ClassificationReport rep = classify(ps);

    CHECK(rep.outcome == Outcome::TwoShift);
    CHECK(rep.n == 256);
    CHECK(rep.max_line == 16);
    CHECK(rep.energy == u128(7485696));   // (2/3 16^3 + 16/3)^2 = 2736^2

    REQUIRE(rep.two_shift.has_value());
    const TwoShiftCertificate& cert = *rep.two_shift;
    CHECK(cert.v1 == Vec2I{0, 1});
    CHECK(cert.v2 == Vec2I{1, 0});
    CHECK(cert.r1 == 240);
    CHECK(cert.r2 == 240);
    CHECK(cert.excluded == 0);
    CHECK(cert.n_window == 256);
    CHECK(cert.window.L1 == 16);
    CHECK(cert.window.L2 == 16);
    CHECK(cert.density == Rat(1));
    CHECK(cert.shift1 == Vec2I{0, 1});
    CHECK(cert.shift2 == Vec2I{1, 0});
    CHECK(cert.overlap1 == 240);
    CHECK(cert.overlap2 == 240);
    CHECK(cert.residue_sizes == std::array<std::uint64_t, 4>{64, 64, 64, 64});
    CHECK(cert.max_residue == 64);
    CHECK(cert.energy_window == u128(7485696));
    CHECK(cert.residue_rhs == u128(16777216));   // 4 * 256^2 * 64
    CHECK(cert.energy_residue_holds);
    CHECK(cert.window_energy_gate);
    CHECK(cert.residue_concentration);
    CHECK(static_cast<double>(cert.max_residue) >= static_cast<double>(cert.n_window) / 4.0);

    reverify_two_shift(ps, cert, rep.config.alpha_energy);
}

TEST_CASE("classify: two distant grids localize to one window") {
    std::vector<Vec2I> pts = grid(12, 12);
    const auto far = grid(12, 12, {1000000, 3});
    pts.insert(pts.end(), far.begin(), far.end());
    const auto ps = make_ps(pts);
    const ClassificationReport rep = classify(ps);

    CHECK(rep.outcome == Outcome::TwoShift);
    CHECK(rep.n == 288);
    CHECK(rep.max_line == 24);            // shared rows across the two grids
    CHECK(rep.energy == u128(8018016));

    REQUIRE(rep.two_shift.has_value());
    const TwoShiftCertificate& cert = *rep.two_shift;
    CHECK(cert.v1 == Vec2I{1, 0});        // long side re-oriented first
    CHECK(cert.v2 == Vec2I{0, 1});
    CHECK(cert.r1 == 264);
    CHECK(cert.r2 == 264);
    CHECK(cert.excluded == 0);
    CHECK(cert.bounding.L1 == 1000012);
    CHECK(cert.bounding.L2 == 15);
    CHECK(cert.window.L1 == 15);
    CHECK(cert.window.L2 == 15);
    CHECK(cert.n_window == 144);          // exactly one grid falls in the window
    CHECK(cert.density == Rat(144, 225));
    CHECK(cert.overlap1 == 132);
    CHECK(cert.overlap2 == 132);
    CHECK(cert.residue_sizes == std::array<std::uint64_t, 4>{36, 36, 36, 36});
    CHECK(cert.energy_window == u128(1336336));   // 1156^2, one grid's energy
    CHECK(cert.window_energy_gate);
    CHECK(cert.residue_concentration);

    reverify_two_shift(ps, cert, rep.config.alpha_energy);
}

TEST_CASE("classify: random cloud with far outliers localizes") {
    const auto ps = make_ps(cloud_instance());
    const ClassificationReport rep = classify(ps);

    CHECK(rep.outcome == Outcome::Localized);
    CHECK(rep.n == 150);
    CHECK(rep.k == 6722);
    CHECK(rep.max_line == 4);
    CHECK(rep.energy == u128(49070));     // far below alpha n^3 = 337500
    CHECK(rep.theta == doctest::Approx(0.19550234045014098).epsilon(1e-12));
    CHECK(rep.eta == doctest::Approx(0.4421564660277411).epsilon(1e-12));

    REQUIRE(rep.localization.has_value());
    const LocalizationCertificate& cert = *rep.localization;
    CHECK(cert.t_star_key == 38754);
    CHECK(cert.z == Vec2I{20, 106});
    CHECK(cert.ball_count == 144);        // the whole core, none of the outliers
    CHECK(cert.required == doctest::Approx(83.67653009583884).epsilon(1e-9));
    CHECK(static_cast<double>(cert.ball_count) >= cert.required);

    // Certificate re-verification: recount the closed ball from raw points.
    std::uint64_t in_ball = 0;
    for (const Vec2I p : ps.points()) {
        const Vec2I d = p - cert.z;
        if (d.x * d.x + d.y * d.y <= cert.t_star_key) ++in_ball;
    }
    CHECK(in_ball == cert.ball_count);

    // Two diagnostics recorded: the line check and the energy gate.
    REQUIRE(rep.diagnostics.size() == 2);
    CHECK(rep.diagnostics[1].find("energy-gate") != std::string::npos);
}

TEST_CASE("localize: barbell at the exact mass boundary") {
    const std::vector<Vec2I> cluster = {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {2, 1}, {0, 2}};
    std::vector<Vec2I> pts = cluster;
    pts.push_back({5000, 5000});
    const auto ps = make_ps(pts);

    SUBCASE("precondition met with equality at eta = 1/4") {
        // Intra-cluster mass is 42 ordered pairs = (3/4) * 8 * 7 exactly.
        const LocalizeResult loc = localize(ps, 8, 0.25);
        REQUIRE(loc.ok);
        CHECK(loc.count == 7);
        CHECK(loc.z == Vec2I{0, 0});      // all cluster points tie; earliest wins
        CHECK(loc.z_index == 0);
        CHECK(loc.required == doctest::Approx(6.0));
    }
    SUBCASE("complete-graph case") {
        const auto core = make_ps(cluster);
        const LocalizeResult loc = localize(core, 8, 0.0);
        REQUIRE(loc.ok);
        CHECK(loc.count == 7);            // every ball holds the whole set
    }
    SUBCASE("precondition violated reports the deficit") {
        const LocalizeResult loc = localize(ps, 1, 0.25);
        CHECK_FALSE(loc.ok);
        CHECK(loc.deficit == doctest::Approx(26.0));   // 42 needed, 16 present
    }
    SUBCASE("guards") {
        CHECK_THROWS_AS(localize(ps, 8, -0.1), precondition_error);
        CHECK_THROWS_AS(localize(ps, 8, 1.5), precondition_error);
        CHECK_THROWS_AS(localize(make_ps({{0, 0}}), 8, 0.25), precondition_error);
    }
}

TEST_CASE("popular shifts: parallel, nonparallel, and empty cases") {
    SUBCASE("arithmetic progression is all-parallel") {
        std::vector<Vec2I> ap;
        for (Int i = 0; i < 12; ++i) ap.push_back({3 * i, 5 * i});
        const auto ps = make_ps(ap);
        const PopularShiftReport rep = popular_shift_analysis(ps, 0.25);
        CHECK_FALSE(rep.has_nonparallel);
        REQUIRE(rep.popular.size() == 9);
        CHECK(rep.popular.front().first == Vec2I{3, 5});
        CHECK(rep.popular.front().second == 11);
        CHECK(rep.popular.back().first == Vec2I{27, 45});
        CHECK(rep.popular.back().second == 3);
        CHECK(rep.common_dir == Vec2I{3, 5});
        CHECK(rep.directional_mass_total == u128(132));   // all of n(n-1)

        // The directional mass equals the line-multiplicity sum exactly.
        const LineHistogram lines = line_histogram(ps);
        CHECK(line_direction_mass(lines, Vec2I{3, 5}) == u128(132));
    }
    SUBCASE("grid yields the two axis shifts") {
        const auto ps = make_ps(grid(10, 10));
        const PopularShiftReport rep = popular_shift_analysis(ps, 0.25);
        REQUIRE(rep.has_nonparallel);
        CHECK(rep.v1 == Vec2I{0, 1});
        CHECK(rep.v2 == Vec2I{1, 0});
        CHECK(rep.r1 == 90);
        CHECK(rep.r2 == 90);
    }
    SUBCASE("sparse random set has no popular shifts") {
        const auto ps = make_ps(cloud_instance(20, false));
        const PopularShiftReport rep = popular_shift_analysis(ps, 0.25);
        CHECK(rep.popular.empty());
        CHECK_FALSE(rep.has_nonparallel);
        CHECK(rep.common_dir == Vec2I{0, 0});
    }
    SUBCASE("guards") {
        const auto ps = make_ps(grid(3, 3));
        CHECK_THROWS_AS(popular_shift_analysis(ps, 0.0), precondition_error);
        CHECK_THROWS_AS(popular_shift_analysis(ps, 1.0), precondition_error);
        CHECK_THROWS_AS(popular_shift_analysis(make_ps({{0, 0}}), 0.25), precondition_error);
    }
}

TEST_CASE("energy-residue check: frozen instances") {
    SUBCASE("2x2 grid by hand") {
        const std::vector<Vec2I> pts = grid(2, 2);
        const EnergyResidueReport rep = energy_residue_check(pts, 0.1);
        CHECK(rep.n == 4);
        CHECK(rep.energy == u128(36));
        CHECK(rep.residue_sizes == std::array<std::uint64_t, 4>{1, 1, 1, 1});
        CHECK(rep.max_residue == 1);
        CHECK(rep.rhs == u128(64));
        CHECK(rep.inequality_holds);
        CHECK(rep.gate);                   // 36 >= 0.1 * 64
        CHECK(rep.concentration_holds);
    }
    SUBCASE("single residue class is slack-free on the residue side") {
        const std::vector<Vec2I> pts = {{0, 0}, {2, 0}, {0, 2}, {2, 2}};
        const EnergyResidueReport rep = energy_residue_check(pts, 0.1);
        CHECK(rep.energy == u128(36));
        CHECK(rep.max_residue == 4);       // everything lands in one class
        CHECK(rep.rhs == u128(256));
        CHECK(rep.inequality_holds);
        CHECK(rep.concentration_holds);
    }
    SUBCASE("guards") {
        CHECK_THROWS_AS(energy_residue_check({}, 0.1), precondition_error);
        const std::vector<Vec2I> one = {{0, 0}};
        CHECK_THROWS_AS(energy_residue_check(one, 0.0), precondition_error);
        CHECK_THROWS_AS(energy_residue_check(one, 1.5), precondition_error);
    }
}

TEST_CASE("property sweep: residue inequality, direction identity, popular differences") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<Vec2I> pts;
        for (Int i = 0; i < 8; ++i) {
            for (Int j = 0; j < 8; ++j) {
                if (rng() & 1) pts.push_back({i, j});
            }
        }
        if (pts.size() < 2) pts = grid(2, 1);
        const EnergyResidueReport rep = energy_residue_check(pts, 0.1);
        REQUIRE(rep.inequality_holds);     // theorem: zero tolerance
        REQUIRE(rep.concentration_holds);  // theorem under the gate

        const auto ps = make_ps(pts);
        if (ps.size() < 2) continue;
        const ShiftHistogram hist = shift_histogram(ps);
        const LineHistogram lines = line_histogram(ps);

        // Direction identity on up to 20 occurring difference directions.
        int dirs = 0;
        std::set<std::pair<Int, Int>> used;
        for (const auto& [v, r] : hist.counts) {
            const Vec2I d = primitive_direction(v);
            if (!used.insert({d.x, d.y}).second) continue;
            REQUIRE(directional_mass(hist, d) == line_direction_mass(lines, d));
            if (++dirs == 20) break;
        }

        // Measured-doubling form of the popular-difference lower bound: with
        // D the full difference set (zero included) and K = |D|/n, at least
        // n/2 shifts satisfy r(v) >= n/(2K), i.e. 2 |D| r(v) >= n^2.
        const std::uint64_t n = ps.size();
        const u128 dsize = u128(hist.counts.size()) + 1;
        u128 popular = 1;                  // v = 0 with r = n always qualifies
        for (const auto& [v, r] : hist.counts) {
            if (u128(2) * dsize * u128(r) >= u128(n) * u128(n)) ++popular;
        }
        REQUIRE(u128(2) * popular >= u128(n));
    }
}

TEST_CASE("two-shift pipeline: enumerated failure reasons and guards") {
    SUBCASE("collinear high-energy set has no nonparallel shifts") {
        std::vector<Vec2I> ap;
        for (Int i = 0; i < 20; ++i) ap.push_back({i, 0});
        const TwoShiftOutcome out = two_shift_pipeline(make_ps(ap), {});
        CHECK_FALSE(out.ok);
        CHECK(out.fail_reason == "no-nonparallel-shifts");
        CHECK_FALSE(out.cert.has_value());
    }
    SUBCASE("dominant coset collapsing to one row fails on density") {
        // Vertical line on even y (popular shift (0,2)) plus a horizontal
        // line at y = 1 (popular shift (1,0)): the largest coset of
        // Z(0,2) + Z(1,0) is the vertical line alone, a single sublattice row.
        std::vector<Vec2I> pts;
        for (Int j = 0; j < 30; ++j) pts.push_back({0, 2 * j});
        for (Int k = 0; k < 10; ++k) pts.push_back({k, 1});
        const TwoShiftOutcome out = two_shift_pipeline(make_ps(pts), {});
        CHECK_FALSE(out.ok);
        CHECK(out.fail_reason == "window-density-below-threshold");
    }
    SUBCASE("energy gate is a precondition") {
        const auto ps = make_ps(cloud_instance());
        CHECK_THROWS_AS(two_shift_pipeline(ps, {}), precondition_error);
    }
    SUBCASE("classify falls through a failed pipeline to localization") {
        std::vector<Vec2I> pts;
        for (Int j = 0; j < 30; ++j) pts.push_back({0, 2 * j});
        for (Int k = 0; k < 10; ++k) pts.push_back({k, 1});
        ClassifierConfig cfg;
        cfg.c_line = 0.9;                  // max line is 31 of 40; keep it quiet
        const ClassificationReport rep = classify(make_ps(pts), cfg);
        CHECK(rep.outcome == Outcome::Localized);
        CHECK(rep.k == 298);
        REQUIRE(rep.localization.has_value());
        CHECK(rep.localization->t_star_key == 1898);
        CHECK(rep.localization->z == Vec2I{0, 16});
        CHECK(rep.localization->ball_count == 40);
        REQUIRE(rep.diagnostics.size() == 2);
        CHECK(rep.diagnostics[1] == "two-shift: window-density-below-threshold");
    }
}

TEST_CASE("classify: indeterminate under harsh constants") {
    const auto ps = make_ps(cloud_instance(20, false));
    ClassifierConfig cfg;
    cfg.c_line = 0.9;
    cfg.alpha_energy = 0.9;
    cfg.eta_override = 0.001;
    const ClassificationReport rep = classify(ps, cfg);
    CHECK(rep.outcome == Outcome::Indeterminate);
    CHECK(outcome_str(rep.outcome) == "Indeterminate");
    CHECK(rep.max_line == 2);
    CHECK(rep.energy == u128(780));
    CHECK_FALSE(rep.line.has_value());
    CHECK_FALSE(rep.two_shift.has_value());
    CHECK_FALSE(rep.localization.has_value());
    REQUIRE(rep.diagnostics.size() == 3);
    CHECK(rep.diagnostics[0].find("line-heavy") != std::string::npos);
    CHECK(rep.diagnostics[1].find("energy-gate") != std::string::npos);
    CHECK(rep.diagnostics[2].find("localization") != std::string::npos);
}

TEST_CASE("classify: preconditions") {
    CHECK_THROWS_AS(classify(make_ps({{0, 0}, {1, 0}})), precondition_error);
    ClassifierConfig bad;
    bad.sigma = 0.5;
    CHECK_THROWS_AS(classify(make_ps(grid(3, 3)), bad), precondition_error);
    CHECK_THROWS_AS(two_shift_pipeline(make_ps({{0, 0}, {1, 0}}), {}), precondition_error);
}
