#include "distlat/census.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

using namespace distlat;

namespace {

LatticePtr z2() { return std::make_shared<LatticeModel>(LatticeModel::builtin("Z2")); }
LatticePtr hexm() { return std::make_shared<LatticeModel>(LatticeModel::builtin("hex")); }

// Independent value census by brute force over a generous coefficient box.
std::set<std::uint64_t> brute_values(const QuadForm& f, std::uint64_t t, Int box) {
    std::set<std::uint64_t> vals;
    for (Int x = -box; x <= box; ++x) {
        for (Int y = -box; y <= box; ++y) {
            if (x == 0 && y == 0) continue;
            const i128 v = f.eval_i128(x, y);
            if (v >= 1 && v <= static_cast<i128>(t)) vals.insert(static_cast<std::uint64_t>(v));
        }
    }
    return vals;
}

// Substitute a unimodular change of variables into a form: G(u) = F(M u).
QuadForm substitute(const QuadForm& f, const Unimodular& m) {
    const Int a = f.eval(m.m11, m.m21);
    const Int c = f.eval(m.m12, m.m22);
    const Int b = 2 * f.a * m.m11 * m.m12 + f.b * (m.m11 * m.m22 + m.m12 * m.m21) +
                  2 * f.c * m.m21 * m.m22;
    return QuadForm{a, b, c};
}

std::string temp_path(const char* stem) {
    return (std::filesystem::temp_directory_path() / stem).string();
}

} // namespace

TEST_CASE("represented values: small frozen censuses") {
    const RepTable sq = represented_upto(QuadForm{1, 0, 1}, 25);
    CHECK(sq.t() == 25);
    CHECK(sq.count() == 13);
    const std::set<std::uint64_t> expect_sq = {1, 2, 4, 5, 8, 9, 10, 13, 16, 17, 18, 20, 25};
    for (std::uint64_t n = 1; n <= 25; ++n)
        CHECK(sq.represented(n) == (expect_sq.count(n) == 1));

    const RepTable hx = represented_upto(QuadForm{1, 1, 1}, 7);
    CHECK(hx.count() == 4);
    const std::set<std::uint64_t> expect_hx = {1, 3, 4, 7};
    for (std::uint64_t n = 1; n <= 7; ++n)
        CHECK(hx.represented(n) == (expect_hx.count(n) == 1));

    // The leading coefficient is always represented, by (x, y) = (1, 0).
    for (const QuadForm f : {QuadForm{3, 1, 5}, QuadForm{2, 1, 3}, QuadForm{7, 3, 9}})
        CHECK(represented_upto(f, static_cast<std::uint64_t>(f.a)).represented(
            static_cast<std::uint64_t>(f.a)));
}

TEST_CASE("represented values: brute-force cross-check on random forms") {
    std::mt19937_64 rng(411u);
    for (int trial = 0; trial < 30; ++trial) {
        const Int a = 1 + static_cast<Int>(rng() % 5);
        const Int b = static_cast<Int>(rng() % (2 * a + 1)) - a;   // |b| <= a
        const Int c = a + static_cast<Int>(rng() % 5);
        QuadForm f{a, b, c};
        if (4 * a * c - b * b <= 0) continue;
        // Strip any common factor so the form stays primitive.
        const Int g = std::gcd(std::gcd(f.a, std::abs(f.b)), f.c);
        f = QuadForm{f.a / g, f.b / g, f.c / g};
        const std::uint64_t t = 40 + rng() % 160;
        const RepTable table = represented_upto(f, t);
        const auto brute = brute_values(f, t, 40);
        CHECK(table.count() == brute.size());
        for (std::uint64_t n = 1; n <= t; ++n)
            CHECK(table.represented(n) == (brute.count(n) == 1));
    }
}

TEST_CASE("represented values: frozen large censuses") {
    const RepTable sq = represented_upto(QuadForm{1, 0, 1}, 10'000'000);
    CHECK(sq.count_upto(10'000) == 2749);
    CHECK(sq.count_upto(1'000'000) == 216341);
    CHECK(sq.count() == 1985459);

    const RepTable hx = represented_upto(QuadForm{1, 1, 1}, 10'000'000);
    CHECK(hx.count_upto(10'000) == 2299);
    CHECK(hx.count_upto(1'000'000) == 180874);
    CHECK(hx.count() == 1659711);

    // Counting function is nondecreasing.
    std::uint64_t prev = 0;
    for (std::uint64_t t = 1; t <= 2000; ++t) {
        const std::uint64_t cur = sq.count_upto(t);
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("represented values: invariance under unimodular substitution") {
    std::mt19937_64 rng(5150u);
    const std::uint64_t t = 10'000;
    for (const QuadForm base : {QuadForm{1, 0, 1}, QuadForm{1, 1, 1}, QuadForm{2, 1, 3}}) {
        const RepTable reference = represented_upto(base, t);
        for (int trial = 0; trial < 4; ++trial) {
            // Random word in the generators S = [[0,-1],[1,0]], T = [[1,1],[0,1]].
            Unimodular m;
            for (int step = 0; step < 8; ++step) {
                const Unimodular gen = (rng() & 1) ? Unimodular{0, -1, 1, 0} : Unimodular{1, 1, 0, 1};
                m = m.mul(gen);
            }
            const QuadForm g = substitute(base, m);
            g.validate();
            CHECK(g.disc() == base.disc());
            const RepTable other = represented_upto(g, t);
            CHECK(other.count() == reference.count());
            bool identical = true;
            for (std::uint64_t n = 1; n <= t; ++n)
                identical = identical && (other.represented(n) == reference.represented(n));
            CHECK(identical);
        }
    }
}

TEST_CASE("represented values: budget and precondition errors") {
    CHECK_THROWS_AS(represented_upto(QuadForm{1, 0, 1}, 0), precondition_error);
    // Default budget is 2^30 bytes = 2^33 bits.
    CHECK_THROWS_AS(represented_upto(QuadForm{1, 0, 1}, std::uint64_t(1) << 34), budget_error);
    CHECK_THROWS_WITH_AS(represented_upto(QuadForm{1, 0, 1}, 1'000'000, 1024),
                         doctest::Contains("bytes"), budget_error);
    const RepTable t = represented_upto(QuadForm{1, 0, 1}, 10);
    CHECK_THROWS_AS(t.represented(0), precondition_error);
    CHECK_THROWS_AS(t.represented(11), precondition_error);
    CHECK_THROWS_AS(t.count_upto(11), precondition_error);
    CHECK(t.count_upto(0) == 0);
}

TEST_CASE("census cache: round trip and corruption detection") {
    const std::string path = temp_path("distlat_census_cache_test.bin");
    const RepTable orig = represented_upto(QuadForm{1, 1, 1}, 12345);
    orig.save(path);
    const RepTable back = RepTable::load(path);
    CHECK(back.form() == orig.form());
    CHECK(back.t() == orig.t());
    CHECK(back.count() == orig.count());
    bool identical = true;
    for (std::uint64_t n = 1; n <= orig.t(); ++n)
        identical = identical && (back.represented(n) == orig.represented(n));
    CHECK(identical);

    // Truncated file.
    std::filesystem::resize_file(path, 40);
    CHECK_THROWS_AS(RepTable::load(path), io_error);
    // Wrong magic.
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << "definitely not a census cache";
    }
    CHECK_THROWS_AS(RepTable::load(path), io_error);
    CHECK_THROWS_AS(RepTable::load(path + ".does-not-exist"), io_error);
    std::filesystem::remove(path);
}

TEST_CASE("bernays estimate: frozen grid for both unit forms") {
    const std::vector<std::uint64_t> grid = {10'000, 100'000, 1'000'000, 10'000'000};

    const BernaysEstimate sq = bernays_estimate(QuadForm{1, 0, 1}, grid);
    CHECK(sq.counts == std::vector<std::uint64_t>{2749, 24028, 216341, 1985459});
    CHECK(sq.extrapolated);
    CHECK_FALSE(sq.low_confidence);
    CHECK(sq.estimates[0] == doctest::Approx(0.834281436).epsilon(1e-6));
    CHECK(sq.estimates[3] == doctest::Approx(0.797109138).epsilon(1e-6));
    CHECK(sq.c_fit == doctest::Approx(0.751294436).epsilon(1e-6));
    CHECK(sq.b_fit == doctest::Approx(0.978264125).epsilon(1e-4));
    CHECK(sq.rss < 1e-6);
    // Successive estimates drift by well under the convergence tolerance ...
    CHECK(std::abs(sq.estimates[3] - sq.estimates[2]) / sq.estimates[3] < 0.03);
    // ... and the fitted constant lands nearer the true limit than the raw
    // largest-T estimate does (sums-of-two-squares constant 0.76422...).
    CHECK(std::abs(sq.c_fit - 0.76422) < std::abs(sq.estimates[3] - 0.76422));

    const BernaysEstimate hx = bernays_estimate(QuadForm{1, 1, 1}, grid);
    CHECK(hx.counts == std::vector<std::uint64_t>{2299, 20091, 180874, 1659711});
    CHECK(hx.c_fit == doctest::Approx(0.627609671).epsilon(1e-6));
    CHECK(std::abs(hx.estimates[3] - hx.estimates[2]) / hx.estimates[3] < 0.03);

    // Identity R = C-hat * T / sqrt(log T) reconstructs the counts exactly.
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double back = sq.estimates[i] * static_cast<double>(grid[i]) /
                            std::sqrt(std::log(static_cast<double>(grid[i])));
        CHECK(back == doctest::Approx(static_cast<double>(sq.counts[i])).epsilon(1e-9));
    }
}

TEST_CASE("bernays estimate: small grids and flags") {
    // Fewer than three points: estimates only, no fit.
    const BernaysEstimate two = bernays_estimate(QuadForm{1, 0, 1}, {100, 1000});
    CHECK_FALSE(two.extrapolated);
    CHECK(two.c_fit == doctest::Approx(two.estimates.back()));
    CHECK(two.b_fit == 0.0);
    CHECK(two.low_confidence);

    // Tiny grid is flagged low-confidence but still produces estimates.
    const BernaysEstimate tiny = bernays_estimate(QuadForm{1, 0, 1}, {10});
    CHECK(tiny.low_confidence);
    CHECK(tiny.estimates.size() == 1);
    CHECK(tiny.estimates[0] > 0.0);

    CHECK_THROWS_AS(bernays_estimate(QuadForm{1, 0, 1}, {}), precondition_error);
    CHECK_THROWS_AS(bernays_estimate(QuadForm{1, 0, 1}, {100, 100}), precondition_error);
    CHECK_THROWS_AS(bernays_estimate(QuadForm{1, 0, 1}, {1, 100}), precondition_error);
}

TEST_CASE("palette bounds: square lattice window R = 10") {
    const auto m = z2();
    const DiskWindow w = build_disk_window(m, {Rat(0), Rat(0)}, {Rat(0), Rat(0)}, Rat(100));
    CHECK(w.size() == 317);
    const InnerRegularCert cert = certify_inner_regular(w, Rat(0));
    const PaletteReport rep = palette_bounds_check(w, cert);
    // (20 - sqrt(2))^2 = 402 - 40 sqrt(2) -> key 345; diameter key 400.
    CHECK(rep.lower_key == 345);
    CHECK(rep.upper_key == 400);
    CHECK(rep.r_lower == 126);
    CHECK(rep.r_upper == 145);
    CHECK(rep.distinct == 143);
    CHECK(rep.sandwich_holds);
    CHECK(rep.slack_lower == 17);
    CHECK(rep.slack_upper == 2);
}

TEST_CASE("palette bounds: hexagonal window R = 8") {
    const auto m = hexm();
    const DiskWindow w = build_disk_window(m, {Rat(0), Rat(0)}, {Rat(0), Rat(0)}, Rat(64));
    CHECK(w.size() == 241);
    const InnerRegularCert cert = certify_inner_regular(w, Rat(0));
    const PaletteReport rep = palette_bounds_check(w, cert);
    // (16 - 2/sqrt(3))^2 = 220.38... -> key 220; diameter key 256.
    CHECK(rep.lower_key == 220);
    CHECK(rep.upper_key == 256);
    CHECK(rep.r_lower == 71);
    CHECK(rep.r_upper == 82);
    CHECK(rep.distinct == 82);
    CHECK(rep.sandwich_holds);
    CHECK(rep.slack_lower == 11);
    CHECK(rep.slack_upper == 0);
}

TEST_CASE("palette bounds: shrunken window and property sweep") {
    const auto m = z2();
    // With c = 1/4 the lower argument shrinks to (15 - sqrt(2))^2 = 184.57...
    const DiskWindow w = build_disk_window(m, {Rat(0), Rat(0)}, {Rat(0), Rat(0)}, Rat(100));
    const InnerRegularCert cert = certify_inner_regular(w, Rat(1, 4));
    const PaletteReport rep = palette_bounds_check(w, cert);
    CHECK(rep.lower_key == 184);
    CHECK(rep.upper_key == 400);
    CHECK(rep.sandwich_holds);

    // Sandwich is a theorem: it must hold on every window, both lattices,
    // lattice-point and deep-hole centers.
    for (const auto& model : {z2(), hexm()}) {
        for (int r = 2; r <= 9; ++r) {
            for (const Vec2Q& z : {Vec2Q{Rat(0), Rat(0)}, model->deep_hole()}) {
                const DiskWindow win =
                    build_disk_window(model, {Rat(0), Rat(0)}, z, Rat(r * r));
                const InnerRegularCert c0 = certify_inner_regular(win, Rat(0));
                const PaletteReport p = palette_bounds_check(win, c0);
                CHECK(p.sandwich_holds);
            }
        }
    }
}

TEST_CASE("palette bounds: vacuous lower bound and preconditions") {
    const auto m = z2();
    // R^2 = 13/25 just above mu^2 = 1/2: the window is a single point, the
    // lower argument rounds to key 0, and the sandwich is 0 <= 0 <= R(2).
    const DiskWindow w = build_disk_window(m, {Rat(0), Rat(0)}, {Rat(0), Rat(0)}, Rat(13, 25));
    CHECK(w.size() == 1);
    const InnerRegularCert cert = certify_inner_regular(w, Rat(0));
    const PaletteReport rep = palette_bounds_check(w, cert);
    CHECK(rep.lower_key == 0);
    CHECK(rep.upper_key == 2);
    CHECK(rep.r_lower == 0);
    CHECK(rep.distinct == 0);
    CHECK(rep.r_upper == 2);
    CHECK(rep.sandwich_holds);

    // (1 - c) R <= mu is rejected.
    const DiskWindow small = build_disk_window(m, {Rat(0), Rat(0)}, {Rat(0), Rat(0)}, Rat(1, 2));
    InnerRegularCert fake;
    fake.c = Rat(0);
    fake.valid = true;
    CHECK_THROWS_AS(palette_bounds_check(small, fake), precondition_error);
    InnerRegularCert invalid;
    invalid.valid = false;
    CHECK_THROWS_AS(palette_bounds_check(w, invalid), precondition_error);
}

TEST_CASE("inversion: forward round trips") {
    for (const double c : {0.76422, 1.0, 2.5}) {
        for (int e = 2; e <= 10; ++e) {
            const double t = std::pow(10.0, e);
            const double k = c * t / std::sqrt(std::log(t));
            const InversionResult res = invert_k_to_T(k, c);
            CHECK(std::abs(res.t - t) / t < 1e-6);
            CHECK(res.residual < 1e-9);
            CHECK(res.correction == doctest::Approx(std::sqrt(std::log(res.t) / std::log(k))));
        }
    }
}

TEST_CASE("inversion: small cases and preconditions") {
    // k = 3, C = 1 converges: T / sqrt(log T) = 3.
    const InversionResult small = invert_k_to_T(3.0, 1.0);
    CHECK(small.t / std::sqrt(std::log(small.t)) == doctest::Approx(3.0));
    CHECK(small.t > 1.0);
    // Correction factor exceeds 1 whenever T > k.
    const InversionResult big = invert_k_to_T(1000.0, 0.8);
    CHECK(big.t > 1000.0);
    CHECK(big.correction > 1.0);

    CHECK_THROWS_AS(invert_k_to_T(2.9, 1.0), precondition_error);
    CHECK_THROWS_AS(invert_k_to_T(100.0, 0.0), precondition_error);
    CHECK_THROWS_AS(invert_k_to_T(100.0, -1.0), precondition_error);
    // C so large that T / sqrt(log T) = k / C has no solution.
    CHECK_THROWS_AS(invert_k_to_T(3.0, 2.0), precondition_error);
}
