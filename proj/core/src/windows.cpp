#include "distlat/windows.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace distlat {

namespace {

constexpr double kPi = 3.14159265358979323846;

BigInt floor_div_big(const BigInt& n, const BigInt& m) {
    BigInt q = n / m;                      // truncates toward zero
    if (q * m != n && ((n < 0) != (m < 0))) --q;
    return q;
}

BigInt ceil_div_big(const BigInt& n, const BigInt& m) {
    BigInt q = n / m;
    if (q * m != n && ((n < 0) == (m < 0))) ++q;
    return q;
}

BigInt i128_to_bigint(i128 v) {
    const bool neg = v < 0;
    const BigInt mag = to_bigint(neg ? static_cast<u128>(-v) : static_cast<u128>(v));
    return neg ? BigInt(-mag) : mag;
}

i128 to_i128_checked(const BigInt& v, const char* what) {
    static const BigInt lim = BigInt(1) << 126;
    if (v > lim || v < -lim) throw budget_error(std::string(what) + " exceeds 128-bit range");
    const bool neg = v < 0;
    const BigInt mag = neg ? BigInt(-v) : v;
    const u128 low = static_cast<std::uint64_t>(mag & 0xFFFFFFFFFFFFFFFFULL);
    const u128 high = static_cast<std::uint64_t>((mag >> 64) & 0xFFFFFFFFFFFFFFFFULL);
    const u128 m = (high << 64) | low;
    return neg ? -static_cast<i128>(m) : static_cast<i128>(m);
}

// Exact row intervals of {u in Z^2 : F(d u - p) <= bound}.  For row y the
// admissible x solve a quadratic whose square root enters only through its
// integer floor, so ceil/floor of the root expressions are exact.
RowIntervals solve_disk_rows(const QuadForm& form, Int d, Vec2I p, const BigInt& bound,
                             std::uint64_t max_points) {
    if (bound < 0) return RowIntervals{};
    const BigInt a(form.a), b(form.b), disc = to_bigint(static_cast<u128>(form.disc()));
    const BigInt four_a_bound = 4 * a * bound;

    BigInt ymax = boost::multiprecision::sqrt(BigInt(four_a_bound / disc));
    while (disc * (ymax + 1) * (ymax + 1) <= four_a_bound) ++ymax;
    while (ymax > 0 && disc * ymax * ymax > four_a_bound) --ymax;

    const BigInt p1(p.x), p2(p.y), dd(d);
    const Int jmin = to_int_checked(ceil_div_big(p2 - ymax, dd));
    const Int jmax = to_int_checked(floor_div_big(p2 + ymax, dd));
    if (jmin > jmax) return RowIntervals{};
    if (static_cast<std::uint64_t>(jmax - jmin + 1) > 4 * max_points + 1024) {
        throw budget_error("disk window spans too many rows for the point budget");
    }

    const BigInt m = 2 * a * dd;
    std::vector<std::pair<Int, Int>> rows;
    rows.reserve(static_cast<std::size_t>(jmax - jmin + 1));
    std::uint64_t count = 0;
    for (Int j = jmin; j <= jmax; ++j) {
        const BigInt y = dd * j - p2;
        const BigInt u = four_a_bound - disc * y * y;
        if (u < 0) {
            rows.emplace_back(1, 0);
            continue;
        }
        const BigInt root = boost::multiprecision::sqrt(u);
        const BigInt c0 = -b * y + 2 * a * p1;
        const Int lo = to_int_checked(ceil_div_big(c0 - root, m));
        const Int hi = to_int_checked(floor_div_big(c0 + root, m));
        if (lo > hi) {
            rows.emplace_back(1, 0);
            continue;
        }
        count += static_cast<std::uint64_t>(hi - lo + 1);
        if (count > max_points) {
            throw budget_error("disk window exceeds the point budget of " +
                               std::to_string(max_points) + " points");
        }
        rows.emplace_back(lo, hi);
    }
    return RowIntervals::from_rows(jmin, std::move(rows));
}

Rat surd_d_sq_over_s(const LatticeModel& model, Int d) {
    return Rat(BigInt(d) * BigInt(d)) / model.scale();
}

double window_predicted_count(const LatticeModel& model, const SurdVal& radius_sq) {
    const double r2 = std::max(0.0, radius_sq.approx());
    return kPi * r2 / model.covolume();
}

// Delta^2 for the {0,1}^2 shift family: the largest squared norm among the
// input basis vectors and their sum.
Rat shift_family_delta_sq(const LatticeModel& model) {
    const Rat q10 = model.q_of({1, 0});
    const Rat q01 = model.q_of({0, 1});
    const Rat q11 = model.q_of({1, 1});
    return std::max({q10, q01, q11});
}

} // namespace

Rat SurdVal::rational_value() const {
    if (!is_rational()) throw precondition_error("surd value is irrational");
    return a;           // b == 0 or d == 0, so the root term vanishes
}

double SurdVal::approx() const {
    return rat_d(a) + rat_d(b) * std::sqrt(std::max(0.0, rat_d(d)));
}

bool DiskWindow::contains(Vec2I u) const {
    const i128 x = i128(denom) * u.x - scaled_center.x;
    const i128 y = i128(denom) * u.y - scaled_center.y;
    const QuadForm& f = model->form();
    const i128 cap = i128(1) << 31;
    if (x > -cap && x < cap && y > -cap && y < cap) {
        return f.eval_i128(x, y) <= key_bound;
    }
    if (key_bound < 0) return false;
    const BigInt bx = i128_to_bigint(x), by = i128_to_bigint(y);
    const BigInt val = BigInt(f.a) * bx * bx + BigInt(f.b) * bx * by + BigInt(f.c) * by * by;
    return val <= to_bigint(static_cast<u128>(key_bound));
}

LatticePointSet DiskWindow::point_set() const {
    return LatticePointSet::make(model, tau, rows.materialize());
}

DiskWindow build_disk_window(LatticePtr model, const Vec2Q& tau, const Vec2Q& z, const Rat& radius_sq,
                             std::uint64_t max_points) {
    return build_disk_window(std::move(model), tau, z, SurdVal::exact(radius_sq), max_points);
}

DiskWindow build_disk_window(LatticePtr model, const Vec2Q& tau, const Vec2Q& z, const SurdVal& radius_sq,
                             std::uint64_t max_points) {
    if (!model) throw precondition_error("disk window needs a lattice model");
    if (radius_sq.d < 0) throw precondition_error("surd radius needs d >= 0");
    if (radius_sq.sign() <= 0) throw precondition_error("disk window needs radius_sq > 0");

    const double predicted = window_predicted_count(*model, radius_sq);
    if (predicted > static_cast<double>(max_points) * 1.25 + 1024.0) {
        const double shown = std::min(predicted, 1e18);
        throw budget_error("disk window would hold about " +
                           std::to_string(static_cast<std::uint64_t>(shown)) +
                           " points, beyond the budget of " + std::to_string(max_points));
    }

    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    const Vec2Q dz{z.x - tau.x, z.y - tau.y};
    const BigInt den = boost::multiprecision::lcm(denominator(dz.x), denominator(dz.y));
    DiskWindow w;
    w.model = std::move(model);
    w.tau = tau;
    w.center = z;
    w.radius_sq = radius_sq;
    w.denom = to_int_checked(den);
    w.scaled_center = {to_int_checked(numerator(Rat(dz.x * den))),
                       to_int_checked(numerator(Rat(dz.y * den)))};

    const Rat f = surd_d_sq_over_s(*w.model, w.denom);
    const BigInt bound = floor_a_plus_b_sqrt(radius_sq.a * f, radius_sq.b * f, radius_sq.d);
    w.key_bound = to_i128_checked(bound, "disk window key bound");
    w.rows = solve_disk_rows(w.model->form(), w.denom, w.scaled_center, bound, max_points);
    return w;
}

DistanceSpectrum window_spectrum(const DiskWindow& w, std::uint64_t budget_bytes) {
    return spectrum_from_rows(*w.model, w.rows, budget_bytes);
}

std::vector<Vec2I> lattice_vectors_upto(const QuadForm& form, i128 key_bound,
                                        std::uint64_t max_vectors) {
    form.validate();
    if (key_bound < 0) return {};
    const BigInt bound = to_bigint(static_cast<u128>(key_bound));
    auto pts = solve_disk_rows(form, 1, {0, 0}, bound, max_vectors).materialize();
    std::erase(pts, Vec2I{0, 0});
    return pts;
}

CoveringReport verify_diffset_covering(const DiskWindow& w) {
    if (!w.radius_sq.is_rational()) {
        throw precondition_error("covering report needs a rational radius-squared window");
    }
    const LatticeModel& model = *w.model;
    const Rat r_sq = w.radius_sq.rational_value();
    const Rat mu_sq = model.covering_radius_sq();
    if (r_sq <= mu_sq) throw precondition_error("covering report needs R > mu");

    const Rat s = model.scale();
    CoveringReport rep;
    rep.diameter_key_bound = to_i128_checked(floor_rat(Rat(4) * r_sq / s), "diameter key bound");
    rep.guaranteed_key_bound = to_i128_checked(
        floor_a_plus_b_sqrt((Rat(4) * r_sq + Rat(4) * mu_sq) / s, Rat(-8) / s, r_sq * mu_sq),
        "guaranteed key bound");

    auto vectors = lattice_vectors_upto(model.form(), rep.diameter_key_bound);
    std::sort(vectors.begin(), vectors.end(), [&](Vec2I a, Vec2I b) {
        const Int ka = model.key_of(a), kb = model.key_of(b);
        return ka != kb ? ka < kb : a < b;
    });
    rep.vectors_checked = vectors.size();

    rep.largest_covered_key = rep.diameter_key_bound;
    for (const Vec2I v : vectors) {
        if (rep_count_rows(w.rows, v) == 0) {
            rep.largest_covered_key = model.key_of(v) - 1;
            break;
        }
    }
    rep.guarantee_holds = rep.guaranteed_key_bound <= rep.largest_covered_key;
    return rep;
}

InnerRegularCert certify_inner_regular(const DiskWindow& w, const Rat& c) {
    if (c < 0 || c >= 1) throw precondition_error("inner-regularity needs c in [0, 1)");
    const LatticeModel& model = *w.model;
    InnerRegularCert cert;
    cert.c = c;
    cert.radius_sq = w.radius_sq;

    const Rat shrink = (Rat(1) - c) * (Rat(1) - c);
    const SurdVal inner_sq{shrink * w.radius_sq.a, shrink * w.radius_sq.b, w.radius_sq.d};
    const bool mu_ok =
        sign_a_plus_b_sqrt(inner_sq.a - model.covering_radius_sq(), inner_sq.b, inner_sq.d) > 0;

    const DiskWindow inner = build_disk_window(w.model, w.tau, w.center, inner_sq);
    bool inner_ok = true;
    for (const Vec2I u : inner.rows.materialize()) inner_ok = inner_ok && w.contains(u);
    bool outer_ok = true;
    for (const Vec2I u : w.rows.materialize()) outer_ok = outer_ok && w.contains(u);

    cert.core_removed = w.size() - inner.size();
    cert.valid = mu_ok && inner_ok && outer_ok;

    if (w.size() > 0) {
        const Unimodular inv = model.reduction().change.inverse();
        Int imin = std::numeric_limits<Int>::max(), imax = std::numeric_limits<Int>::min();
        Int jmin = imin, jmax = imax;
        for (const Vec2I u : w.rows.materialize()) {
            const Vec2I r = inv.apply(u);
            imin = std::min(imin, r.x);
            imax = std::max(imax, r.x);
            jmin = std::min(jmin, r.y);
            jmax = std::max(jmax, r.y);
        }
        const Rat side1 = Rat((imax - imin + 1)) * Rat((imax - imin + 1)) * model.reduction().reduced.g11;
        const Rat side2 = Rat((jmax - jmin + 1)) * Rat((jmax - jmin + 1)) * model.reduction().reduced.g22;
        cert.aspect_bound = std::sqrt(rat_d(std::max(side1, side2) / std::min(side1, side2)));
    }
    return cert;
}

InnerCore inner_core(const DiskWindow& w, const InnerRegularCert& cert) {
    if (!cert.valid) throw precondition_error("inner core needs a valid certificate");
    if (!w.radius_sq.is_rational()) {
        throw precondition_error("inner core needs a rational radius-squared window");
    }
    const LatticeModel& model = *w.model;
    const Rat r_sq = w.radius_sq.rational_value();
    const Rat delta_sq = shift_family_delta_sq(model);
    const Rat shrink = (Rat(1) - cert.c) * (Rat(1) - cert.c);
    if (shrink * r_sq <= delta_sq) {
        throw precondition_error("empty core: (1 - c) R <= Delta for the shift family");
    }

    InnerCore out;
    out.delta_sq = delta_sq;
    // ((1 - c) R - Delta)^2 = (1 - c)^2 R^2 + Delta^2 - 2 (1 - c) sqrt(R^2 Delta^2)
    const SurdVal core_sq{shrink * r_sq + delta_sq, Rat(-2) * (Rat(1) - cert.c), r_sq * delta_sq};
    out.core = build_disk_window(w.model, w.tau, w.center, core_sq);
    out.removed = w.size() - out.core.size();

    static constexpr Vec2I shifts[] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    for (const Vec2I u : out.core.rows.materialize()) {
        for (const Vec2I t : shifts) {
            ++out.shift_checks;
            if (!w.contains(u + t)) {
                throw internal_error("core point escapes the window under a {0,1}^2 shift");
            }
        }
    }
    return out;
}

LensReport lens_count(LatticePtr model, const Vec2Q& tau, const Vec2Q& z, const Rat& rho_sq, Vec2I u,
                      std::uint64_t max_points) {
    if (rho_sq <= 0) throw precondition_error("lens needs rho_sq > 0");
    const DiskWindow w = build_disk_window(std::move(model), tau, z, rho_sq, max_points);

    LensReport rep;
    rep.count = rep_count_rows(w.rows, u);

    const double rho2 = rat_d(rho_sq);
    const double rho = std::sqrt(rho2);
    const double q2 = rat_d(w.model->q_of(u));
    if (q2 <= 4.0 * rho2) {
        const double q = std::sqrt(q2);
        const double area = 2.0 * rho2 * std::acos(q / (2.0 * rho)) -
                            (q / 2.0) * std::sqrt(std::max(0.0, 4.0 * rho2 - q2));
        rep.area_over_covol = area / w.model->covolume();
    }
    rep.residual = std::abs(static_cast<double>(rep.count) - rep.area_over_covol);
    rep.bound_unit = 1.0 + 4.0 * kPi * rho;
    rep.fitted_c = rep.residual / rep.bound_unit;
    return rep;
}

ConvexCountReport convex_count_polygon(LatticePtr model, const Vec2Q& tau,
                                       const std::vector<Vec2Q>& vertices,
                                       std::uint64_t max_points) {
    if (!model) throw precondition_error("convex count needs a lattice model");
    if (vertices.empty()) throw precondition_error("convex count needs at least one vertex");

    std::vector<Vec2Q> vs;
    vs.reserve(vertices.size());
    for (const auto& v : vertices) vs.push_back({v.x - tau.x, v.y - tau.y});

    Rat ymin = vs[0].y, ymax = vs[0].y;
    for (const auto& v : vs) {
        ymin = std::min(ymin, v.y);
        ymax = std::max(ymax, v.y);
    }

    ConvexCountReport rep;
    const Int jlo = to_int_checked(ceil_rat(ymin));
    const Int jhi = to_int_checked(floor_rat(ymax));
    const std::size_t n = vs.size();
    for (Int j = jlo; j <= jhi; ++j) {
        const Rat y(j);
        bool seen = false;
        Rat xmin, xmax;
        auto candidate = [&](const Rat& x) {
            if (!seen) {
                xmin = xmax = x;
                seen = true;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
            }
        };
        if (n == 1) {
            if (vs[0].y == y) candidate(vs[0].x);
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                const Vec2Q& p = vs[i];
                const Vec2Q& q = vs[(i + 1) % n];
                if (p.y == q.y) {
                    if (p.y == y) {
                        candidate(p.x);
                        candidate(q.x);
                    }
                    continue;
                }
                const auto [elo, ehi] = std::minmax(p.y, q.y);
                if (y < elo || y > ehi) continue;
                candidate(p.x + (y - p.y) * (q.x - p.x) / (q.y - p.y));
            }
        }
        if (!seen) continue;
        const BigInt lo = ceil_rat(xmin), hi = floor_rat(xmax);
        if (lo > hi) continue;
        const BigInt row_count = hi - lo + 1;
        if (BigInt(rep.count) + row_count > BigInt(max_points)) {
            throw budget_error("convex region exceeds the point budget");
        }
        rep.count += static_cast<std::uint64_t>(row_count);
    }

    Rat twice_area(0);
    double perim = 0.0;
    if (n >= 2) {
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2Q& p = vs[i];
            const Vec2Q& q = vs[(i + 1) % n];
            twice_area += p.x * q.y - q.x * p.y;
            const Vec2Q e{q.x - p.x, q.y - p.y};
            perim += std::sqrt(rat_d(model->gram().eval(e)));
        }
    }
    if (twice_area < 0) twice_area = -twice_area;
    rep.area_over_covol = rat_d(twice_area) / 2.0;
    rep.perimeter = perim;
    rep.residual = std::abs(static_cast<double>(rep.count) - rep.area_over_covol);
    rep.fitted_c = rep.residual / (1.0 + rep.perimeter);
    return rep;
}

ConvexCountReport convex_count_disk(LatticePtr model, const Vec2Q& tau, const Vec2Q& z,
                                    const Rat& rho_sq, std::uint64_t max_points) {
    const DiskWindow w = build_disk_window(std::move(model), tau, z, rho_sq, max_points);
    ConvexCountReport rep;
    rep.count = w.size();
    const double rho2 = rat_d(rho_sq);
    rep.area_over_covol = kPi * rho2 / w.model->covolume();
    rep.perimeter = 2.0 * kPi * std::sqrt(rho2);
    rep.residual = std::abs(static_cast<double>(rep.count) - rep.area_over_covol);
    rep.fitted_c = rep.residual / (1.0 + rep.perimeter);
    return rep;
}

RectSubset RectSubset::make(LambdaRectangle rect, const std::vector<Vec2I>& points) {
    if (rect.L1 < 1 || rect.L2 < 1) throw precondition_error("rectangle sides must be positive");
    if (rect.area() > (u128(1) << 33)) throw budget_error("rectangle mask exceeds the byte budget");
    RectSubset s;
    s.rect_ = rect;
    s.words_per_row_ = static_cast<std::size_t>((rect.L1 + 63) / 64);
    s.bits_.assign(s.words_per_row_ * static_cast<std::size_t>(rect.L2), 0);
    for (const Vec2I p : points) {
        if (!rect.contains(p)) throw precondition_error("subset point outside its rectangle");
        const std::size_t i = static_cast<std::size_t>(p.x - rect.a0.x);
        const std::size_t j = static_cast<std::size_t>(p.y - rect.a0.y);
        std::uint64_t& w = s.bits_[j * s.words_per_row_ + i / 64];
        const std::uint64_t bit = std::uint64_t(1) << (i % 64);
        if (!(w & bit)) {
            w |= bit;
            ++s.count_;
        }
    }
    return s;
}

RectSubset RectSubset::full(LambdaRectangle rect) {
    std::vector<Vec2I> pts;
    pts.reserve(static_cast<std::size_t>(rect.L1 * rect.L2));
    for (Int j = 0; j < rect.L2; ++j) {
        for (Int i = 0; i < rect.L1; ++i) pts.push_back({rect.a0.x + i, rect.a0.y + j});
    }
    return make(rect, pts);
}

Rat RectSubset::beta() const {
    return Rat(BigInt(count_)) / Rat(BigInt(rect_.L1) * BigInt(rect_.L2));
}

bool RectSubset::test(Int i, Int j) const {
    if (i < 0 || i >= rect_.L1 || j < 0 || j >= rect_.L2) return false;
    const std::size_t idx = static_cast<std::size_t>(j) * words_per_row_ + static_cast<std::size_t>(i) / 64;
    return (bits_[idx] >> (i % 64)) & 1;
}

std::vector<Vec2I> RectSubset::points() const {
    std::vector<Vec2I> pts;
    pts.reserve(count_);
    for (Int j = 0; j < rect_.L2; ++j) {
        for (Int i = 0; i < rect_.L1; ++i) {
            if (test(i, j)) pts.push_back({rect_.a0.x + i, rect_.a0.y + j});
        }
    }
    return pts;
}

u128 rect_energy_exact(Int l1, Int l2) {
    if (l1 < 1 || l2 < 1) throw precondition_error("rectangle sides must be positive");
    if (l1 > 3000000 || l2 > 3000000) {
        throw budget_error("rectangle energy exceeds the 128-bit range");
    }
    auto factor = [](Int l) {
        const u128 ll = static_cast<u128>(l);
        return (2 * ll * ll * ll + ll) / 3;    // always divisible: 2L^3 + L = L(2L^2 + 1)
    };
    return factor(l1) * factor(l2);
}

u128 rect_rep_count(Int l1, Int l2, Int u1, Int u2) {
    const Int a1 = u1 < 0 ? -u1 : u1;
    const Int a2 = u2 < 0 ? -u2 : u2;
    if (a1 >= l1 || a2 >= l2) return 0;
    return u128(l1 - a1) * u128(l2 - a2);
}

HeavyShifts find_heavy_shifts(const RectSubset& a) {
    const LambdaRectangle& r = a.rect();
    if (!r.proper()) throw precondition_error("heavy shifts need a proper rectangle");
    if (a.count() == 0) throw precondition_error("heavy shifts need a nonempty subset");

    const Int l1 = r.L1, l2 = r.L2;
    auto overlap_h = [&](Int s) {
        std::uint64_t total = 0;
        for (Int j = 0; j < l2; ++j) {
            for (Int i = 0; i + s < l1; ++i) {
                if (a.test(i, j) && a.test(i + s, j)) ++total;
            }
        }
        return total;
    };
    auto overlap_v = [&](Int t) {
        std::uint64_t total = 0;
        for (Int j = 0; j + t < l2; ++j) {
            for (Int i = 0; i < l1; ++i) {
                if (a.test(i, j) && a.test(i, j + t)) ++total;
            }
        }
        return total;
    };

    HeavyShifts out;
    for (Int s = 1; s < l1; ++s) {
        const std::uint64_t v = overlap_h(s);
        if (s == 1 || v > out.overlap1) {
            out.s = s;
            out.overlap1 = v;
        }
    }
    for (Int t = 1; t < l2; ++t) {
        const std::uint64_t v = overlap_v(t);
        if (t == 1 || v > out.overlap2) {
            out.t = t;
            out.overlap2 = v;
        }
    }

    const Rat beta = a.beta();
    const Rat n(BigInt(a.count()));
    auto bound = [&](Int l) -> Rat {
        const Rat raw = (beta * l - 1) / (Rat(2) * (l - 1));
        return std::max(Rat(0), raw) * n;
    };
    out.bound1 = bound(l1);
    out.bound2 = bound(l2);
    out.bounds_hold =
        Rat(BigInt(out.overlap1)) >= out.bound1 && Rat(BigInt(out.overlap2)) >= out.bound2;
    return out;
}

SquareExtract extract_square_window(const RectSubset& a) {
    const LambdaRectangle& r = a.rect();
    const Int l1 = r.L1, l2 = r.L2;
    if (!(l1 >= l2 && l2 >= 2)) throw precondition_error("extraction needs L1 >= L2 >= 2");

    std::vector<std::uint64_t> col(static_cast<std::size_t>(l1), 0);
    for (Int j = 0; j < l2; ++j) {
        for (Int i = 0; i < l1; ++i) {
            if (a.test(i, j)) ++col[static_cast<std::size_t>(i)];
        }
    }

    // Sliding cyclic window sums over L2 consecutive columns.
    std::uint64_t sum = 0;
    for (Int i = 0; i < l2; ++i) sum += col[static_cast<std::size_t>(i)];
    std::uint64_t best = sum;
    Int s_star = 0;
    std::uint64_t cur = sum;
    for (Int s = 1; s < l1; ++s) {
        cur -= col[static_cast<std::size_t>(s - 1)];
        cur += col[static_cast<std::size_t>((s - 1 + l2) % l1)];   // new right edge of the window
        if (cur > best) {
            best = cur;
            s_star = s;
        }
    }
    // best = max_s sum over the cyclic window [s, s + L2), attained at the
    // smallest maximiser; it is at least the average (L2 / L1) |A|.

    SquareExtract out;
    out.s_star = s_star;
    Int start = s_star;
    if (s_star > l1 - l2) {
        out.wrap_used = true;
        std::uint64_t suffix = 0;
        for (Int i = s_star; i < l1; ++i) suffix += col[static_cast<std::size_t>(i)];
        const std::uint64_t prefix = best - suffix;
        start = suffix >= prefix ? l1 - l2 : 0;
    }
    out.window = {Vec2I{r.a0.x + start, r.a0.y}, l2, l2};
    for (Int i = start; i < start + l2; ++i) out.points_in_window += col[static_cast<std::size_t>(i)];
    out.density = Rat(BigInt(out.points_in_window)) / Rat(BigInt(l2) * BigInt(l2));
    // density >= beta / 2 reduces to the integer comparison below
    out.guarantee_holds =
        BigInt(out.points_in_window) * 2 * l1 >= BigInt(a.count()) * l2;
    return out;
}

GapHull gap_hull(const LambdaRectangle& p, const std::vector<Vec2I>& t) {
    if (t.empty()) throw precondition_error("gap hull needs a nonempty translate set");
    Int axmin = t[0].x, axmax = t[0].x, aymin = t[0].y, aymax = t[0].y;
    for (const Vec2I v : t) {
        axmin = std::min(axmin, v.x);
        axmax = std::max(axmax, v.x);
        aymin = std::min(aymin, v.y);
        aymax = std::max(aymax, v.y);
    }
    GapHull out;
    out.delta_alpha = axmax - axmin;
    out.delta_gamma = aymax - aymin;
    out.hull = {Vec2I{p.a0.x + axmin, p.a0.y + aymin}, p.L1 + out.delta_alpha, p.L2 + out.delta_gamma};

    out.containment_ok = true;
    for (const Vec2I v : t) {
        const bool ok = p.a0.x + v.x >= out.hull.a0.x &&
                        p.a0.x + v.x + p.L1 <= out.hull.a0.x + out.hull.L1 &&
                        p.a0.y + v.y >= out.hull.a0.y &&
                        p.a0.y + v.y + p.L2 <= out.hull.a0.y + out.hull.L2;
        out.containment_ok = out.containment_ok && ok;
    }
    const u128 da = static_cast<u128>(out.delta_alpha), dg = static_cast<u128>(out.delta_gamma);
    out.size_identity =
        out.hull.area() == p.area() + da * u128(p.L2) + dg * u128(p.L1) + da * dg;
    return out;
}

PairCoverageReport verify_inner_regular_pairs(const DiskWindow& w, const InnerRegularCert& cert,
                                              const Rat& eps, const Rat& delta,
                                              const std::vector<Vec2I>& deleted) {
    if (!w.radius_sq.is_rational()) {
        throw precondition_error("pair coverage needs a rational radius-squared window");
    }
    if (eps < 0 || delta < 0 || delta >= 2) {
        throw precondition_error("pair coverage needs eps >= 0 and delta in [0, 2)");
    }
    const LatticeModel& model = *w.model;
    const Rat r_sq = w.radius_sq.rational_value();
    const Rat mu_sq = model.covering_radius_sq();
    const Rat gamma = Rat(1) - cert.c - eps;        // rho_eps = gamma R - mu
    if (gamma <= 0 || gamma * gamma * r_sq <= mu_sq) {
        throw precondition_error("pair coverage needs rho_eps > 0");
    }

    const Rat s = model.scale();
    const Rat two_minus_sq = (Rat(2) - delta) * (Rat(2) - delta);
    // (2 - delta)^2 rho_eps^2 = (2-d)^2 (gamma^2 R^2 + mu^2) - 2 gamma (2-d)^2 sqrt(R^2 mu^2)
    const BigInt threshold = floor_a_plus_b_sqrt(two_minus_sq * (gamma * gamma * r_sq + mu_sq) / s,
                                                 Rat(-2) * gamma * two_minus_sq / s, r_sq * mu_sq);

    PairCoverageReport rep;
    rep.key_threshold = to_i128_checked(threshold, "pair coverage key threshold");

    std::set<Vec2I> delset;
    for (const Vec2I d : deleted) {
        if (!w.contains(d)) throw precondition_error("deleted point is not in the window");
        delset.insert(d);
    }
    rep.deleted_count = delset.size();
    const std::uint64_t two_m = 2 * rep.deleted_count;

    rep.min_rep = std::numeric_limits<std::uint64_t>::max();
    rep.min_rep_after = rep.min_rep;
    for (const Vec2I v : lattice_vectors_upto(model.form(), rep.key_threshold)) {
        ++rep.lambdas_checked;
        const std::uint64_t r_w = rep_count_rows(w.rows, v);
        if (r_w < rep.min_rep) {
            rep.min_rep = r_w;
            rep.argmin_lambda = v;
        }
        std::uint64_t lost = 0;
        for (const Vec2I d : delset) {
            if (w.contains(d - v)) ++lost;                  // d as the left endpoint
            if (w.contains(d + v)) ++lost;                  // d as the right endpoint
            if (delset.count(d - v)) --lost;                // both deleted: counted twice
        }
        const std::uint64_t r_x = r_w - lost;
        rep.min_rep_after = std::min(rep.min_rep_after, r_x);
        rep.deletion_bound_holds = rep.deletion_bound_holds && (r_x + two_m >= r_w);
    }
    if (rep.lambdas_checked == 0) {
        rep.min_rep = 0;
        rep.min_rep_after = 0;
        rep.all_positive = true;    // vacuous
    } else {
        rep.all_positive = rep.min_rep >= 1;
        rep.kappa = static_cast<double>(rep.min_rep) / rat_d(r_sq);
    }
    return rep;
}

} // namespace distlat
