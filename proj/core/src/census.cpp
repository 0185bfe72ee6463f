#include "distlat/census.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

namespace distlat {

namespace {

Int floor_div_i(i128 num, i128 den) {
    i128 q = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
    return static_cast<Int>(q);
}

Int ceil_div_i(i128 num, i128 den) {
    i128 q = num / den;
    if ((num % den != 0) && ((num < 0) == (den < 0))) ++q;
    return static_cast<Int>(q);
}

constexpr std::uint32_t kCacheMagic   = 0x31434C44u;  // "DLC1" little-endian
constexpr std::uint32_t kCacheVersion = 1u;

template <typename T>
void write_raw(std::ofstream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void read_raw(std::ifstream& in, T& v) {
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
}

} // namespace

RepTable RepTable::build(const QuadForm& form, std::uint64_t t, std::uint64_t budget_bytes) {
    form.validate();
    if (t < 1)
        throw precondition_error("represented_upto: bound T must be at least 1");

    const std::uint64_t words = t / 64 + 1;
    const std::uint64_t bytes = words * 8;
    if (bytes > budget_bytes)
        throw budget_error("represented_upto: bit array for T = " + std::to_string(t) + " needs " +
                           std::to_string(bytes) + " bytes, budget is " +
                           std::to_string(budget_bytes) + " bytes");

    RepTable table;
    table.form_ = form;
    table.t_ = t;
    table.bits_.assign(words, 0);

    // Enumerate the ellipse of the reduced equivalent: same value set, and
    // the reduced coefficients give the tightest row bounds.  From
    // 4a F = (2ax + by)^2 + disc y^2, row y is nonempty iff disc y^2 <= 4aT,
    // and then |2ax + by| <= isqrt(4aT - disc y^2) pins the exact x range.
    const QuadForm red = form.reduced();
    const i128 a = red.a, b = red.b;
    const i128 disc = red.disc();
    const i128 four_a_t = 4 * a * static_cast<i128>(t);
    const Int y_max = static_cast<Int>(isqrt_u128(static_cast<u128>(four_a_t / disc)));

    for (Int y = -y_max; y <= y_max; ++y) {
        const i128 u = four_a_t - disc * static_cast<i128>(y) * y;
        if (u < 0) continue;
        const i128 root = static_cast<i128>(isqrt_u128(static_cast<u128>(u)));
        const Int x_lo = ceil_div_i(-root - b * y, 2 * a);
        const Int x_hi = floor_div_i(root - b * y, 2 * a);
        if (x_lo > x_hi) continue;
        // F(x+1, y) - F(x, y) = a(2x + 1) + by; all values stay within [0, T].
        Int v = static_cast<Int>(red.eval_i128(x_lo, y));
        Int step = static_cast<Int>(a) * (2 * x_lo + 1) + static_cast<Int>(b) * y;
        for (Int x = x_lo; x <= x_hi; ++x) {
            if (v != 0)
                table.bits_[static_cast<std::uint64_t>(v) >> 6] |=
                    std::uint64_t(1) << (static_cast<std::uint64_t>(v) & 63);
            v += step;
            step += static_cast<Int>(2 * a);
        }
    }

    std::uint64_t count = 0;
    for (std::uint64_t w : table.bits_) count += static_cast<std::uint64_t>(std::popcount(w));
    table.count_ = count;
    return table;
}

bool RepTable::represented(std::uint64_t n) const {
    if (n < 1 || n > t_)
        throw precondition_error("RepTable::represented: n out of range [1, T]");
    return (bits_[n >> 6] >> (n & 63)) & 1;
}

std::uint64_t RepTable::count_upto(std::uint64_t n) const {
    if (n > t_)
        throw precondition_error("RepTable::count_upto: bound exceeds table range");
    std::uint64_t total = 0;
    const std::uint64_t full = n >> 6;
    for (std::uint64_t i = 0; i < full; ++i)
        total += static_cast<std::uint64_t>(std::popcount(bits_[i]));
    const unsigned rem = static_cast<unsigned>(n & 63);
    // Keep bits 0..rem of the last word; bit 0 (n = 0) is never set.
    const std::uint64_t mask = (rem == 63) ? ~std::uint64_t(0) : ((std::uint64_t(1) << (rem + 1)) - 1);
    total += static_cast<std::uint64_t>(std::popcount(bits_[full] & mask));
    return total;
}

void RepTable::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw io_error("census cache: cannot open '" + path + "' for writing");
    write_raw(out, kCacheMagic);
    write_raw(out, kCacheVersion);
    const std::int64_t a = form_.a, b = form_.b, c = form_.c;
    write_raw(out, a);
    write_raw(out, b);
    write_raw(out, c);
    write_raw(out, t_);
    const std::uint64_t words = bits_.size();
    write_raw(out, words);
    out.write(reinterpret_cast<const char*>(bits_.data()),
              static_cast<std::streamsize>(words * sizeof(std::uint64_t)));
    if (!out)
        throw io_error("census cache: write to '" + path + "' failed");
}

RepTable RepTable::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("census cache: cannot open '" + path + "' for reading");
    std::uint32_t magic = 0, version = 0;
    read_raw(in, magic);
    read_raw(in, version);
    if (!in || magic != kCacheMagic)
        throw io_error("census cache: '" + path + "' is not a census cache file");
    if (version != kCacheVersion)
        throw io_error("census cache: '" + path + "' has unsupported version " +
                       std::to_string(version));
    std::int64_t a = 0, b = 0, c = 0;
    std::uint64_t t = 0, words = 0;
    read_raw(in, a);
    read_raw(in, b);
    read_raw(in, c);
    read_raw(in, t);
    read_raw(in, words);
    if (!in || words != t / 64 + 1)
        throw io_error("census cache: '" + path + "' has a corrupt header");

    RepTable table;
    table.form_ = QuadForm{a, b, c};
    try {
        table.form_.validate();
    } catch (const precondition_error&) {
        throw io_error("census cache: '" + path + "' stores an invalid form");
    }
    table.t_ = t;
    table.bits_.assign(words, 0);
    in.read(reinterpret_cast<char*>(table.bits_.data()),
            static_cast<std::streamsize>(words * sizeof(std::uint64_t)));
    if (!in || static_cast<std::uint64_t>(in.gcount()) != words * sizeof(std::uint64_t))
        throw io_error("census cache: '" + path + "' is truncated");

    std::uint64_t count = 0;
    for (std::uint64_t w : table.bits_) count += static_cast<std::uint64_t>(std::popcount(w));
    table.count_ = count;
    return table;
}

BernaysEstimate bernays_estimate(const QuadForm& form, std::vector<std::uint64_t> grid,
                                 std::uint64_t budget_bytes) {
    if (grid.empty())
        throw precondition_error("bernays_estimate: grid must be nonempty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 2)
            throw precondition_error("bernays_estimate: grid values must be at least 2");
        if (i > 0 && grid[i] <= grid[i - 1])
            throw precondition_error("bernays_estimate: grid must be strictly increasing");
    }

    const RepTable table = RepTable::build(form, grid.back(), budget_bytes);

    BernaysEstimate est;
    est.grid = std::move(grid);
    est.counts.reserve(est.grid.size());
    est.estimates.reserve(est.grid.size());
    for (std::uint64_t t : est.grid) {
        const std::uint64_t r = table.count_upto(t);
        est.counts.push_back(r);
        const double lt = std::log(static_cast<double>(t));
        est.estimates.push_back(static_cast<double>(r) * std::sqrt(lt) / static_cast<double>(t));
    }

    est.low_confidence = est.grid.back() < 10000;
    est.extrapolated = est.grid.size() >= 3;
    if (!est.extrapolated) {
        // Too few points for a fit: report the largest-T estimate as-is.
        est.c_fit = est.estimates.back();
        est.b_fit = 0.0;
        est.rss = 0.0;
        return est;
    }

    // Model C-hat(T) = C (1 + b / log T): linear regression of the estimates
    // against x = 1 / log T over the top half of the grid (at least three
    // points), where the asymptotic regime is most credible.
    const std::size_t n = est.grid.size();
    const std::size_t m = std::min(n, std::max<std::size_t>(3, (n + 1) / 2));
    const std::size_t first = n - m;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = first; i < n; ++i) {
        const double x = 1.0 / std::log(static_cast<double>(est.grid[i]));
        const double y = est.estimates[i];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double dm = static_cast<double>(m);
    const double denom = dm * sxx - sx * sx;
    double slope = 0.0, intercept = sy / dm;
    if (std::abs(denom) > 1e-300) {
        slope = (dm * sxy - sx * sy) / denom;
        intercept = (sy - slope * sx) / dm;
    }
    est.c_fit = intercept;
    est.b_fit = (intercept > 0 && std::isfinite(slope / intercept)) ? slope / intercept : 0.0;
    double rss = 0.0;
    for (std::size_t i = first; i < n; ++i) {
        const double x = 1.0 / std::log(static_cast<double>(est.grid[i]));
        const double r = est.estimates[i] - (intercept + slope * x);
        rss += r * r;
    }
    est.rss = rss;
    return est;
}

PaletteReport palette_bounds_check(const DiskWindow& w, const InnerRegularCert& cert,
                                   std::uint64_t budget_bytes) {
    if (!w.radius_sq.is_rational())
        throw precondition_error("palette_bounds_check: window radius must be rational");
    if (!cert.valid)
        throw precondition_error("palette_bounds_check: certificate is not valid");
    const Rat r_sq = w.radius_sq.rational_value();
    const Rat gamma = Rat(1) - cert.c;
    const Rat mu_sq = w.model->covering_radius_sq();
    const Rat s = w.model->scale();
    if (!(gamma * gamma * r_sq > mu_sq))
        throw precondition_error("palette_bounds_check: needs (1-c) R > mu");

    PaletteReport rep;

    // Upper argument (2R)^2 / s; lower argument (2(1-c)R - 2mu)^2 / s
    //   = (4 gamma^2 R^2 + 4 mu^2)/s - (8 gamma / s) sqrt(R^2 mu^2).
    const BigInt upper = floor_rat(Rat(4) * r_sq / s);
    const BigInt lower = floor_a_plus_b_sqrt((Rat(4) * gamma * gamma * r_sq + Rat(4) * mu_sq) / s,
                                             Rat(-8) * gamma / s, r_sq * mu_sq);
    if (upper > BigInt(std::numeric_limits<std::uint64_t>::max() / 2))
        throw budget_error("palette_bounds_check: diameter key bound exceeds the census range");
    if (lower > upper)
        throw internal_error("palette_bounds_check: lower key exceeded the diameter key");
    const std::uint64_t upper_u = upper.convert_to<std::uint64_t>();
    const std::uint64_t lower_u = lower > 0 ? lower.convert_to<std::uint64_t>() : 0;
    rep.upper_key = static_cast<i128>(upper_u);
    rep.lower_key = lower > 0 ? static_cast<i128>(lower_u) : static_cast<i128>(lower.convert_to<std::int64_t>());

    rep.distinct = w.size() >= 2 ? distinct_key_count_from_rows(*w.model, w.rows) : 0;

    if (upper_u >= 1) {
        const RepTable table = RepTable::build(w.model->form_reduced(), upper_u, budget_bytes);
        rep.r_upper = table.count();
        rep.r_lower = lower_u >= 1 ? table.count_upto(lower_u) : 0;
    }

    rep.sandwich_holds = rep.r_lower <= rep.distinct && rep.distinct <= rep.r_upper;
    rep.slack_lower = rep.distinct >= rep.r_lower ? rep.distinct - rep.r_lower : 0;
    rep.slack_upper = rep.r_upper >= rep.distinct ? rep.r_upper - rep.distinct : 0;
    return rep;
}

InversionResult invert_k_to_T(double k, double c_est) {
    if (!(k >= 3))
        throw precondition_error("invert_k_to_T: needs k >= 3");
    if (!(c_est > 0) || !std::isfinite(c_est))
        throw precondition_error("invert_k_to_T: needs C_est > 0");
    // T / sqrt(log T) attains its minimum sqrt(2e) at T = sqrt(e); below
    // k / C_est = sqrt(2e) the equation has no solution with T > 1.
    if (k / c_est < std::sqrt(2.0 * std::exp(1.0)))
        throw precondition_error("invert_k_to_T: C_est too large, no fixed point with T > 1");

    InversionResult res;
    double t = k;
    int iter = 0;
    for (; iter < 200; ++iter) {
        const double next = (k / c_est) * std::sqrt(std::log(t));
        if (std::abs(next - t) <= 1e-12 * next) {
            t = next;
            ++iter;
            break;
        }
        t = next;
    }
    res.t = t;
    res.iterations = iter;
    const double forward = c_est * t / std::sqrt(std::log(t));
    res.residual = std::abs(forward - k) / k;
    res.correction = std::sqrt(std::log(t) / std::log(k));
    if (res.residual > 1e-9)
        throw internal_error("invert_k_to_T: fixed point iteration failed to converge");
    return res;
}

} // namespace distlat
