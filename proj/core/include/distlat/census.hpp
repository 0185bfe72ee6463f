#pragma once

#include "distlat/windows.hpp"

#include <string>
#include <vector>

namespace distlat {

// Bit table of the values n in [1, T] represented by a positive definite
// form: bit n is set iff F(x, y) = n for some integer pair (x, y) != (0, 0).
// Zero is never counted; only nonzero differences produce distances.
class RepTable {
public:
    static RepTable build(const QuadForm& form, std::uint64_t t,
                          std::uint64_t budget_bytes = std::uint64_t(1) << 30);

    const QuadForm& form() const { return form_; }
    std::uint64_t t() const { return t_; }
    std::uint64_t count() const { return count_; }           // R_F(T)
    bool represented(std::uint64_t n) const;                  // needs 1 <= n <= T
    std::uint64_t count_upto(std::uint64_t n) const;          // R_F(n), needs n <= T

    // Cache file: version, form coefficients, T, then the raw bit words.
    void save(const std::string& path) const;
    static RepTable load(const std::string& path);

private:
    RepTable() = default;

    QuadForm form_;
    std::uint64_t t_ = 0;
    std::vector<std::uint64_t> bits_;
    std::uint64_t count_ = 0;
};

inline RepTable represented_upto(const QuadForm& form, std::uint64_t t,
                                 std::uint64_t budget_bytes = std::uint64_t(1) << 30) {
    return RepTable::build(form, t, budget_bytes);
}

// Empirical Bernays constant: R_F(T) = C T / sqrt(log T) (1 + o(1)), sampled
// on a grid and extrapolated with a 1/log T second-order term, because the
// convergence is logarithmically slow and C-hat(T_max) alone overshoots.
struct BernaysEstimate {
    std::vector<std::uint64_t> grid;
    std::vector<std::uint64_t> counts;        // R_F(T) per grid point
    std::vector<double> estimates;            // C-hat(T) = R_F(T) sqrt(log T) / T
    double c_fit = 0.0;                       // headline constant from the fit
    double b_fit = 0.0;                       // second-order coefficient
    double rss = 0.0;                         // fit residual sum of squares
    bool extrapolated = false;                // needs at least three grid points
    bool low_confidence = false;              // largest T too small to trust
};

BernaysEstimate bernays_estimate(const QuadForm& form, std::vector<std::uint64_t> grid,
                                 std::uint64_t budget_bytes = std::uint64_t(1) << 30);

// Palette sandwich for a disk window: the distinct distance count is trapped
// between the represented-value counts at the covering radius and at the
// diameter, R((2(1-c)R - 2mu)^2 / s) <= |D(W)| <= R(4 R^2 / s).
struct PaletteReport {
    std::uint64_t distinct = 0;
    i128 lower_key = 0;
    i128 upper_key = 0;
    std::uint64_t r_lower = 0;
    std::uint64_t r_upper = 0;
    bool sandwich_holds = false;
    std::uint64_t slack_lower = 0;
    std::uint64_t slack_upper = 0;
};

PaletteReport palette_bounds_check(const DiskWindow& w, const InnerRegularCert& cert,
                                   std::uint64_t budget_bytes = std::uint64_t(1) << 30);

// Solve k = C T / sqrt(log T) for T by the monotone fixed-point iteration
// T <- (k / C) sqrt(log T), started at T = k.
struct InversionResult {
    double t = 0.0;
    double correction = 1.0;     // sqrt(log T / log k)
    int iterations = 0;
    double residual = 0.0;       // |C T / sqrt(log T) - k| / k
};

InversionResult invert_k_to_T(double k, double c_est);

} // namespace distlat
