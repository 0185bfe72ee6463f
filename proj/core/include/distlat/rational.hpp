#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/functional/hash.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace distlat {

using Int    = std::int64_t;
using i128   = __int128_t;
using u128   = __uint128_t;
using BigInt = boost::multiprecision::cpp_int;
using Rat    = boost::multiprecision::cpp_rational;

// Thrown when an input violates a documented precondition (bad Gram matrix,
// empty point set, malformed fraction string, ...).
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a computation would exceed an explicit size or memory budget.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an internal consistency check fails.  These checks guard exact
// identities that hold unconditionally, so seeing this is always a bug.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

// Thrown on file I/O failure or a malformed/corrupt serialized artifact.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Integer lattice coordinates (coefficients with respect to a lattice basis).
struct Vec2I {
    Int x = 0;
    Int y = 0;

    friend bool operator==(const Vec2I&, const Vec2I&) = default;
    friend auto operator<=>(const Vec2I&, const Vec2I&) = default;
    Vec2I operator+(Vec2I v) const { return {x + v.x, y + v.y}; }
    Vec2I operator-(Vec2I v) const { return {x - v.x, y - v.y}; }
    Vec2I operator-() const { return {-x, -y}; }
};

struct Vec2IHash {
    std::size_t operator()(const Vec2I& v) const noexcept {
        // splitmix-style mixing of the two coordinates
        std::uint64_t h = static_cast<std::uint64_t>(v.x) * 0x9e3779b97f4a7c15ull;
        h ^= static_cast<std::uint64_t>(v.y) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

// Rational coordinates with respect to a lattice basis.
struct Vec2Q {
    Rat x = 0;
    Rat y = 0;

    friend bool operator==(const Vec2Q&, const Vec2Q&) = default;
    Vec2Q operator+(const Vec2Q& v) const { return {x + v.x, y + v.y}; }
    Vec2Q operator-(const Vec2Q& v) const { return {x - v.x, y - v.y}; }
};

inline Vec2Q to_vec2q(Vec2I v) { return {Rat(v.x), Rat(v.y)}; }

// Parse "p", "-p", or "p/q" (q > 0 after normalisation) into an exact rational.
Rat parse_rat(std::string_view text);

// Render as "p" or "p/q" with q > 1; inverse of parse_rat up to normalisation.
std::string rat_str(const Rat& r);

// Non-authoritative double view, for reports only.
double rat_d(const Rat& r);

BigInt floor_rat(const Rat& r);
BigInt ceil_rat(const Rat& r);

// Convert, throwing internal_error if the value does not fit in 64 bits.
Int to_int_checked(const BigInt& v);

// floor(sqrt(v)) for v >= 0.
std::uint64_t isqrt_u64(std::uint64_t v);
u128 isqrt_u128(u128 v);

std::string u128_str(u128 v);
std::string i128_str(i128 v);

inline BigInt to_bigint(u128 v) {
    BigInt hi = static_cast<std::uint64_t>(v >> 64);
    return (hi << 64) | BigInt(static_cast<std::uint64_t>(v));
}

// Exact sign of a + b*sqrt(d) for rationals a, b and d >= 0.  Returns -1, 0, +1.
int sign_a_plus_b_sqrt(const Rat& a, const Rat& b, const Rat& d);

// Exact test lhs <= a + b*sqrt(d); the fully rational case is d a perfect
// square or b = 0, but no such assumption is made.
inline bool leq_a_plus_b_sqrt(const Rat& lhs, const Rat& a, const Rat& b, const Rat& d) {
    return sign_a_plus_b_sqrt(a - lhs, b, d) >= 0;
}

inline bool lt_a_plus_b_sqrt(const Rat& lhs, const Rat& a, const Rat& b, const Rat& d) {
    return sign_a_plus_b_sqrt(a - lhs, b, d) > 0;
}

// Largest integer n with n <= a + b*sqrt(d), assuming one exists and the
// value is nonnegative-bounded; throws precondition_error if a + b*sqrt(d) < 0.
BigInt floor_a_plus_b_sqrt(const Rat& a, const Rat& b, const Rat& d);

std::size_t hash_rat(const Rat& r);

} // namespace distlat
