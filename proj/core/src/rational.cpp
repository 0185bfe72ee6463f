#include "distlat/rational.hpp"

#include <cmath>
#include <limits>

namespace distlat {

Rat parse_rat(std::string_view text) {
    auto bad = [&]() -> precondition_error {
        return precondition_error("malformed rational: '" + std::string(text) + "'");
    };
    if (text.empty()) throw bad();
    const auto slash = text.find('/');
    auto parse_int = [&](std::string_view part) -> BigInt {
        if (part.empty()) throw bad();
        std::size_t i = 0;
        bool neg = false;
        if (part[0] == '+' || part[0] == '-') {
            neg = part[0] == '-';
            i = 1;
            if (part.size() == 1) throw bad();
        }
        BigInt v = 0;
        for (; i < part.size(); ++i) {
            if (part[i] < '0' || part[i] > '9') throw bad();
            v = v * 10 + (part[i] - '0');
        }
        return neg ? -v : v;
    };
    if (slash == std::string_view::npos) return Rat(parse_int(text));
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw bad();
    if (den < 0) {
        den = -den;
        num = -num;
    }
    return Rat(num, den);
}

std::string rat_str(const Rat& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

double rat_d(const Rat& r) { return r.convert_to<double>(); }

BigInt floor_rat(const Rat& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    BigInt q = num / den;                   // truncates toward zero
    if (num < 0 && q * den != num) --q;
    return q;
}

BigInt ceil_rat(const Rat& r) { return -floor_rat(-r); }

Int to_int_checked(const BigInt& v) {
    if (v > BigInt(std::numeric_limits<Int>::max()) ||
        v < BigInt(std::numeric_limits<Int>::min())) {
        throw internal_error("integer overflow converting to 64-bit: " + v.str());
    }
    return v.convert_to<Int>();
}

std::uint64_t isqrt_u64(std::uint64_t v) {
    if (v == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r > v / r) --r;                     // r^2 > v
    while ((r + 1) <= v / (r + 1)) ++r;                 // (r+1)^2 <= v
    return r;
}

u128 isqrt_u128(u128 v) {
    if (v == 0) return 0;
    auto r = static_cast<u128>(std::sqrt(static_cast<double>(v)));
    const u128 cap = ~u128(0) >> 64;        // isqrt fits in 64 bits
    if (r > cap) r = cap;
    if (r == 0) r = 1;
    // division-based comparisons avoid 128-bit overflow near the top
    while (r > 0 && r > v / r) --r;
    while (r < cap && (r + 1) <= v / (r + 1)) ++r;
    return r;
}

std::string u128_str(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s += static_cast<char>('0' + static_cast<int>(v % 10));
        v /= 10;
    }
    return {s.rbegin(), s.rend()};
}

std::string i128_str(i128 v) {
    if (v < 0) return "-" + u128_str(static_cast<u128>(-v));
    return u128_str(static_cast<u128>(v));
}

int sign_a_plus_b_sqrt(const Rat& a, const Rat& b, const Rat& d) {
    if (d < 0) throw precondition_error("sign_a_plus_b_sqrt: negative radicand");
    const int sa = a.sign();
    if (b == 0 || d == 0) return sa;
    const int sb = b.sign();
    if (sa == sb) return sa;          // both terms pull the same way (or a = 0)
    if (sa == 0) return sb;
    // a and b*sqrt(d) have opposite signs; compare magnitudes exactly.
    const Rat a2 = a * a;
    const Rat b2d = b * b * d;
    if (a2 == b2d) return 0;
    return (a2 > b2d) ? sa : sb;
}

BigInt floor_a_plus_b_sqrt(const Rat& a, const Rat& b, const Rat& d) {
    if (sign_a_plus_b_sqrt(a, b, d) < 0) {
        throw precondition_error("floor_a_plus_b_sqrt: negative value");
    }
    // Start from the double estimate, then fix up with exact comparisons.
    double est = rat_d(a) + rat_d(b) * std::sqrt(rat_d(d));
    if (!std::isfinite(est)) est = 0.0;
    est = std::min(std::max(est, -9.0e18), 9.0e18);
    BigInt n(static_cast<long long>(std::floor(est)));
    if (n < 0) n = 0;
    while (!leq_a_plus_b_sqrt(Rat(n), a, b, d)) --n;       // n too big
    while (leq_a_plus_b_sqrt(Rat(n + 1), a, b, d)) ++n;    // n+1 still fits
    return n;
}

std::size_t hash_rat(const Rat& r) {
    std::size_t seed = 0;
    boost::hash_combine(seed, boost::multiprecision::numerator(r));
    boost::hash_combine(seed, boost::multiprecision::denominator(r));
    return seed;
}

} // namespace distlat
