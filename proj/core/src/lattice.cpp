#include "distlat/lattice.hpp"

#include <cmath>
#include <numeric>

namespace distlat {

void GramMatrix::validate() const {
    if (!is_positive_definite()) {
        throw precondition_error("Gram matrix must be positive definite");
    }
}

Rat GramMatrix::eval(const Vec2Q& u) const {
    return g11 * u.x * u.x + 2 * g12 * u.x * u.y + g22 * u.y * u.y;
}

Rat GramMatrix::pairing(const Vec2Q& u, const Vec2Q& v) const {
    return g11 * u.x * v.x + g12 * (u.x * v.y + u.y * v.x) + g22 * u.y * v.y;
}

void QuadForm::validate() const {
    if (a <= 0 || disc() <= 0) {
        throw precondition_error("quadratic form must be positive definite");
    }
    const Int g = std::gcd(std::gcd(a, b), c);
    if (g != 1) throw precondition_error("quadratic form must be primitive");
}

i128 QuadForm::disc() const {
    return i128(4) * a * c - i128(b) * b;
}

Int QuadForm::eval(Int x, Int y) const {
    const i128 v = eval_i128(x, y);
    if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min()) {
        throw internal_error("quadratic form value overflows 64 bits");
    }
    return static_cast<Int>(v);
}

std::string QuadForm::str() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

QuadForm QuadForm::reduced() const {
    const GramMatrix g{Rat(a), Rat(b) / 2, Rat(c)};
    const Arithmetization arith = arithmetize(gauss_reduce(g).reduced);
    if (arith.s != 1) throw internal_error("reduction changed form content");
    return arith.form;
}

Unimodular Unimodular::inverse() const {
    const Int d = det();
    if (d != 1 && d != -1) throw internal_error("matrix is not unimodular");
    // inverse = adj / det with det = +-1
    return {d * m22, d * -m12, d * -m21, d * m11};
}

namespace {

// Nearest integer to a rational, ties toward +infinity.
BigInt round_nearest(const Rat& r) { return floor_rat(r + Rat(1, 2)); }

struct ReductionState {
    Rat a, b, c;      // current Gram entries g11, g12, g22
    Unimodular u;     // current basis in input coordinates

    void swap_vectors() {
        std::swap(a, c);
        u = u.mul({0, 1, 1, 0});
    }
    // b2 -= k * b1
    void shear(const BigInt& kbig) {
        const Int k = to_int_checked(kbig);
        c = c - 2 * Rat(k) * b + Rat(k) * Rat(k) * a;
        b = b - Rat(k) * a;
        u = u.mul({1, -k, 0, 1});
    }
    // b2 += b1
    void add_first_to_second() {
        c = c + 2 * b + a;
        b = b + a;
        u = u.mul({1, 1, 0, 1});
    }
    // (b1, b2) -> (-b2, b1); keeps determinant, swaps diagonal, flips b sign
    void rotate() {
        std::swap(a, c);
        b = -b;
        u = u.mul({0, 1, -1, 0});
    }
    // b2 -> -b2; flips determinant and the sign of b
    void negate_second() {
        b = -b;
        u = u.mul({1, 0, 0, -1});
    }

    bool reduced() const { return 2 * boost::multiprecision::abs(b) <= a && a <= c; }

    // Boundary normalisation toward b >= 0 using determinant-preserving moves.
    void canonicalise_sign() {
        if (2 * b == -a) add_first_to_second();      // b: -a/2 -> +a/2
        if (a == c && b < 0) rotate();
    }
};

} // namespace

ReductionResult gauss_reduce(const GramMatrix& gram) {
    gram.validate();
    ReductionState st{gram.g11, gram.g12, gram.g22, Unimodular{}};
    for (int iter = 0; !st.reduced(); ++iter) {
        if (iter > 4096) throw internal_error("Lagrange-Gauss reduction did not terminate");
        if (st.a > st.c) st.swap_vectors();
        const BigInt k = round_nearest(Rat(st.b) / st.a);
        if (k != 0) st.shear(k);
        // a shear can shrink the second vector below the first; loop re-swaps
    }
    st.canonicalise_sign();
    if (st.u.det() == -1) {
        st.negate_second();
        st.canonicalise_sign();
    }
    if (st.u.det() != 1) throw internal_error("reduction lost unimodularity");
    return {st.u, GramMatrix{st.a, st.b, st.c}};
}

Arithmetization arithmetize(const GramMatrix& gram) {
    gram.validate();
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    const Rat two_g12 = 2 * gram.g12;
    BigInt lcm = boost::multiprecision::lcm(denominator(gram.g11), denominator(two_g12));
    lcm = boost::multiprecision::lcm(lcm, denominator(gram.g22));
    const BigInt A = numerator(Rat(gram.g11 * lcm));
    const BigInt B = numerator(Rat(two_g12 * lcm));
    const BigInt C = numerator(Rat(gram.g22 * lcm));
    BigInt g = boost::multiprecision::gcd(boost::multiprecision::gcd(A, B), C);
    if (g < 0) g = -g;
    QuadForm f{to_int_checked(A / g), to_int_checked(B / g), to_int_checked(C / g)};
    f.validate();
    return {Rat(g, lcm), f};
}

double SqrtRat::value() const { return std::sqrt(rat_d(sq)); }

namespace {

// Circumradius^2 of a triangle from its squared side lengths:
// 16 * area^2 = 2(AB + BC + CA) - A^2 - B^2 - C^2 and R^2 = ABC / (16 area^2).
Rat circumradius_sq(const Rat& A, const Rat& B, const Rat& C) {
    const Rat sixteen_area_sq = 2 * (A * B + B * C + C * A) - A * A - B * B - C * C;
    if (sixteen_area_sq <= 0) throw internal_error("degenerate Delaunay triangle");
    return A * B * C / sixteen_area_sq;
}

} // namespace

LatticeModel LatticeModel::from_gram(GramMatrix gram, std::string label) {
    gram.validate();
    LatticeModel m;
    m.gram_ = gram;
    m.label_ = std::move(label);
    m.reduction_ = gauss_reduce(gram);
    m.lambda1_sq_ = m.reduction_.reduced.g11;
    m.covolume_sq_ = gram.det();

    const Arithmetization arith = arithmetize(gram);
    m.s_ = arith.s;
    m.form_ = arith.form;
    const Arithmetization arith_red = arithmetize(m.reduction_.reduced);
    if (arith_red.s != m.s_) throw internal_error("scale changed under reduction");
    m.form_reduced_ = arith_red.form;

    // Obtuse superbasis: flip the second reduced vector so the off-diagonal
    // entry is <= 0, making {0, w1, w1 + w2} a Delaunay triangle with squared
    // sides g11, g22, g11 + g22 - 2|g12|.
    const GramMatrix& red = m.reduction_.reduced;
    Unimodular basis = m.reduction_.change;
    Rat r12 = red.g12;
    if (r12 > 0) {
        basis = basis.mul({1, 0, 0, -1});
        r12 = -r12;
    }
    const Rat A = red.g11, B = red.g22, C = red.g11 + red.g22 - 2 * boost::multiprecision::abs(red.g12);
    m.mu_sq_ = circumradius_sq(A, B, C);

    // Circumcenter of {0, w1, w1 + w2} in the superbasis coordinates:
    //   2(alpha A + beta r) = A
    //   2(alpha (A + r) + beta (r + B)) = A + 2r + B
    const Rat det2 = 2 * (A * (r12 + B) - r12 * (A + r12));
    const Rat rhs1 = A;
    const Rat rhs2 = A + 2 * r12 + B;
    const Rat alpha = (rhs1 * (r12 + B) - rhs2 * r12) / det2;
    const Rat beta = (rhs2 * A - rhs1 * (A + r12)) / det2;
    m.deep_hole_ = basis.apply(Vec2Q{alpha, beta});
    m.edge_midpoint_ = basis.apply(Vec2Q{Rat(1, 2), Rat(0)});

    // Exact sanity: the deep hole realises the covering radius.
    if (gram.eval(m.deep_hole_) != m.mu_sq_) {
        throw internal_error("deep hole does not realise covering radius");
    }
    return m;
}

LatticeModel LatticeModel::from_basis(const Vec2Q& v1, const Vec2Q& v2, std::string label) {
    const GramMatrix g{
        v1.x * v1.x + v1.y * v1.y,
        v1.x * v2.x + v1.y * v2.y,
        v2.x * v2.x + v2.y * v2.y,
    };
    return from_gram(g, std::move(label));
}

bool LatticeModel::is_builtin_label(std::string_view label) {
    return label == "Z2" || label == "hex" || label == "hex-unimodular";
}

LatticeModel LatticeModel::builtin(std::string_view label) {
    if (label == "Z2") {
        return from_gram({Rat(1), Rat(0), Rat(1)}, "Z2");
    }
    if (label == "hex" || label == "hex-unimodular") {
        // Unit-edge triangular lattice; the unimodular variant shares the same
        // integral data and differs only in the reported normalisation.
        return from_gram({Rat(1), Rat(1, 2), Rat(1)}, std::string(label));
    }
    throw precondition_error("unknown builtin lattice label: " + std::string(label));
}

double LatticeModel::covolume() const { return SqrtRat{covolume_sq_}.value(); }
double LatticeModel::lambda1() const { return SqrtRat{lambda1_sq_}.value(); }
double LatticeModel::covering_radius() const { return SqrtRat{mu_sq_}.value(); }

SqrtRat LatticeModel::scale_unimodular() const {
    return {s_ * s_ / covolume_sq_};
}
SqrtRat LatticeModel::lambda1_sq_unimodular() const {
    return {lambda1_sq_ * lambda1_sq_ / covolume_sq_};
}
SqrtRat LatticeModel::mu_sq_unimodular() const {
    return {mu_sq_ * mu_sq_ / covolume_sq_};
}

SStarValue s_star(const LatticeModel& model, double c_estimate) {
    if (!(c_estimate > 0)) throw precondition_error("s_star: density constant must be positive");
    SStarValue v;
    v.s = model.scale();
    v.covolume_sq = model.covolume_sq();
    v.covolume = model.covolume();
    v.c_used = c_estimate;
    v.value = rat_d(model.scale()) / (v.covolume * c_estimate);
    return v;
}

} // namespace distlat
