#pragma once

#include "distlat/rational.hpp"

#include <memory>
#include <optional>
#include <string>

namespace distlat {

// Symmetric positive definite 2x2 matrix of exact rationals; the inner
// product matrix of a planar lattice basis.
struct GramMatrix {
    Rat g11, g12, g22;

    Rat det() const { return g11 * g22 - g12 * g12; }
    bool is_positive_definite() const { return g11 > 0 && det() > 0; }
    void validate() const;

    // Quadratic form value <u,u> for coefficient vector u.
    Rat eval(const Vec2Q& u) const;
    Rat eval(Vec2I u) const { return eval(to_vec2q(u)); }
    // Inner product <u,v>.
    Rat pairing(const Vec2Q& u, const Vec2Q& v) const;

    friend bool operator==(const GramMatrix&, const GramMatrix&) = default;
};

// Primitive integral positive definite binary quadratic form
// F(x, y) = a x^2 + b x y + c y^2 with a > 0, gcd(a, b, c) = 1.
struct QuadForm {
    Int a = 1, b = 0, c = 1;

    void validate() const;
    i128 disc() const;                       // 4ac - b^2 > 0
    i128 eval_i128(i128 x, i128 y) const { return a * x * x + b * x * y + c * y * y; }
    Int eval(Int x, Int y) const;            // overflow-checked
    QuadForm reduced() const;                // Lagrange-Gauss reduced equivalent

    friend bool operator==(const QuadForm&, const QuadForm&) = default;
    std::string str() const;
};

// Integer 2x2 matrix with determinant +-1; columns are the coordinates of a
// new basis in terms of the old one.
struct Unimodular {
    Int m11 = 1, m12 = 0, m21 = 0, m22 = 1;

    Int det() const { return m11 * m22 - m12 * m21; }
    Vec2I apply(Vec2I u) const { return {m11 * u.x + m12 * u.y, m21 * u.x + m22 * u.y}; }
    Vec2Q apply(const Vec2Q& u) const {
        return {Rat(m11) * u.x + Rat(m12) * u.y, Rat(m21) * u.x + Rat(m22) * u.y};
    }
    Unimodular mul(const Unimodular& o) const {
        return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
                m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
    }
    Unimodular inverse() const;

    friend bool operator==(const Unimodular&, const Unimodular&) = default;
};

struct ReductionResult {
    Unimodular change;    // reduced basis columns in input-basis coordinates
    GramMatrix reduced;   // satisfies 2|g12| <= g11 <= g22
};

// Lagrange-Gauss reduction of a positive definite Gram matrix.  The change of
// basis always has determinant +1; boundary ties (2|g12| = g11, or g11 = g22)
// are normalised toward g12 >= 0 where a determinant-preserving move allows it.
ReductionResult gauss_reduce(const GramMatrix& gram);

// Q(u) = s * F(u) with F primitive integral and s a positive rational scale.
struct Arithmetization {
    Rat s;
    QuadForm form;
};

// Split a rational quadratic form into scale times primitive integral form.
// Always succeeds for rational Gram input.
Arithmetization arithmetize(const GramMatrix& gram);

// Nonnegative real carried by its exact rational square; used wherever a
// derived quantity (covolume, rescaled scale factor) is a square root.
struct SqrtRat {
    Rat sq;
    double value() const;
};

// A planar lattice presented by a rational Gram matrix, with every derived
// constant the rest of the library needs precomputed exactly:
//   - Lagrange-Gauss reduced basis and lambda_1^2 (shortest vector norm)
//   - covolume^2 = det(Gram)
//   - covering radius^2 via the circumradius of the obtuse-superbasis
//     Delaunay triangle with squared sides g11, g22, g11 + g22 - 2|g12|
//   - arithmetization Q = s * F and the reduced equivalent of F
//   - a deep hole (circumcenter) and a Delaunay edge midpoint, in input
//     basis coordinates.
class LatticeModel {
public:
    static LatticeModel from_gram(GramMatrix gram, std::string label = "");
    static LatticeModel from_basis(const Vec2Q& v1, const Vec2Q& v2, std::string label = "");
    // "Z2", "hex", "hex-unimodular" (case-sensitive labels).
    static LatticeModel builtin(std::string_view label);
    static bool is_builtin_label(std::string_view label);

    const GramMatrix& gram() const { return gram_; }
    const ReductionResult& reduction() const { return reduction_; }
    const std::string& label() const { return label_; }

    const Rat& lambda1_sq() const { return lambda1_sq_; }
    const Rat& covolume_sq() const { return covolume_sq_; }
    const Rat& covering_radius_sq() const { return mu_sq_; }
    double covolume() const;
    double lambda1() const;
    double covering_radius() const;

    const Rat& scale() const { return s_; }            // s with Q = s * F
    const QuadForm& form() const { return form_; }     // in input coordinates
    const QuadForm& form_reduced() const { return form_reduced_; }

    const Vec2Q& deep_hole() const { return deep_hole_; }
    const Vec2Q& edge_midpoint() const { return edge_midpoint_; }

    // Exact evaluation helpers.
    Rat q_of(Vec2I u) const { return s_ * Rat(form_.eval(u.x, u.y)); }
    Int key_of(Vec2I u) const { return form_.eval(u.x, u.y); }

    // Quantities after rescaling the lattice to covolume 1.  The rescale
    // factor r satisfies r^2 = 1/covolume, so squares of rescaled values stay
    // rational and are reported exactly.
    SqrtRat scale_unimodular() const;          // (s * r^2), via its square
    SqrtRat lambda1_sq_unimodular() const;     // (lambda1^2 * r^2), via its square
    SqrtRat mu_sq_unimodular() const;          // (mu^2 * r^2), via its square

private:
    LatticeModel() = default;

    GramMatrix gram_;
    ReductionResult reduction_;
    std::string label_;
    Rat lambda1_sq_, covolume_sq_, mu_sq_, s_;
    QuadForm form_, form_reduced_;
    Vec2Q deep_hole_, edge_midpoint_;
};

using LatticePtr = std::shared_ptr<const LatticeModel>;

// Scale-invariant lattice constant S* = s / (covolume * C), where C is an
// empirical representation-count density for the lattice's form.  Both window
// density predictions derived from it are reported by callers.
struct SStarValue {
    double value = 0.0;
    double c_used = 0.0;       // density constant the caller supplied
    Rat s;                     // exact scale in the as-given normalisation
    Rat covolume_sq;
    double covolume = 0.0;
};

SStarValue s_star(const LatticeModel& model, double c_estimate);

} // namespace distlat
