#pragma once

#include "jigsaw/rational.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace jigsaw {

/// A nonsingular 2x2 integer matrix taken up to scalars: an element of
/// PGL(2,Q). Entries are primitive (gcd 1), the determinant is positive and
/// the first nonzero entry of (a, b, c, d) is positive, so projective
/// equality is plain entry-wise equality.
class ProjectiveMatrix {
public:
    /// Identity.
    ProjectiveMatrix() : a_(1), b_(0), c_(0), d_(1) {}

    /// Normalizes arbitrary integer entries. Throws SingularMatrix when
    /// ad - bc = 0 and NegativeDeterminant when ad - bc < 0.
    static ProjectiveMatrix normalize(Integer a, Integer b, Integer c, Integer d);

    static ProjectiveMatrix identity() { return {}; }
    static ProjectiveMatrix translation(const Integer& t);

    const Integer& a() const { return a_; }
    const Integer& b() const { return b_; }
    const Integer& c() const { return c_; }
    const Integer& d() const { return d_; }

    Integer det() const { return a_ * d_ - b_ * c_; }
    Integer trace() const { return a_ + d_; }
    bool is_identity() const { return b_ == 0 && c_ == 0 && a_ == d_; }

    /// Scale-invariant squared trace of the determinant-one representative.
    Rational trace_squared_over_det() const;

    friend bool operator==(const ProjectiveMatrix&, const ProjectiveMatrix&) = default;

    /// "[[a,b],[c,d]]".
    std::string to_string() const;
    static ProjectiveMatrix parse(std::string_view text);

private:
    ProjectiveMatrix(Integer a, Integer b, Integer c, Integer d)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

    Integer a_, b_, c_, d_;
};

struct ProjectiveMatrixHash {
    std::size_t operator()(const ProjectiveMatrix& m) const;
};

ProjectiveMatrix compose(const ProjectiveMatrix& m1, const ProjectiveMatrix& m2);
ProjectiveMatrix inverse(const ProjectiveMatrix& m);

/// Fractional linear action, exact. Poles map to Infinity and Infinity maps
/// to a/c (or Infinity when c = 0).
ExtendedRational mobius_apply(const ProjectiveMatrix& m, const ExtendedRational& x);

enum class IsometryClass { Elliptic, Parabolic, Hyperbolic, Identity };

std::string to_string(IsometryClass k);

/// Compares (a+d)^2 with 4 det.
IsometryClass classify(const ProjectiveMatrix& m);

/// (a+d)^2 - 4 det of the stored representative.
Integer discriminant(const ProjectiveMatrix& m);

struct TwoRational {
    ExtendedRational first;   // smaller root; Infinity always last
    ExtendedRational second;
};
struct OneRational {
    ExtendedRational point;
};
struct IrrationalPair {
    Rational discriminant;
};
struct NoneReal {};

using FixedPointResult = std::variant<TwoRational, OneRational, IrrationalPair, NoneReal>;

/// Boundary fixed points. Throws IdentityMatrix for the identity.
FixedPointResult fixed_points(const ProjectiveMatrix& m);

/// The pi-rotation about the hyperbolic point (x, y) given y^2 > 0. Throws
/// NonPositiveHeight otherwise.
ProjectiveMatrix rotation_about(const Rational& x, const Rational& y_squared);

/// Inverse of rotation_about for trace-zero matrices: the rotation centre as
/// (x, y^2).
struct RotationCentre {
    Rational x;
    Rational y_squared;
};
RotationCentre rotation_centre(const ProjectiveMatrix& m);

}  // namespace jigsaw
