#include "jigsaw/matrix.hpp"

#include "jigsaw/errors.hpp"

#include <cctype>
#include <vector>

namespace jigsaw {

ProjectiveMatrix ProjectiveMatrix::normalize(Integer a, Integer b, Integer c, Integer d)
{
    const Integer det = a * d - b * c;
    if (det == 0) throw SingularMatrix("singular matrix");
    if (det < 0) throw NegativeDeterminant("negative determinant");

    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    if (g != 1) {
        mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), g.get_mpz_t());
    }
    const Integer& lead = a != 0 ? a : (b != 0 ? b : c);
    if (lead < 0) {
        a = -a;
        b = -b;
        c = -c;
        d = -d;
    }
    return ProjectiveMatrix(std::move(a), std::move(b), std::move(c), std::move(d));
}

ProjectiveMatrix ProjectiveMatrix::translation(const Integer& t)
{
    return ProjectiveMatrix(1, t, 0, 1);
}

Rational ProjectiveMatrix::trace_squared_over_det() const
{
    const Integer t = trace();
    return Rational(t * t, det());
}

std::string ProjectiveMatrix::to_string() const
{
    return "[[" + a_.get_str() + "," + b_.get_str() + "],[" + c_.get_str() + "," + d_.get_str() + "]]";
}

ProjectiveMatrix ProjectiveMatrix::parse(std::string_view text)
{
    std::vector<std::string> tokens;
    std::string cur;
    for (char ch : text) {
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+') {
            cur.push_back(ch);
        } else if (ch == ',' || ch == '[' || ch == ']' || std::isspace(static_cast<unsigned char>(ch))) {
            if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
        } else {
            throw ParseError("unexpected character in matrix '" + std::string(text) + "'");
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    if (tokens.size() != 4) throw ParseError("matrix needs four entries: '" + std::string(text) + "'");
    return normalize(parse_integer(tokens[0]), parse_integer(tokens[1]),
                     parse_integer(tokens[2]), parse_integer(tokens[3]));
}

std::size_t ProjectiveMatrixHash::operator()(const ProjectiveMatrix& m) const
{
    std::size_t h = hash_integer(m.a());
    h = h * 1000003u ^ hash_integer(m.b());
    h = h * 1000003u ^ hash_integer(m.c());
    h = h * 1000003u ^ hash_integer(m.d());
    return h;
}

ProjectiveMatrix compose(const ProjectiveMatrix& m1, const ProjectiveMatrix& m2)
{
    return ProjectiveMatrix::normalize(m1.a() * m2.a() + m1.b() * m2.c(),
                                       m1.a() * m2.b() + m1.b() * m2.d(),
                                       m1.c() * m2.a() + m1.d() * m2.c(),
                                       m1.c() * m2.b() + m1.d() * m2.d());
}

ProjectiveMatrix inverse(const ProjectiveMatrix& m)
{
    return ProjectiveMatrix::normalize(m.d(), -m.b(), -m.c(), m.a());
}

ExtendedRational mobius_apply(const ProjectiveMatrix& m, const ExtendedRational& x)
{
    if (x.is_infinity()) {
        if (m.c() == 0) return ExtendedRational::infinity();
        return Rational(m.a(), m.c());
    }
    const Integer& p = x.value().num();
    const Integer& q = x.value().den();
    Integer den = m.c() * p + m.d() * q;
    if (den == 0) return ExtendedRational::infinity();
    return Rational(m.a() * p + m.b() * q, den);
}

std::string to_string(IsometryClass k)
{
    switch (k) {
    case IsometryClass::Elliptic: return "elliptic";
    case IsometryClass::Parabolic: return "parabolic";
    case IsometryClass::Hyperbolic: return "hyperbolic";
    case IsometryClass::Identity: return "identity";
    }
    return "?";
}

Integer discriminant(const ProjectiveMatrix& m)
{
    const Integer t = m.trace();
    return t * t - 4 * m.det();
}

IsometryClass classify(const ProjectiveMatrix& m)
{
    if (m.is_identity()) return IsometryClass::Identity;
    const int s = sgn(discriminant(m));
    if (s > 0) return IsometryClass::Hyperbolic;
    if (s == 0) return IsometryClass::Parabolic;
    return IsometryClass::Elliptic;
}

FixedPointResult fixed_points(const ProjectiveMatrix& m)
{
    if (m.is_identity()) throw IdentityMatrix("identity fixes every point");
    const Integer& a = m.a();
    const Integer& b = m.b();
    const Integer& c = m.c();
    const Integer& d = m.d();
    if (c == 0) {
        if (a == d) return OneRational{ExtendedRational::infinity()};
        return TwoRational{Rational(b, d - a), ExtendedRational::infinity()};
    }
    // c z^2 + (d - a) z - b = 0
    const Integer disc = discriminant(m);
    const int s = sgn(disc);
    if (s < 0) return NoneReal{};
    if (s == 0) return OneRational{Rational(a - d, 2 * c)};
    if (!mpz_perfect_square_p(disc.get_mpz_t())) return IrrationalPair{Rational(disc)};
    Integer root;
    mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
    Rational r1(a - d - root, 2 * c);
    Rational r2(a - d + root, 2 * c);
    if (r2 < r1) std::swap(r1, r2);
    return TwoRational{r1, r2};
}

ProjectiveMatrix rotation_about(const Rational& x, const Rational& y_squared)
{
    if (y_squared.sign() <= 0) throw NonPositiveHeight("rotation centre must lie in the upper half-plane");
    // (x, -(x^2 + y^2); 1, -x) scaled by a common denominator
    const Rational r = x * x + y_squared;
    Integer scale;
    mpz_lcm(scale.get_mpz_t(), x.den().get_mpz_t(), r.den().get_mpz_t());
    const Integer xs = x.num() * (scale / x.den());
    const Integer rs = r.num() * (scale / r.den());
    return ProjectiveMatrix::normalize(xs, -rs, scale, -xs);
}

RotationCentre rotation_centre(const ProjectiveMatrix& m)
{
    if (m.trace() != 0 || m.c() == 0) throw InvalidArgument("not a rotation: " + m.to_string());
    const Integer& c = m.c();
    return {Rational(m.a(), c), Rational(m.det(), c * c)};
}

}  // namespace jigsaw
