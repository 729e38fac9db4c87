#include "jigsaw/errors.hpp"
#include "jigsaw/matrix.hpp"
#include "jigsaw/tiling.hpp"
#include "jigsaw/word.hpp"

#include <doctest.h>

#include <random>

using namespace jigsaw;

namespace {

Integer small(std::mt19937_64& rng, long bound)
{
    std::uniform_int_distribution<long> d(-bound, bound);
    return Integer(d(rng));
}

ProjectiveMatrix random_matrix(std::mt19937_64& rng, long bound = 40)
{
    for (;;) {
        Integer a = small(rng, bound), b = small(rng, bound), c = small(rng, bound), d = small(rng, bound);
        if (a * d - b * c > 0) return ProjectiveMatrix::normalize(a, b, c, d);
    }
}

Rational random_rational(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> den(1, 500);
    return Rational(small(rng, 2000), Integer(den(rng)));
}

// (a x + b) / (c x + d) by hand.
ExtendedRational apply_by_hand(const ProjectiveMatrix& m, const Rational& x)
{
    const Rational den = Rational(m.c()) * x + Rational(m.d());
    if (den == Rational(0)) return ExtendedRational::infinity();
    return (Rational(m.a()) * x + Rational(m.b())) / den;
}

}  // namespace

TEST_CASE("rationals are kept in lowest terms")
{
    CHECK(Rational(Integer(6), Integer(-4)).to_string() == "-3/2");
    CHECK(Rational::parse("10/5").to_string() == "2");
    CHECK(Rational::parse("-7/3").floor() == -3);
    CHECK(Rational::parse("7/3").floor() == 2);
    CHECK(denominator_height(ExtendedRational::infinity()) == 0);
    CHECK(denominator_height(Rational::parse("355/113")) == 113);
    CHECK(ExtendedRational::parse("inf").is_infinity());
    CHECK_THROWS_AS(Rational::parse("1/0"), Error);
    CHECK_THROWS_AS(Rational::parse("x"), ParseError);
}

TEST_CASE("matrix normal form")
{
    const auto m = ProjectiveMatrix::normalize(-4, 6, -2, -8);
    CHECK(m.to_string() == "[[2,-3],[1,4]]");
    CHECK(m.det() == 11);
    CHECK(ProjectiveMatrix::parse("[[-2,3],[-1,-4]]") == m);
    CHECK_THROWS_AS(ProjectiveMatrix::normalize(1, 2, 2, 4), SingularMatrix);
    CHECK_THROWS_AS(ProjectiveMatrix::normalize(0, 1, 1, 0), NegativeDeterminant);
    CHECK_THROWS_AS(ProjectiveMatrix::parse("[[1,2],[3]]"), ParseError);
    CHECK(ProjectiveMatrix::normalize(3, 0, 0, 3).is_identity());
}

TEST_CASE("composition, inverse and action agree with the fractional linear formula")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
        const auto a = random_matrix(rng), b = random_matrix(rng), c = random_matrix(rng);
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
        CHECK(compose(a, inverse(a)).is_identity());
        const Rational x = random_rational(rng);
        CHECK(mobius_apply(a, x) == apply_by_hand(a, x));
        // action is a left action: (ab)(x) = a(b(x))
        const ExtendedRational bx = mobius_apply(b, x);
        CHECK(mobius_apply(compose(a, b), x) == mobius_apply(a, bx));
        CHECK(a.trace_squared_over_det() == Rational(Integer(a.trace() * a.trace()), a.det()));
    }
    CHECK(mobius_apply(ProjectiveMatrix::normalize(2, 1, 3, 4), ExtendedRational::infinity()) ==
          ExtendedRational(Rational::parse("2/3")));
    CHECK(mobius_apply(ProjectiveMatrix::normalize(2, 1, 3, 4), Rational::parse("-4/3")).is_infinity());
}

TEST_CASE("classification by trace against determinant")
{
    CHECK(classify(ProjectiveMatrix::translation(5)) == IsometryClass::Parabolic);
    CHECK(classify(ProjectiveMatrix::normalize(0, -1, 1, 0)) == IsometryClass::Elliptic);
    CHECK(classify(ProjectiveMatrix::normalize(2, 0, 0, 1)) == IsometryClass::Hyperbolic);
    CHECK(classify(ProjectiveMatrix::identity()) == IsometryClass::Identity);
    CHECK(discriminant(ProjectiveMatrix::normalize(2, 0, 0, 1)) == 1);
    CHECK_THROWS_AS(fixed_points(ProjectiveMatrix::identity()), IdentityMatrix);
}

TEST_CASE("fixed points of conjugated diagonal matrices")
{
    // P diag(l, 1) P^-1 fixes the columns p1/q1 and p2/q2 of P.
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const Integer p1 = small(rng, 30), q1 = small(rng, 30), p2 = small(rng, 30), q2 = small(rng, 30);
        const Integer det = p1 * q2 - p2 * q1;
        if (det == 0 || q1 == 0 || q2 == 0) continue;
        const Integer l = 2 + (small(rng, 5) + 5);
        // P diag(l,1) adj(P)
        const Integer a = l * p1 * q2 - p2 * q1, b = -l * p1 * p2 + p2 * p1;
        const Integer c = l * q1 * q2 - q2 * q1, d = -l * q1 * p2 + q2 * p1;
        Integer s = det < 0 ? Integer(-1) : Integer(1);
        const auto m = ProjectiveMatrix::normalize(s * a, s * b, s * c, s * d);
        const auto fp = fixed_points(m);
        const auto* two = std::get_if<TwoRational>(&fp);
        REQUIRE(two != nullptr);
        Rational x1(p1, q1), x2(p2, q2);
        if (x2 < x1) std::swap(x1, x2);
        CHECK(two->first == ExtendedRational(x1));
        CHECK(two->second == ExtendedRational(x2));
    }
    const auto irr = fixed_points(ProjectiveMatrix::normalize(2, 1, 1, 1));
    CHECK(std::holds_alternative<IrrationalPair>(irr));
    const auto par = fixed_points(ProjectiveMatrix::normalize(1, 0, 3, 1));
    REQUIRE(std::holds_alternative<OneRational>(par));
    CHECK(std::get<OneRational>(par).point == ExtendedRational(Rational(0)));
    CHECK(std::holds_alternative<NoneReal>(fixed_points(ProjectiveMatrix::normalize(0, -1, 1, 0))));
}

TEST_CASE("rotations are involutions about their centre")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const Rational x = random_rational(rng);
        Rational s = random_rational(rng);
        s = s * s + Rational::parse("1/7");
        const auto r = rotation_about(x, s);
        CHECK(r.trace() == 0);
        CHECK(compose(r, r).is_identity());
        const auto c = rotation_centre(r);
        CHECK(c.x == x);
        CHECK(c.y_squared == s);
    }
    CHECK_THROWS_AS(rotation_about(Rational(0), Rational(0)), NonPositiveHeight);
    CHECK_THROWS_AS(rotation_about(Rational(0), Rational(-1)), NonPositiveHeight);
}

TEST_CASE("words reduce freely and invert by reversal")
{
    Word w{0, 1, 2};
    w *= Word{2, 1, 3};
    CHECK(w.to_string() == "0.3");
    CHECK(Word::parse("2.1.0").to_alpha() == "cba");
    CHECK(Word::parse_alpha("cba") == Word::parse("2.1.0"));
    CHECK(Word::parse("").empty());
    CHECK(Word::parse("0.1.2").power(-2).to_string() == "2.1.0.2.1.0");
    CHECK(shortlex_less(Word{5}, Word{0, 1}));
    CHECK(shortlex_less(Word{0, 2}, Word{1, 0}));
    CHECK_THROWS_AS(Word::parse("1..2"), ParseError);

    const auto g = weierstrass_group(TileType(5));
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        Word r;
        std::uniform_int_distribution<int> letter(0, 2);
        for (int k = 0; k < 12; ++k) r.push_back(static_cast<Word::Letter>(letter(rng)));
        CHECK(r.is_reduced());
        CHECK(compose(evaluate(r, g.generators), evaluate(r.inverse(), g.generators)).is_identity());
        CHECK(Word::parse(r.to_string()) == r);
    }
}

TEST_CASE("every generator of the tested groups is an involution")
{
    std::vector<JigsawGroup> groups;
    for (long n = 1; n <= 30; ++n) groups.push_back(weierstrass_group(TileType(n)));
    for (long m = 0; m <= 5; ++m)
        for (long n = 1; n <= 5; ++n) groups.push_back(fan_jigsaw_group(m, n));
    groups.push_back(parse_group_spec("J 1 1 shift -1"));
    for (const auto& g : groups) {
        for (const auto& r : g.generators) {
            CHECK(r.trace() == 0);
            CHECK(compose(r, r).is_identity());
        }
    }
}
