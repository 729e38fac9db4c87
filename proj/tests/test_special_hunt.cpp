#include "jigsaw/errors.hpp"
#include "jigsaw/special_hunt.hpp"

#include <doctest.h>

#include <numeric>

using namespace jigsaw;

namespace {

// M x == x, computed as (a x + b) == x (c x + d).
bool fixes(const ProjectiveMatrix& m, const Rational& x)
{
    return Rational(m.a()) * x + Rational(m.b()) == x * (Rational(m.c()) * x + Rational(m.d()));
}

Rational scale_free_trace_square(const ProjectiveMatrix& m)
{
    return Rational(Integer((m.a() + m.d()) * (m.a() + m.d())), m.a() * m.d() - m.b() * m.c());
}

}  // namespace

TEST_CASE("class 8k: fixed points -4k and 4k-2")
{
    for (long k = 1; k <= 10; ++k) {
        const long n = 8 * k;
        CAPTURE(n);
        const auto g = weierstrass_group(TileType(n));
        const auto c = theorem2_certificate(n);
        CHECK(verify_certificate(c, g).ok);
        CHECK(c.matrix == evaluate(c.word, g.generators));
        CHECK(c.fixed_points.first == Rational(-4 * k));
        CHECK(c.fixed_points.second == Rational(4 * k - 2));
        CHECK(fixes(c.matrix, Rational(-4 * k)));
        CHECK(fixes(c.matrix, Rational(4 * k - 2)));
        const Rational t = Rational(4 * k) + Rational(Integer(1), Integer(4 * k));
        CHECK(scale_free_trace_square(c.matrix) == t * t);
    }
}

TEST_CASE("class 8k+2: fixed points 2/(8k+1) and -(8k+2)/(4k+3)")
{
    for (long k = 1; k <= 10; ++k) {
        const long n = 8 * k + 2;
        CAPTURE(n);
        const auto g = weierstrass_group(TileType(n));
        const auto c = theorem2_certificate(n);
        CHECK(verify_certificate(c, g).ok);
        const Rational p(Integer(2), Integer(8 * k + 1));
        const Rational q(Integer(-8 * k - 2), Integer(4 * k + 3));
        CHECK(c.fixed_points.first == q);
        CHECK(c.fixed_points.second == p);
        CHECK(fixes(c.matrix, p));
        CHECK(fixes(c.matrix, q));
        CHECK(scale_free_trace_square(c.matrix) > Rational(4));
    }
}

TEST_CASE("class 8k+6: 1 is a fixed point")
{
    for (long k = 0; k <= 10; ++k) {
        const long n = 8 * k + 6;
        CAPTURE(n);
        const auto g = weierstrass_group(TileType(n));
        const auto c = theorem2_certificate(n);
        CHECK(verify_certificate(c, g).ok);
        CHECK((c.fixed_points.first == Rational(1) || c.fixed_points.second == Rational(1)));
        CHECK(fixes(c.matrix, c.fixed_points.first));
        CHECK(fixes(c.matrix, c.fixed_points.second));
        const Rational u = Rational(16 * k * k + 24 * k + 9) + Rational(Integer(1), Integer((3 + 4 * k) * (3 + 4 * k)));
        CHECK(scale_free_trace_square(c.matrix) == u * u);
    }
    // n = 6 by hand: fixed points -3/2 and 1
    const auto c = theorem2_certificate(6);
    CHECK(c.fixed_points.first == Rational::parse("-3/2"));
    CHECK(c.fixed_points.second == Rational(1));
}

TEST_CASE("the family words are the stated syllable patterns")
{
    CHECK(theorem2_word(8).to_alpha() == "cabacaba");
    CHECK(theorem2_word(16).to_alpha() == "cabacbacaba");
    CHECK(theorem2_word(6).to_alpha() == "acababac");
    CHECK(theorem2_word(14).to_alpha() == "acbacababac");
    for (long n : {1, 3, 4, 5, 7, 12, 17, 2}) CHECK_THROWS_AS(theorem2_certificate(n), UnsupportedResidue);
}

TEST_CASE("perturbed certificates fail verification")
{
    const auto g = weierstrass_group(TileType(8));
    auto c = theorem2_certificate(8);
    auto moved = c;
    moved.fixed_points.second += Rational(1);
    CHECK_FALSE(verify_certificate(moved, g).ok);
    auto other_word = c;
    other_word.word = other_word.word * Word{1, 0};
    CHECK_FALSE(verify_certificate(other_word, g).ok);
    auto other_group = c;
    CHECK_FALSE(verify_certificate(other_group, weierstrass_group(TileType(9))).ok);
    auto bad_trace = c;
    bad_trace.trace_squared += Rational(1);
    CHECK_FALSE(verify_certificate(bad_trace, g).ok);
}

TEST_CASE("make_certificate accepts exactly the special words")
{
    const auto g = weierstrass_group(TileType(3));
    const auto hits = word_scan(g, 8);
    REQUIRE(!hits.empty());
    for (const auto& c : hits) {
        CHECK(verify_certificate(c, g).ok);
        CHECK(fixes(c.matrix, c.fixed_points.first));
        CHECK(fixes(c.matrix, c.fixed_points.second));
    }
    CHECK_FALSE(make_certificate(g, Word{0}).has_value());          // elliptic
    CHECK_FALSE(make_certificate(g, g.translation_word()).has_value());  // parabolic
}

TEST_CASE("W_1 lies in PSL(2,Z) and has no special word")
{
    const auto g = weierstrass_group(TileType(1));
    CHECK(word_scan(g, 10).empty());
    for (const auto& r : g.generators) CHECK(r.det() == 1);
}

TEST_CASE("serial and parallel special scans agree")
{
    const auto g = weierstrass_group(TileType(5));
    const auto a = kernels::special_scan_serial(g.generators, 10);
    const auto b = kernels::special_scan_parallel(g.generators, 10);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].word == b[i].word);
        CHECK(a[i].matrix == b[i].matrix);
    }
}

TEST_CASE("candidates by height: Farey counts")
{
    // reduced p/q in [0, 1) with q <= H: 1 + sum_{q=2}^{H} phi(q)
    auto phi = [](long q) {
        long c = 0;
        for (long p = 1; p <= q; ++p)
            if (std::gcd(p, q) == 1) ++c;
        return c;
    };
    for (long h : {1L, 5L, 17L, 40L}) {
        long expected = 1;
        for (long q = 2; q <= h; ++q) expected += phi(q);
        const auto c = candidates_by_height(Rational(0), Rational(1), h);
        CHECK(static_cast<long>(c.size()) == expected);
        const auto wide = candidates_by_height(Rational(0), Rational(3), h);
        CHECK(static_cast<long>(wide.size()) == 3 * expected);
        for (std::size_t i = 1; i < wide.size(); ++i) {
            const bool ordered = wide[i - 1].den() < wide[i].den() ||
                                 (wide[i - 1].den() == wide[i].den() && wide[i - 1] < wide[i]);
            CHECK(ordered);
        }
    }
}

TEST_CASE("orbit probes")
{
    const auto g = weierstrass_group(TileType(8));
    // -4 is fixed by the family element, so its walk closes up
    const auto special = orbit_probe(g, Rational(-4), 4000);
    REQUIRE(std::holds_alternative<SpecialCertificate>(special));
    const auto& c = std::get<SpecialCertificate>(special);
    CHECK(verify_certificate(c, g).ok);
    CHECK(fixes(c.matrix, Rational(-4)));

    // 9 = -1 + l is a translate of a jigsaw vertex
    const auto cusp = orbit_probe(g, Rational(9), 4000);
    REQUIRE(std::holds_alternative<CuspWitness>(cusp));
    CHECK(mobius_apply(evaluate(std::get<CuspWitness>(cusp).word, g.generators), Rational(9)).is_infinity());

    const auto w4 = weierstrass_group(TileType(4));
    for (const auto& x : candidates_by_height(Rational(0), Rational(6), 12)) {
        const auto r = orbit_probe(w4, x, 4000);
        REQUIRE(std::holds_alternative<CuspWitness>(r));
        CHECK(mobius_apply(evaluate(std::get<CuspWitness>(r).word, w4.generators), x).is_infinity());
    }
}

TEST_CASE("hunt verdicts on small groups")
{
    Budgets b;
    b.max_word_length = 10;
    b.max_height = 20;
    const auto w3 = hunt(weierstrass_group(TileType(3)), b);
    REQUIRE(std::holds_alternative<ContainsSpecial>(w3.verdict));
    CHECK(verify_certificate(std::get<ContainsSpecial>(w3.verdict).certificate, weierstrass_group(TileType(3))).ok);

    const auto w6 = hunt(weierstrass_group(TileType(6)), b);
    REQUIRE(std::holds_alternative<ContainsSpecial>(w6.verdict));
    CHECK(std::get<ContainsSpecial>(w6.verdict).stage == "family");

    const auto w2 = hunt(weierstrass_group(TileType(2)), b);
    CHECK(std::holds_alternative<CuspSetFull>(w2.verdict));
}

TEST_CASE("chunked probing gives the same verdict as a single pass")
{
    Budgets b;
    b.max_word_length = 4;
    b.max_height = 12;
    const auto g = weierstrass_group(TileType(7));
    const auto whole = find_special(g, b);
    std::vector<std::size_t> marks;
    HuntProgress p;
    p.chunk = 5;
    p.on_chunk = [&](std::size_t next) { marks.push_back(next); };
    const auto chunked = find_special(g, b, nullptr, &p);
    REQUIRE(whole.has_value() == chunked.has_value());
    if (whole) CHECK(whole->certificate.word == chunked->certificate.word);
    for (std::size_t i = 1; i < marks.size(); ++i) CHECK(marks[i] > marks[i - 1]);
}
