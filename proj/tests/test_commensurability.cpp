#include "jigsaw/commensurability.hpp"
#include "jigsaw/errors.hpp"
#include "jigsaw/serialize.hpp"

#include <doctest.h>

#include <random>

using namespace jigsaw;

TEST_CASE("rotation pair trace square matches the product of the two rotations")
{
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> num(-40, 40), den(1, 12);
    for (int i = 0; i < 300; ++i) {
        const Rational x1(Integer(num(rng)), Integer(den(rng))), x2(Integer(num(rng)), Integer(den(rng)));
        const Rational s1(Integer(std::abs(num(rng)) + 1), Integer(den(rng)));
        const Rational s2(Integer(std::abs(num(rng)) + 1), Integer(den(rng)));
        const auto p = MarkedPoint::at(x1, s1), q = MarkedPoint::at(x2, s2);
        const auto m = compose(p.rotation, q.rotation);
        CHECK(rotation_pair_trace_square(p, q) == m.trace_squared_over_det());
        const Rational d = x1 - x2;
        const Rational expected = (d * d + s1 + s2) * (d * d + s1 + s2) / (s1 * s2);
        CHECK(rotation_pair_trace_square(p, q) == expected);
    }
}

TEST_CASE("fan jigsaw groups have length-two witnesses")
{
    for (long m = 1; m <= 4; ++m) {
        for (long n = 1; n <= 4; ++n) {
            const auto g = fan_jigsaw_group(m, n);
            CAPTURE(g.id());
            const auto w = arithmeticity_witness(g, 8);
            REQUIRE(w.has_value());
            CHECK(w->word.size() == 2);
            CHECK(!w->trace_squared_over_det.is_integer());
            CHECK(w->matrix == evaluate(w->word, g.generators));
            CHECK(w->trace_squared_over_det == w->matrix.trace_squared_over_det());
            CHECK(verify_witness(*w, g).ok);
        }
    }
    // the two vertical exterior sides of J 1 1 give 81/4
    const auto w = arithmeticity_witness(fan_jigsaw_group(1, 1), 8);
    REQUIRE(w.has_value());
    CHECK(w->construction == "vertical sides");
    CHECK(w->trace_squared_over_det == Rational::parse("81/4"));
}

TEST_CASE("groups inside PSL(2,Z) have no witness")
{
    CHECK_FALSE(arithmeticity_witness(weierstrass_group(TileType(1)), 8).has_value());
}

TEST_CASE("witness verification rejects bad witnesses")
{
    const auto g = fan_jigsaw_group(2, 1);
    const auto w = *arithmeticity_witness(g, 8);
    auto odd = w;
    odd.word = Word{0};
    odd.matrix = g.generators[0];
    odd.trace_squared_over_det = odd.matrix.trace_squared_over_det();
    CHECK_FALSE(verify_witness(odd, g).ok);
    auto empty = w;
    empty.word = Word{};
    empty.matrix = ProjectiveMatrix::identity();
    empty.trace_squared_over_det = Rational(4);
    CHECK_FALSE(verify_witness(empty, g).ok);
    auto off = w;
    off.trace_squared_over_det += Rational(1);
    CHECK_FALSE(verify_witness(off, g).ok);
}

TEST_CASE("verdicts")
{
    Budgets b;
    b.max_word_length = 10;
    b.max_height = 20;
    const auto j11 = fan_jigsaw_group(1, 1);
    const auto v = verdict(j11, b);
    CHECK(verdict_name(v) == "pseudomodular");
    CHECK(verify_verdict(v, j11).ok);

    const auto w8 = weierstrass_group(TileType(8));
    const auto v8 = verdict(w8, b);
    CHECK(verdict_name(v8) == "not pseudomodular");
    CHECK(verify_verdict(v8, w8).ok);
    CHECK_FALSE(verify_verdict(v8, weierstrass_group(TileType(16))).ok);

    const auto w2 = weierstrass_group(TileType(2));
    const auto v2 = verdict(w2, b);
    CHECK(verdict_name(v2) == "cusp set full");
    CHECK(verify_verdict(v2, w2).ok);
}

TEST_CASE("JSON round trips are lossless")
{
    for (long n : {6L, 8L, 10L, 16L, 26L}) {
        const auto c = theorem2_certificate(n);
        const auto j = to_json(c);
        const auto back = certificate_from_json(j);
        CHECK(back.word == c.word);
        CHECK(back.matrix == c.matrix);
        CHECK(back.fixed_points == c.fixed_points);
        CHECK(back.trace_squared == c.trace_squared);
        CHECK(back.det == c.det);
        CHECK(back.group == c.group);
        CHECK(to_json(back) == j);
        CHECK(verify_document(Json::parse(j.dump())).ok);
    }

    const auto g = fan_jigsaw_group(1, 2);
    const auto p = std::get<CoverProof>(cover_fundamental_interval(g));
    const auto pj = to_json(p);
    const auto pb = cover_from_json(Json::parse(pj.dump()));
    CHECK(to_json(pb) == pj);
    CHECK(verify_cover(pb, g).ok);

    const auto w = *arithmeticity_witness(g, 8);
    CHECK(to_json(witness_from_json(to_json(w))) == to_json(w));

    const auto t = reduce_to_infinity(g, p, Rational::parse("12345/678"));
    CHECK(to_json(descent_from_json(to_json(t))) == to_json(t));

    Budgets b;
    b.max_orbit = 77;
    b.max_height = 9;
    const auto bb = budgets_from_json(to_json(b));
    CHECK(bb.max_orbit == 77);
    CHECK(bb.max_height == 9);

    auto tampered = to_json(theorem2_certificate(8));
    tampered["fixed_points"][0] = "-5";
    CHECK_FALSE(verify_document(tampered).ok);
}
