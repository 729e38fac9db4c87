#include "jigsaw/errors.hpp"
#include "jigsaw/tiling.hpp"

#include <doctest.h>

#include <algorithm>

using namespace jigsaw;

TEST_CASE("base tiles are balanced")
{
    for (long n = 1; n <= 50; ++n) {
        CAPTURE(n);
        CHECK(balance_check(base_tile(TileType(n))));
    }
    CHECK_THROWS_AS(TileType(0), InvalidArgument);
}

TEST_CASE("side labels of a tile are 1, n and 1/n")
{
    for (long n = 1; n <= 12; ++n) {
        const Tile t = base_tile(TileType(n));
        std::vector<Rational> labels;
        for (const auto& s : t.sides) labels.push_back(s.type.value());
        std::sort(labels.begin(), labels.end());
        std::vector<Rational> expected{Rational(1), Rational(n), Rational(Integer(1), Integer(n))};
        std::sort(expected.begin(), expected.end());
        CHECK(labels == expected);
        for (const auto& s : t.sides) {
            CHECK(s.point.y_squared > Rational(0));
            CHECK(mobius_apply(s.point.rotation, s.from) == s.to);
        }
    }
}

TEST_CASE("Weierstrass generators and translation")
{
    for (long n = 1; n <= 30; ++n) {
        const auto g = weierstrass_group(TileType(n));
        REQUIRE(g.rank() == 3);
        CHECK(g.generators[0] == ProjectiveMatrix::normalize(1, 2, -1, -1));
        CHECK(g.generators[1] == ProjectiveMatrix::normalize(n, n, -n - 1, -n));
        CHECK(g.generators[2] == ProjectiveMatrix::normalize(0, n, -1, 0));
        CHECK(g.fundamental_length == n + 2);
        CHECK(compose(compose(g.generators[2], g.generators[1]), g.generators[0]) ==
              ProjectiveMatrix::translation(n + 2));
        CHECK(evaluate(g.translation_word(), g.generators) == g.translation());
    }
}

TEST_CASE("fan jigsaws have fundamental length 3m + 6n")
{
    for (long m = 0; m <= 8; ++m) {
        for (long n = 1; n <= 8; ++n) {
            CAPTURE(m);
            CAPTURE(n);
            const auto g = fan_jigsaw_group(m, n);
            CHECK(g.jigsaw.tiles.size() == static_cast<std::size_t>(m + n));
            CHECK(g.rank() == static_cast<std::size_t>(m + n + 2));
            CHECK(g.fundamental_length == 3 * m + 6 * n);
            CHECK(fundamental_length(g) == 3 * m + 6 * n);
            for (const auto& t : g.jigsaw.tiles) {
                bool has_inf = false;
                for (const auto& v : t.vertices) has_inf = has_inf || v.is_infinity();
                CHECK(has_inf);
            }
        }
    }
    CHECK_THROWS_AS(fan_jigsaw_group(0, 0), EmptyJigsaw);
}

TEST_CASE("glued sides carry matching labels")
{
    for (long m = 0; m <= 4; ++m) {
        for (long n = 1; n <= 4; ++n) {
            const auto j = assemble_fan_jigsaw(m, n);
            for (std::size_t t = 0; t < j.tiles.size(); ++t) {
                for (int s = 0; s < 3; ++s) {
                    const auto& link = j.links[t][s];
                    if (link.exterior) continue;
                    const auto& other = j.tiles[link.neighbour_tile].sides[link.neighbour_side];
                    CHECK(j.tiles[t].sides[s].type == other.type);
                    CHECK(j.tiles[t].sides[s].point.x == other.point.x);
                    CHECK(j.tiles[t].sides[s].point.y_squared == other.point.y_squared);
                }
            }
        }
    }
}

TEST_CASE("J m 1 over [0, 6]")
{
    // Delta_1 at (inf, -1, 0), so the tessellation has tiles (0,1), (1,5), (5,6).
    for (long m = 1; m <= 2; ++m) {
        const auto tiles = enumerate_vertical_tiles(fan_jigsaw_group(m, 1), Rational(0), Rational(6));
        REQUIRE(tiles.size() == 3);
        CHECK(tiles[0].left_vertex == Rational(0));
        CHECK(tiles[0].width == 1);
        CHECK(tiles[1].left_vertex == Rational(1));
        CHECK(tiles[1].width == 4);
        CHECK(tiles[2].left_vertex == Rational(5));
        CHECK(tiles[2].width == 1);
    }
}

TEST_CASE("every vertical tile matches an admissible configuration")
{
    for (long m = 0; m <= 4; ++m) {
        for (long n = 1; n <= 4; ++n) {
            const auto g = fan_jigsaw_group(m, n);
            const Rational len(g.fundamental_length);
            const auto tiles = enumerate_vertical_tiles(g, -len, len * Rational(2));
            REQUIRE(!tiles.empty());
            for (std::size_t i = 0; i < tiles.size(); ++i) {
                const auto& t = tiles[i];
                CAPTURE(g.id());
                CAPTURE(t.left_vertex.to_string());
                CHECK(vertical_configuration(t).has_value());
                const long type = t.tile_type.value();
                CHECK((type == 1 || type == 4));
                CHECK((t.width == 1 || t.width == 4));
                if (type == 1) CHECK(t.width == 1);
                // the tile really is element(jigsaw tile)
                const auto& src = g.jigsaw.tiles[t.jigsaw_tile];
                const auto image = place_tile(src.tile_type, compose(t.element, src.placement));
                bool left = false, right = false;
                for (const auto& v : image.vertices) {
                    left = left || v == ExtendedRational(t.left_vertex);
                    right = right || v == ExtendedRational(t.right_vertex());
                }
                CHECK(left);
                CHECK(right);
                CHECK(evaluate(t.element_word, g.generators) == t.element);
                if (i + 1 < tiles.size()) CHECK(tiles[i + 1].left_vertex == t.right_vertex());
            }
        }
    }
}

TEST_CASE("tangency period equals the fundamental length")
{
    for (long m = 1; m <= 5; ++m) {
        const auto g = fan_jigsaw_group(m, 1);
        CHECK(tangency_period(g) == Rational(g.fundamental_length));
    }
    for (long n = 2; n <= 5; ++n) {
        const auto g = fan_jigsaw_group(1, n);
        CHECK(tangency_period(g) == Rational(g.fundamental_length));
    }
    // A fingerprint that repeats with a shorter period.
    TangencyFingerprint fp{Rational(0), Rational(12), {Rational(1), Rational(4), Rational(7), Rational(10)}};
    CHECK(tangency_period(fp, Integer(6)) == Rational(3));
}

TEST_CASE("tangency fingerprint is invariant under the translation")
{
    const auto g = fan_jigsaw_group(2, 3);
    const auto fp = tangency_fingerprint(g);
    const Rational len(g.fundamental_length);
    for (const auto& x : fp.points) {
        if (x + len < fp.window_hi) {
            CHECK(std::find(fp.points.begin(), fp.points.end(), x + len) != fp.points.end());
        }
    }
}

TEST_CASE("translated groups and group specs")
{
    const auto g = fan_jigsaw_group(1, 1);
    const auto h = translated_group(g, Integer(-1));
    const auto shift = ProjectiveMatrix::translation(-1);
    for (std::size_t i = 0; i < g.rank(); ++i) {
        CHECK(h.generators[i] == compose(compose(shift, g.generators[i]), inverse(shift)));
    }
    CHECK(h.fundamental_length == g.fundamental_length);
    CHECK(parse_group_spec("J 1 1 shift -1").generators == h.generators);
    CHECK(parse_group_spec("W 7").generators == weierstrass_group(TileType(7)).generators);
    CHECK(parse_group_spec("  J 2   3 ").id() == fan_jigsaw_group(2, 3).id());
    CHECK_THROWS_AS(parse_group_spec("Q 3"), ParseError);
    CHECK_THROWS_AS(parse_group_spec("W"), ParseError);
    CHECK_THROWS_AS(parse_group_spec("W 0"), ParseError);
    CHECK_THROWS_AS(parse_group_spec("J 1 1 shift"), ParseError);
}
