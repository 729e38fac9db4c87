#include "jigsaw/tiling.hpp"

#include "jigsaw/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace jigsaw {

namespace {

// Order-3 symmetry of Delta_1: inf -> 0 -> -1 -> inf. Maps base side i to
// side i - 1 (mod 3) and preserves the marked points of Delta_1.
const ProjectiveMatrix& delta1_rotation()
{
    static const ProjectiveMatrix sigma = ProjectiveMatrix::normalize(0, -1, 1, 1);
    return sigma;
}

ProjectiveMatrix conjugate(const ProjectiveMatrix& p, const ProjectiveMatrix& m)
{
    return compose(compose(p, m), inverse(p));
}

bool contains_infinity(const TileSide& s) { return s.from.is_infinity() || s.to.is_infinity(); }

// Index of the side joining Infinity and the finite vertex v.
int vertical_side_towards(const Tile& t, const Rational& v)
{
    for (int i = 0; i < 3; ++i) {
        const TileSide& s = t.sides[static_cast<std::size_t>(i)];
        if (!contains_infinity(s)) continue;
        const ExtendedRational& other = s.from.is_infinity() ? s.to : s.from;
        if (!other.is_infinity() && other.value() == v) return i;
    }
    return -1;
}

int side_between(const Tile& t, const ExtendedRational& u, const ExtendedRational& v)
{
    for (int i = 0; i < 3; ++i) {
        const TileSide& s = t.sides[static_cast<std::size_t>(i)];
        if ((s.from == u && s.to == v) || (s.from == v && s.to == u)) return i;
    }
    return -1;
}

std::pair<Rational, Rational> finite_span(const Tile& t)
{
    std::vector<Rational> finite;
    for (const auto& v : t.vertices) {
        if (!v.is_infinity()) finite.push_back(v.value());
    }
    std::sort(finite.begin(), finite.end());
    return {finite.front(), finite.back()};
}

bool has_infinity(const Tile& t)
{
    return std::any_of(t.vertices.begin(), t.vertices.end(),
                       [](const ExtendedRational& v) { return v.is_infinity(); });
}

// Placement of the tile of type `glued` attached across side `side` of the
// tile (type, placement).
ProjectiveMatrix glue_across(TileType type, ProjectiveMatrix placement, int side, TileType glued)
{
    if (type.value() == 1 && side != 0) {
        // rotate Delta_1 so that the requested side becomes base side 0
        const int k = (3 - side) % 3;
        for (int i = 0; i < k; ++i) placement = compose(placement, delta1_rotation());
        side = 0;
    }
    if (side == 0) return compose(placement, tile_rotations(type)[0]);
    if (glued != type) {
        throw InvalidArgument("sides of type " + SideType::of_n(type.value()).to_string() +
                              " only match tiles of the same type");
    }
    return compose(placement, tile_rotations(type)[side]);
}

}  // namespace

TileType::TileType(long n) : n_(n)
{
    if (n < 1) throw InvalidArgument("tile type must be >= 1");
}

Rational SideType::value() const
{
    switch (kind_) {
    case Kind::One: return 1;
    case Kind::N: return Rational(n_);
    case Kind::OneOverN: return Rational(Integer(1), Integer(n_));
    }
    return 1;
}

std::string SideType::to_string() const { return value().to_string(); }

MarkedPoint MarkedPoint::from_rotation(const ProjectiveMatrix& r)
{
    const RotationCentre c = rotation_centre(r);
    return {c.x, c.y_squared, r};
}

MarkedPoint MarkedPoint::at(const Rational& x, const Rational& y_squared)
{
    return {x, y_squared, rotation_about(x, y_squared)};
}

const ProjectiveMatrix& TileRotations::operator[](int side) const
{
    switch (side) {
    case 0: return one;
    case 1: return one_over_n;
    case 2: return n;
    default: throw InvalidArgument("side index out of range");
    }
}

TileRotations tile_rotations(TileType type)
{
    const long n = type.value();
    return {ProjectiveMatrix::normalize(1, 2, -1, -1),
            ProjectiveMatrix::normalize(n, n, -n - 1, -n),
            ProjectiveMatrix::normalize(0, n, -1, 0)};
}

Tile place_tile(TileType type, const ProjectiveMatrix& placement)
{
    const long n = type.value();
    const TileRotations rot = tile_rotations(type);
    const std::array<ExtendedRational, 3> base{ExtendedRational::infinity(), ExtendedRational(-1),
                                               ExtendedRational(0)};
    const std::array<SideType, 3> types{SideType::one(), SideType::one_over_n(n), SideType::of_n(n)};
    Tile t{type, placement, {}, {}};
    for (std::size_t i = 0; i < 3; ++i) t.vertices[i] = mobius_apply(placement, base[i]);
    for (std::size_t i = 0; i < 3; ++i) {
        const ProjectiveMatrix r = conjugate(placement, rot[static_cast<int>(i)]);
        t.sides[i] = TileSide{t.vertices[i], t.vertices[(i + 1) % 3], types[i], MarkedPoint::from_rotation(r)};
    }
    return t;
}

Tile base_tile(TileType n) { return place_tile(n, ProjectiveMatrix::identity()); }

bool balance_check(const Tile& t)
{
    const ProjectiveMatrix p =
        compose(compose(t.sides[0].point.rotation, t.sides[1].point.rotation), t.sides[2].point.rotation);
    return classify(p) == IsometryClass::Parabolic;
}

namespace {

Jigsaw finish_fan(std::vector<Tile> tiles, std::string name)
{
    std::sort(tiles.begin(), tiles.end(),
              [](const Tile& x, const Tile& y) { return finite_span(x).first < finite_span(y).first; });
    Jigsaw j;
    j.name = std::move(name);
    j.tiles = std::move(tiles);
    j.links.assign(j.tiles.size(), {});
    const std::size_t count = j.tiles.size();

    j.vertices.push_back(ExtendedRational::infinity());
    j.vertices.emplace_back(finite_span(j.tiles.front()).first);
    for (const Tile& t : j.tiles) j.vertices.emplace_back(finite_span(t).second);

    for (std::size_t k = 0; k + 1 < count; ++k) {
        const Rational shared = finite_span(j.tiles[k]).second;
        const int s0 = vertical_side_towards(j.tiles[k], shared);
        const int s1 = vertical_side_towards(j.tiles[k + 1], shared);
        if (s0 < 0 || s1 < 0) throw InvalidArgument("fan tiles do not abut");
        const TileSide& a = j.tiles[k].sides[static_cast<std::size_t>(s0)];
        const TileSide& b = j.tiles[k + 1].sides[static_cast<std::size_t>(s1)];
        if (!(a.type == b.type) || a.point.rotation != b.point.rotation) {
            throw InvalidArgument("glued sides do not match");
        }
        j.links[k][static_cast<std::size_t>(s0)] = SideLink{false, static_cast<int>(k + 1), s1, -1};
        j.links[k + 1][static_cast<std::size_t>(s1)] = SideLink{false, static_cast<int>(k), s0, -1};
    }

    // exterior sides in cyclic order: [inf, v1], bottoms, [v_{N+1}, inf]
    auto add_exterior = [&](std::size_t tile, int side) {
        const int gen = static_cast<int>(j.exterior_marked_points.size());
        j.links[tile][static_cast<std::size_t>(side)] = SideLink{true, -1, -1, gen};
        j.exterior_marked_points.push_back(j.tiles[tile].sides[static_cast<std::size_t>(side)].point);
        j.exterior_sides.emplace_back(static_cast<int>(tile), side);
    };
    add_exterior(0, vertical_side_towards(j.tiles[0], j.vertices[1].value()));
    for (std::size_t k = 0; k < count; ++k) {
        const auto [lo, hi] = finite_span(j.tiles[k]);
        add_exterior(k, side_between(j.tiles[k], lo, hi));
    }
    add_exterior(count - 1, vertical_side_towards(j.tiles[count - 1], j.vertices.back().value()));
    return j;
}

}  // namespace

Jigsaw assemble_fan_jigsaw(long m, long n)
{
    if (m < 0 || n < 0 || (n < 1 && m < 1)) throw EmptyJigsaw("J m n needs m >= 0, n >= 1");
    if (n < 1) throw EmptyJigsaw("J m n needs n >= 1");
    const TileType one(1), four(4);
    std::vector<Tile> tiles;
    tiles.push_back(base_tile(m >= 1 ? one : four));

    auto extend = [&](bool to_right, TileType type) {
        // outermost tile on the requested side
        auto it = std::minmax_element(tiles.begin(), tiles.end(), [](const Tile& x, const Tile& y) {
            return finite_span(x).first < finite_span(y).first;
        });
        const Tile& edge = to_right ? *it.second : *it.first;
        const auto [lo, hi] = finite_span(edge);
        const int side = vertical_side_towards(edge, to_right ? hi : lo);
        const ProjectiveMatrix p = glue_across(edge.tile_type, edge.placement, side, type);
        Tile t = place_tile(type, p);
        if (!has_infinity(t)) throw InvalidArgument("glued tile is not vertical");
        tiles.push_back(std::move(t));
    };
    for (long k = 1; k < m; ++k) extend(false, one);
    for (long k = (m >= 1 ? 0 : 1); k < n; ++k) extend(true, four);

    std::ostringstream name;
    name << "J " << m << ' ' << n;
    return finish_fan(std::move(tiles), name.str());
}

Jigsaw single_tile_jigsaw(TileType n)
{
    return finish_fan({base_tile(n)}, "W " + std::to_string(n.value()));
}

std::vector<ProjectiveMatrix> jigsaw_generators(const Jigsaw& j)
{
    std::vector<ProjectiveMatrix> gens;
    gens.reserve(j.exterior_marked_points.size());
    for (const MarkedPoint& p : j.exterior_marked_points) gens.push_back(p.rotation);
    return gens;
}

namespace {

ProjectiveMatrix ordered_product(const std::vector<ProjectiveMatrix>& gens)
{
    ProjectiveMatrix p;
    for (const ProjectiveMatrix& g : gens) p = compose(g, p);  // rho_{N+1} ... rho_0
    return p;
}

}  // namespace

Integer fundamental_length(const JigsawGroup& g)
{
    const ProjectiveMatrix p = ordered_product(g.generators);
    if (p.c() != 0 || p.a() != p.d() || p.b() == 0) {
        throw NotATranslation("generator product " + p.to_string() + " is not a translation");
    }
    const Rational t(p.b(), p.a());
    if (!t.is_integer()) throw NotATranslation("non-integral translation " + t.to_string());
    return abs(t).num();
}

Word JigsawGroup::translation_word() const
{
    std::vector<Word::Letter> letters;
    for (std::size_t i = generators.size(); i-- > 0;) letters.push_back(static_cast<Word::Letter>(i));
    Word w(std::move(letters));
    const ProjectiveMatrix p = ordered_product(generators);
    return p.b() > 0 ? w : w.inverse();
}

JigsawGroup make_group(Jigsaw j)
{
    JigsawGroup g{std::move(j), {}, 0};
    g.generators = jigsaw_generators(g.jigsaw);
    g.fundamental_length = fundamental_length(g);
    return g;
}

JigsawGroup weierstrass_group(TileType n) { return make_group(single_tile_jigsaw(n)); }

JigsawGroup fan_jigsaw_group(long m, long n) { return make_group(assemble_fan_jigsaw(m, n)); }

JigsawGroup translated_group(const JigsawGroup& g, const Integer& shift)
{
    const ProjectiveMatrix t = ProjectiveMatrix::translation(shift);
    const ProjectiveMatrix t_inv = ProjectiveMatrix::translation(-shift);
    Jigsaw j = g.jigsaw;
    for (Tile& tile : j.tiles) tile = place_tile(tile.tile_type, compose(t, tile.placement));
    for (ExtendedRational& v : j.vertices) v = mobius_apply(t, v);
    for (MarkedPoint& p : j.exterior_marked_points) {
        p = MarkedPoint::from_rotation(compose(compose(t, p.rotation), t_inv));
    }
    if (shift != 0) j.name += " shift " + to_string(shift);
    return make_group(std::move(j));
}

JigsawGroup parse_group_spec(std::string_view spec)
{
    std::istringstream in{std::string(spec)};
    std::string kind;
    in >> kind;
    const auto bad = [&](const std::string& what) {
        return ParseError(what + ", got '" + std::string(spec) + "'");
    };
    std::optional<JigsawGroup> g;
    if (kind == "W" || kind == "w") {
        long n = 0;
        if (!(in >> n) || n < 1) throw bad("expected 'W n' with n >= 1");
        g = weierstrass_group(TileType(n));
    } else if (kind == "J" || kind == "j") {
        long m = -1, n = -1;
        if (!(in >> m >> n)) throw bad("expected 'J m n'");
        g = fan_jigsaw_group(m, n);
    } else {
        throw bad("unknown group spec");
    }
    std::string word;
    if (in >> word) {
        long shift = 0;
        if (word != "shift" || !(in >> shift)) throw bad("expected 'shift k' after the group");
        g = translated_group(*g, shift);
        if (in >> word) throw bad("trailing text in group spec");
    }
    return std::move(*g);
}

// ---------------------------------------------------------------------------
// Vertical tiles

namespace {

struct TilingTile {
    ProjectiveMatrix element;
    Word word;
    int jigsaw_tile;
    Tile tile;
};

TilingTile make_tiling_tile(const JigsawGroup& g, ProjectiveMatrix element, Word word, int jt)
{
    const Tile& base = g.jigsaw.tiles[static_cast<std::size_t>(jt)];
    Tile t = place_tile(base.tile_type, compose(element, base.placement));
    return {std::move(element), std::move(word), jt, std::move(t)};
}

TilingTile neighbour(const JigsawGroup& g, const TilingTile& t, int side)
{
    const SideLink& link = g.jigsaw.links[static_cast<std::size_t>(t.jigsaw_tile)][static_cast<std::size_t>(side)];
    if (!link.exterior) return make_tiling_tile(g, t.element, t.word, link.neighbour_tile);
    Word w = t.word;
    w.push_back(static_cast<Word::Letter>(link.generator));
    return make_tiling_tile(g, compose(t.element, g.generators[static_cast<std::size_t>(link.generator)]),
                            std::move(w), t.jigsaw_tile);
}

VerticalTile to_vertical(const JigsawGroup& g, const TilingTile& t)
{
    const auto [lo, hi] = finite_span(t.tile);
    const Rational w = hi - lo;
    if (!w.is_integer()) throw InvalidArgument("vertical tile of non-integral width");
    const auto side_record = [&](int s) {
        const TileSide& ts = t.tile.sides[static_cast<std::size_t>(s)];
        const bool ext = g.jigsaw.links[static_cast<std::size_t>(t.jigsaw_tile)][static_cast<std::size_t>(s)].exterior;
        return VerticalSide{ts.type, ext, ts.point};
    };
    return VerticalTile{lo,
                        w.num(),
                        t.tile.tile_type,
                        side_record(vertical_side_towards(t.tile, lo)),
                        side_record(side_between(t.tile, lo, hi)),
                        side_record(vertical_side_towards(t.tile, hi)),
                        t.element,
                        t.word,
                        t.jigsaw_tile};
}

}  // namespace

std::vector<VerticalTile> enumerate_vertical_tiles(const JigsawGroup& g, const Rational& x_lo,
                                                   const Rational& x_hi, std::size_t step_budget)
{
    if (!(x_lo < x_hi)) throw InvalidArgument("empty window");
    const Rational ell(g.fundamental_length);
    const Rational v1 = g.jigsaw.vertices[1].value();
    if (step_budget == 0) {
        const Integer periods = ((x_hi - x_lo) / ell).floor() + 3;
        step_budget = 16 + 6 * g.jigsaw.tiles.size() * periods.get_ui();
    }

    const Integer k0 = ((x_lo - v1) / ell).floor();
    const ProjectiveMatrix shift = ProjectiveMatrix::translation(k0 * g.fundamental_length);
    const Word shift_word = g.translation_word().power(k0.get_si());

    std::vector<VerticalTile> out;
    std::size_t steps = 0;
    auto emit = [&](const TilingTile& t) {
        if (++steps > step_budget) throw BudgetExceeded("vertical tile expansion exceeded its step budget");
        VerticalTile v = to_vertical(g, t);
        if (v.right_vertex() > x_lo && v.left_vertex < x_hi) out.push_back(std::move(v));
        return finite_span(t.tile).second;
    };

    TilingTile cur = make_tiling_tile(g, shift, shift_word, 0);
    Rational right = emit(cur);
    for (std::size_t k = 1; k < g.jigsaw.tiles.size(); ++k) {
        cur = make_tiling_tile(g, shift, shift_word, static_cast<int>(k));
        right = emit(cur);
    }
    while (right < x_hi) {
        cur = neighbour(g, cur, vertical_side_towards(cur.tile, right));
        if (!has_infinity(cur.tile)) throw InvalidArgument("lost the vertical strip");
        right = emit(cur);
    }
    return out;
}

std::optional<int> vertical_configuration(const VerticalTile& t)
{
    const Rational x = t.left_vertex;
    const auto is = [](const VerticalSide& s, SideType type, const Rational& px, const Rational& ysq) {
        return s.type == type && s.point.x == px && s.point.y_squared == ysq;
    };
    const SideType one = SideType::one();
    if (t.tile_type.value() == 1) {
        if (t.width == 1 && is(t.left, one, x, 1) && is(t.bottom, one, x + Rational(Integer(1), Integer(2)), Rational(Integer(1), Integer(4))) &&
            is(t.right, one, x + 1, 1)) {
            return 0;
        }
        return std::nullopt;
    }
    if (t.tile_type.value() != 4) return std::nullopt;
    const SideType four = SideType::of_n(4);
    const SideType quarter = SideType::one_over_n(4);
    const Rational low(Integer(4), Integer(25));  // (2/5)^2
    if (t.width == 1 && is(t.left, one, x, 1) && is(t.bottom, quarter, x + Rational(Integer(1), Integer(5)), low) &&
        is(t.right, four, x + 1, 4)) {
        return 1;
    }
    if (t.width == 4 && is(t.left, four, x, 4) && is(t.bottom, one, x + 2, 4) && is(t.right, quarter, x + 4, 4)) {
        return 2;
    }
    if (t.width == 1 && is(t.left, quarter, x, 4) && is(t.bottom, four, x + Rational(Integer(4), Integer(5)), low) &&
        is(t.right, one, x + 1, 1)) {
        return 3;
    }
    return std::nullopt;
}

std::vector<Integer> width_pattern(const std::vector<VerticalTile>& tiles, bool half_tiles)
{
    std::vector<Integer> out;
    for (const VerticalTile& t : tiles) {
        if (half_tiles && t.width == 4) {
            out.emplace_back(2);
            out.emplace_back(2);
        } else {
            out.push_back(t.width);
        }
    }
    return out;
}

TangencyFingerprint tangency_fingerprint(const JigsawGroup& g)
{
    for (const Tile& t : g.jigsaw.tiles) {
        if (t.tile_type.value() != 1 && t.tile_type.value() != 4) {
            throw UnsupportedTileType("tangency points need tiles of type 1 and 4 only");
        }
    }
    TangencyFingerprint fp{0, Rational(Integer(2 * g.fundamental_length)), {}};
    std::set<Rational> pts;
    for (const VerticalTile& t : enumerate_vertical_tiles(g, fp.window_lo - 1, fp.window_hi + 1)) {
        for (const VerticalSide* s : {&t.left, &t.bottom, &t.right}) {
            if (s->exterior && s->point.y_squared == 4 && s->point.x >= fp.window_lo && s->point.x < fp.window_hi) {
                pts.insert(s->point.x);
            }
        }
    }
    fp.points.assign(pts.begin(), pts.end());
    return fp;
}

Rational tangency_period(const TangencyFingerprint& fp, const Integer& fundamental_length)
{
    if (fp.points.empty()) throw EmptyFingerprint("no tangency points");
    const Rational ell(fundamental_length);
    const auto reduce = [&](const Rational& x) { return x - ell * Rational((x / ell).floor()); };
    std::set<Rational> residues;
    for (const Rational& p : fp.points) residues.insert(reduce(p));

    std::set<Rational> candidates{ell};
    const Rational& base = *residues.begin();
    for (const Rational& r : residues) {
        const Rational t = reduce(r - base);
        if (t.sign() > 0) candidates.insert(t);
    }
    for (const Rational& t : candidates) {
        std::set<Rational> shifted;
        for (const Rational& r : residues) shifted.insert(reduce(r + t));
        if (shifted == residues) return t;
    }
    return ell;
}

Rational tangency_period(const JigsawGroup& g)
{
    return tangency_period(tangency_fingerprint(g), g.fundamental_length);
}

}  // namespace jigsaw
