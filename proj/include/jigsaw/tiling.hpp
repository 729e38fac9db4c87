#pragma once

#include "jigsaw/matrix.hpp"
#include "jigsaw/word.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace jigsaw {

/// Type of an ideal tile: the n of Delta_n. Always >= 1.
class TileType {
public:
    explicit TileType(long n);
    long value() const { return n_; }
    friend bool operator==(TileType, TileType) = default;

private:
    long n_;
};

/// Side label of a tile of type n: One, N(n) or OneOverN(n). For n = 1 all
/// three coincide with One, so "sides match" is plain equality.
class SideType {
public:
    enum class Kind { One, N, OneOverN };

    SideType() : SideType(Kind::One, 1) {}

    static SideType one() { return SideType(Kind::One, 1); }
    static SideType of_n(long n) { return n == 1 ? one() : SideType(Kind::N, n); }
    static SideType one_over_n(long n) { return n == 1 ? one() : SideType(Kind::OneOverN, n); }

    Kind kind() const { return kind_; }
    long n() const { return n_; }
    Rational value() const;

    friend bool operator==(SideType, SideType) = default;

    /// "1", "4" or "1/4".
    std::string to_string() const;

private:
    SideType(Kind k, long n) : kind_(k), n_(n) {}
    Kind kind_;
    long n_;
};

/// A marked point (x, y) in the upper half-plane, kept as (x, y^2) together
/// with the pi-rotation about it.
struct MarkedPoint {
    Rational x;
    Rational y_squared;
    ProjectiveMatrix rotation;

    static MarkedPoint from_rotation(const ProjectiveMatrix& r);
    static MarkedPoint at(const Rational& x, const Rational& y_squared);
};

struct TileSide {
    ExtendedRational from;
    ExtendedRational to;
    SideType type;
    MarkedPoint point;
};

/// An isometric copy placement(Delta_n) of the base tile, with its vertices
/// and sides in the cyclic order of the base tile: [inf,-1], [-1,0], [0,inf].
struct Tile {
    TileType tile_type;
    ProjectiveMatrix placement;
    std::array<ExtendedRational, 3> vertices;
    std::array<TileSide, 3> sides;
};

Tile base_tile(TileType n);

/// Builds the tile placement(Delta_n).
Tile place_tile(TileType n, const ProjectiveMatrix& placement);

struct TileRotations {
    ProjectiveMatrix one;         // about x_1 on [inf,-1]
    ProjectiveMatrix one_over_n;  // about x_{1/n} on [-1,0]
    ProjectiveMatrix n;           // about x_n on [0,inf]

    const ProjectiveMatrix& operator[](int side) const;
};

TileRotations tile_rotations(TileType n);

/// True iff the cyclic product of the tile's three side rotations is parabolic.
bool balance_check(const Tile& t);

/// Which neighbour lies across each side of a jigsaw tile: either another
/// tile of the jigsaw or the exterior, in which case the side carries one of
/// the group generators.
struct SideLink {
    bool exterior = true;
    int neighbour_tile = -1;    // interior sides
    int neighbour_side = -1;
    int generator = -1;         // exterior sides
};

/// A fan of tiles sharing the vertex Infinity, ordered left to right.
struct Jigsaw {
    std::vector<Tile> tiles;
    std::vector<std::array<SideLink, 3>> links;
    /// v_0 = Infinity, v_1 < ... < v_{N+1}.
    std::vector<ExtendedRational> vertices;
    /// x_0 ... x_{N+1}; x_i on [v_i, v_{i+1}], x_{N+1} on [v_{N+1}, v_0].
    std::vector<MarkedPoint> exterior_marked_points;
    /// Tile and side index carrying each exterior marked point.
    std::vector<std::pair<int, int>> exterior_sides;
    /// Short description, e.g. "J 1 2" or "W 5".
    std::string name;
};

/// J_{m,n}: Delta_1 with m - 1 type-1 tiles to the left and n type-4 tiles
/// to the right. m = 0 gives a chain of n type-4 tiles starting at Delta_4.
Jigsaw assemble_fan_jigsaw(long m, long n);

/// The single-tile jigsaw Delta_n.
Jigsaw single_tile_jigsaw(TileType n);

std::vector<ProjectiveMatrix> jigsaw_generators(const Jigsaw& j);

struct JigsawGroup {
    Jigsaw jigsaw;
    std::vector<ProjectiveMatrix> generators;
    Integer fundamental_length;

    const std::string& id() const { return jigsaw.name; }
    std::size_t rank() const { return generators.size(); }
    /// rho_{N+1} ... rho_0 oriented so that it translates by +fundamental_length.
    Word translation_word() const;
    ProjectiveMatrix translation() const { return ProjectiveMatrix::translation(fundamental_length); }
};

JigsawGroup make_group(Jigsaw j);
JigsawGroup weierstrass_group(TileType n);
JigsawGroup fan_jigsaw_group(long m, long n);

/// The same jigsaw moved by x -> x + shift; its group is the conjugate of
/// g by that translation. Any translate of the triangulation can be used as
/// the working frame, e.g. one where a chosen vertical tile sits at 0.
JigsawGroup translated_group(const JigsawGroup& g, const Integer& shift);

/// Parses "W n" or "J m n", optionally followed by "shift k".
JigsawGroup parse_group_spec(std::string_view spec);

/// Translation length of the ordered generator product. Throws
/// NotATranslation when that product is not a translation fixing Infinity.
Integer fundamental_length(const JigsawGroup& g);

struct VerticalSide {
    SideType type;
    bool exterior;
    MarkedPoint point;
};

/// A tile of the induced tessellation having Infinity as a vertex.
struct VerticalTile {
    Rational left_vertex;
    Integer width;
    TileType tile_type;
    VerticalSide left;
    VerticalSide bottom;
    VerticalSide right;
    /// Group element gamma with this tile = gamma(jigsaw tile).
    ProjectiveMatrix element;
    Word element_word;
    int jigsaw_tile = 0;

    Rational right_vertex() const { return left_vertex + Rational(width); }
};

/// Consecutive vertical tiles meeting the open window (x_lo, x_hi), left to
/// right. Throws BudgetExceeded when more than step_budget tiles would be
/// generated (0 picks a budget proportional to the window length).
std::vector<VerticalTile> enumerate_vertical_tiles(const JigsawGroup& g, const Rational& x_lo,
                                                   const Rational& x_hi, std::size_t step_budget = 0);

/// Checks a type-4 vertical tile against the three admissible configurations
/// and a type-1 tile against its unique one. Returns the configuration index
/// (1, 2, 3 for type 4; 0 for type 1) or nullopt if none matches.
std::optional<int> vertical_configuration(const VerticalTile& t);

std::vector<Integer> width_pattern(const std::vector<VerticalTile>& tiles, bool half_tiles = false);

struct TangencyFingerprint {
    Rational window_lo;
    Rational window_hi;  // half-open [lo, hi), length 2 * fundamental length
    std::vector<Rational> points;
};

/// Exterior marked points at height 2 (y^2 = 4) over [0, 2l).
TangencyFingerprint tangency_fingerprint(const JigsawGroup& g);

/// Least t > 0 such that the fingerprint reduced modulo l is invariant
/// under x -> x + t.
Rational tangency_period(const JigsawGroup& g);
Rational tangency_period(const TangencyFingerprint& fp, const Integer& fundamental_length);

}  // namespace jigsaw
