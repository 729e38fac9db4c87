#pragma once

#include "jigsaw/cusp_cover.hpp"

#include <string>
#include <vector>

namespace jigsaw {

struct RenderOptions {
    Rational lo;
    Rational hi;
    bool tiles = true;
    bool killers = false;
    bool tangency = false;
    std::size_t killer_word_length = 5;
    double width_px = 1000;
};

/// Parses "tiles,killers,tangency" (any subset) into the layer flags.
void set_layers(RenderOptions& o, const std::string& layers);

/// Killer intervals of discovered cusps whose cusp lies in [lo, hi].
std::vector<KillerInterval> killer_layer(const JigsawGroup& g, const Rational& lo, const Rational& hi,
                                         std::size_t max_word_length);

/// Height-2 marked points on exterior vertical sides in [lo, hi]. Throws
/// UnsupportedTileType when the jigsaw uses tiles other than Delta_1, Delta_4.
std::vector<Rational> tangency_layer(const JigsawGroup& g, const Rational& lo, const Rational& hi);

/// SVG 1.1 picture of the upper half-plane over [lo, hi]. Exterior sides are
/// solid, interior sides dashed. Coordinates are exact until emission. An
/// empty window gives a document with an empty body.
std::string render_svg(const JigsawGroup& g, const RenderOptions& o);

}  // namespace jigsaw
