#include "jigsaw/render.hpp"

#include "jigsaw/errors.hpp"

#include <cmath>
#include <sstream>

namespace jigsaw {

void set_layers(RenderOptions& o, const std::string& layers)
{
    o.tiles = o.killers = o.tangency = false;
    std::stringstream in(layers);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item == "tiles") {
            o.tiles = true;
        } else if (item == "killers") {
            o.killers = true;
        } else if (item == "tangency") {
            o.tangency = true;
        } else if (!item.empty()) {
            throw InvalidArgument("unknown render layer \"" + item + "\"");
        }
    }
}

std::vector<KillerInterval> killer_layer(const JigsawGroup& g, const Rational& lo, const Rational& hi,
                                         std::size_t max_word_length)
{
    std::vector<KillerInterval> out;
    if (!(lo < hi)) return out;
    for (const auto& [cusp, rec] : discover_cusps(g, max_word_length, lo, hi)) {
        out.push_back(killer_from_matrix(rec.word, rec.matrix));
    }
    return out;
}

std::vector<Rational> tangency_layer(const JigsawGroup& g, const Rational& lo, const Rational& hi)
{
    for (const auto& t : g.jigsaw.tiles) {
        const long n = t.tile_type.value();
        if (n != 1 && n != 4) throw UnsupportedTileType("tangency points need tiles of type 1 and 4");
    }
    std::vector<Rational> out;
    if (!(lo < hi)) return out;
    const Rational four(4);
    const auto tiles = enumerate_vertical_tiles(g, lo, hi);
    auto take = [&](const VerticalSide& s) {
        if (s.exterior && s.point.y_squared == four && lo <= s.point.x && s.point.x <= hi) out.push_back(s.point.x);
    };
    for (const auto& t : tiles) take(t.left);
    if (!tiles.empty()) take(tiles.back().right);
    return out;
}

namespace {

class Canvas {
public:
    Canvas(const Rational& lo, const Rational& hi, double width) : lo_(lo), width_(width)
    {
        const double span = to_double(hi - lo);
        scale_ = width_ / span;
        top_ = std::max(2.5, span / 2) * 1.1;
    }

    static double to_double(const Rational& r) { return r.raw().get_d(); }

    double x(const Rational& v) const { return margin_ + to_double(v - lo_) * scale_; }
    double y(double height) const { return margin_ + (top_ - height) * scale_; }
    double r(double len) const { return len * scale_; }
    double height_px() const { return 2 * margin_ + top_ * scale_; }
    double width_px() const { return 2 * margin_ + width_; }
    double top() const { return top_; }

private:
    Rational lo_;
    double width_;
    double scale_ = 1;
    double top_ = 1;
    double margin_ = 20;
};

const char* stroke_style(bool exterior) { return exterior ? "" : " stroke-dasharray=\"6,4\""; }

}  // namespace

std::string render_svg(const JigsawGroup& g, const RenderOptions& o)
{
    std::ostringstream svg;
    svg.setf(std::ios::fixed);
    svg.precision(3);
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    if (!(o.lo < o.hi)) {
        svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"0\" height=\"0\">\n</svg>\n";
        return svg.str();
    }
    const Canvas c(o.lo, o.hi, o.width_px);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << c.width_px() << "\" height=\""
        << c.height_px() << "\">\n";
    svg << "<title>" << g.id() << " over [" << o.lo.to_string() << ", " << o.hi.to_string() << "]</title>\n";
    const double axis = c.y(0);
    svg << "<line class=\"axis\" x1=\"" << c.x(o.lo) << "\" y1=\"" << axis << "\" x2=\"" << c.x(o.hi) << "\" y2=\""
        << axis << "\" stroke=\"#888\"/>\n";

    if (o.tiles) {
        svg << "<g class=\"tiles\" fill=\"none\" stroke=\"black\">\n";
        const auto tiles = enumerate_vertical_tiles(g, o.lo, o.hi);
        auto vertical = [&](const VerticalSide& s, const Rational& at) {
            svg << "<line x1=\"" << c.x(at) << "\" y1=\"" << axis << "\" x2=\"" << c.x(at) << "\" y2=\"" << c.y(c.top())
                << "\"" << stroke_style(s.exterior) << "/>\n";
        };
        for (std::size_t i = 0; i < tiles.size(); ++i) {
            const auto& t = tiles[i];
            const Rational right = t.right_vertex();
            svg << "<path data-tile=\"" << t.tile_type.value() << "\" data-left=\"" << t.left_vertex.to_string()
                << "\" data-right=\"" << right.to_string() << "\" d=\"M " << c.x(t.left_vertex) << ' ' << axis
                << " A " << c.r(Canvas::to_double(Rational(t.width)) / 2) << ' '
                << c.r(Canvas::to_double(Rational(t.width)) / 2) << " 0 0 1 " << c.x(right) << ' ' << axis << "\""
                << stroke_style(t.bottom.exterior) << "/>\n";
            vertical(t.left, t.left_vertex);
            if (i + 1 == tiles.size()) vertical(t.right, right);
            for (const VerticalSide* s : {&t.left, &t.bottom, &t.right}) {
                svg << "<circle class=\"marked\" cx=\"" << c.x(s->point.x) << "\" cy=\""
                    << c.y(std::sqrt(Canvas::to_double(s->point.y_squared))) << "\" r=\"2.5\" fill=\"black\"/>\n";
            }
        }
        svg << "</g>\n";
    }

    if (o.killers) {
        svg << "<g class=\"killers\" fill=\"none\" stroke=\"#c0392b\">\n";
        for (const auto& k : killer_layer(g, o.lo, o.hi, o.killer_word_length)) {
            const double radius = c.r(Canvas::to_double(k.hi - k.lo) / 2);
            svg << "<path data-lo=\"" << k.lo.to_string() << "\" data-hi=\"" << k.hi.to_string() << "\" data-cusp=\""
                << k.cusp.to_string() << "\" d=\"M " << c.x(k.lo) << ' ' << axis << " A " << radius << ' ' << radius
                << " 0 0 1 " << c.x(k.hi) << ' ' << axis << "\"/>\n";
        }
        svg << "</g>\n";
    }

    if (o.tangency) {
        svg << "<g class=\"tangency\" fill=\"#27ae60\">\n";
        for (const auto& x : tangency_layer(g, o.lo, o.hi)) {
            svg << "<circle data-x=\"" << x.to_string() << "\" cx=\"" << c.x(x) << "\" cy=\"" << c.y(2)
                << "\" r=\"4\"/>\n";
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace jigsaw
