#include "jigsaw/commensurability.hpp"

#include "jigsaw/errors.hpp"
#include "jigsaw/kernels.hpp"

namespace jigsaw {

Rational rotation_pair_trace_square(const MarkedPoint& p, const MarkedPoint& q)
{
    const Rational d = p.x - q.x;
    const Rational t = d * d + p.y_squared + q.y_squared;
    return t * t / (p.y_squared * q.y_squared);
}

namespace {

std::optional<ArithmeticityWitness> try_word(const JigsawGroup& g, const Word& w, const char* how)
{
    if (w.empty() || w.size() % 2 != 0) return std::nullopt;
    const ProjectiveMatrix m = evaluate(w, g.generators);
    Rational t = m.trace_squared_over_det();
    if (t.is_integer()) return std::nullopt;
    return ArithmeticityWitness{g.id(), w, m, std::move(t), how};
}

struct SideRotation {
    MarkedPoint point;
    Word word;
};

// Exterior vertical sides of the tessellation over two fundamental lengths,
// each with a word for its rotation.
std::vector<SideRotation> vertical_side_rotations(const JigsawGroup& g)
{
    const Rational lo = g.jigsaw.vertices[1].value();
    const auto tiles = enumerate_vertical_tiles(g, lo, lo + Rational(Integer(2 * g.fundamental_length)));
    std::vector<SideRotation> out;
    for (const auto& t : tiles) {
        for (const VerticalSide* s : {&t.left, &t.right}) {
            if (!s->exterior) continue;
            const auto& links = g.jigsaw.links[static_cast<std::size_t>(t.jigsaw_tile)];
            for (const auto& link : links) {
                if (!link.exterior) continue;
                Word w = t.element_word;
                w.push_back(static_cast<Word::Letter>(link.generator));
                w *= t.element_word.inverse();
                if (evaluate(w, g.generators) == s->point.rotation) {
                    out.push_back({s->point, std::move(w)});
                    break;
                }
            }
        }
    }
    return out;
}

bool heights_four_and_one(const MarkedPoint& p, const MarkedPoint& q)
{
    const Rational four(4), one(1);
    return (p.y_squared == four && q.y_squared == one) || (p.y_squared == one && q.y_squared == four);
}

bool even_distance(const MarkedPoint& p, const MarkedPoint& q)
{
    const Rational d = p.x - q.x;
    return d.is_integer() && mpz_even_p(d.num().get_mpz_t());
}

}  // namespace

std::optional<ArithmeticityWitness> arithmeticity_witness(const JigsawGroup& g, std::size_t max_word_length)
{
    if (max_word_length < 2) throw InvalidArgument("witness search needs word length >= 2");
    const auto& pts = g.jigsaw.exterior_marked_points;
    const auto last = static_cast<Word::Letter>(g.rank() - 1);

    // the two vertical exterior sides of the jigsaw itself
    if (heights_four_and_one(pts.front(), pts.back()) && even_distance(pts.front(), pts.back())) {
        if (auto w = try_word(g, Word{0, last}, "vertical sides")) return w;
    }
    for (std::size_t i = 0; i < g.rank(); ++i) {
        for (std::size_t j = i + 1; j < g.rank(); ++j) {
            const Word w{static_cast<Word::Letter>(i), static_cast<Word::Letter>(j)};
            if (auto r = try_word(g, w, "generator pair")) return r;
        }
    }

    const auto sides = vertical_side_rotations(g);
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < sides.size(); ++i) {
            for (std::size_t j = i + 1; j < sides.size(); ++j) {
                const auto& p = sides[i].point;
                const auto& q = sides[j].point;
                if (pass == 0 && !(heights_four_and_one(p, q) && even_distance(p, q))) continue;
                const Word w = sides[i].word * sides[j].word;
                if (w.size() > max_word_length) continue;
                if (auto r = try_word(g, w, "vertical tiles")) return r;
            }
        }
    }

    for (std::size_t len = 4; len <= max_word_length; len += 2) {
        std::optional<Word> hit;
        Integer tr2, det, rem;
        kernels::enumerate_words(g.generators, len, {}, [&](const std::vector<Word::Letter>& w,
                                                            const kernels::RawMatrix& r) {
            if (hit) return false;
            if (w.size() < len) return true;
            tr2 = r.a + r.d;
            tr2 *= tr2;
            det = r.a * r.d - r.b * r.c;
            rem = tr2 % det;
            if (rem != 0) hit = Word(w);
            return false;
        });
        if (hit) {
            if (auto r = try_word(g, *hit, "even word scan")) return r;
        }
    }
    return std::nullopt;
}

VerifyReport verify_witness(const ArithmeticityWitness& w, const JigsawGroup& g)
{
    auto fail = [](std::string why) { return VerifyReport{false, std::move(why)}; };
    if (w.group != g.id()) return fail("witness is for " + w.group + ", not " + g.id());
    if (w.word.empty() || w.word.size() % 2 != 0) return fail("witness word must have even positive length");
    for (auto l : w.word.letters())
        if (l >= g.rank()) return fail("letter out of range in " + w.word.to_string());
    const ProjectiveMatrix m = evaluate(w.word, g.generators);
    if (!(m == w.matrix)) return fail("word evaluates to " + m.to_string());
    if (m.trace_squared_over_det() != w.trace_squared_over_det) return fail("stored trace square does not match");
    if (w.trace_squared_over_det.is_integer()) return fail("trace square is an integer");
    return {};
}

std::string verdict_name(const GroupVerdict& v)
{
    struct {
        std::string operator()(const Pseudomodular&) const { return "pseudomodular"; }
        std::string operator()(const NotPseudomodular&) const { return "not pseudomodular"; }
        std::string operator()(const CuspSetFullOnly&) const { return "cusp set full"; }
        std::string operator()(const UndeterminedVerdict&) const { return "undetermined"; }
    } name;
    return std::visit(name, v);
}

GroupVerdict verdict(const JigsawGroup& g, const Budgets& b)
{
    auto cover = cover_fundamental_interval(g, b.cover);
    auto* proof = std::get_if<CoverProof>(&cover);
    if (proof) {
        const auto r = verify_cover(*proof, g);
        if (!r.ok) throw InconsistentGroup("cover proof failed verification: " + r.diagnostic);
    }
    auto special = find_special(g, b);
    if (special) {
        const auto r = verify_certificate(special->certificate, g);
        if (!r.ok) throw InconsistentGroup("special certificate failed verification: " + r.diagnostic);
    }
    if (proof && special)
        throw InconsistentGroup(g.id() + " has both a cusp cover and a special element " +
                                special->certificate.word.to_string());
    if (special) return NotPseudomodular{std::move(special->certificate)};
    if (proof) {
        auto w = arithmeticity_witness(g, std::max<std::size_t>(2, b.max_witness_length));
        if (w && verify_witness(*w, g).ok) return Pseudomodular{std::move(*proof), std::move(*w)};
        return CuspSetFullOnly{std::move(*proof)};
    }
    const auto& gaps = std::get<Gaps>(cover);
    std::string report = "no cover (" + std::to_string(gaps.gaps.size()) + " gaps";
    if (!gaps.reason.empty()) report += ", " + gaps.reason;
    report += ") and no special element within budget";
    return UndeterminedVerdict{std::move(report)};
}

VerifyReport verify_verdict(const GroupVerdict& v, const JigsawGroup& g)
{
    if (const auto* p = std::get_if<Pseudomodular>(&v)) {
        auto r = verify_cover(p->cover, g);
        if (!r.ok) return r;
        return verify_witness(p->witness, g);
    }
    if (const auto* n = std::get_if<NotPseudomodular>(&v)) return verify_certificate(n->certificate, g);
    if (const auto* c = std::get_if<CuspSetFullOnly>(&v)) return verify_cover(c->cover, g);
    return {};
}

}  // namespace jigsaw
