#include "jigsaw/special_hunt.hpp"

#include "jigsaw/errors.hpp"
#include "jigsaw/kernels.hpp"

#include <algorithm>
#include <chrono>

namespace jigsaw {

std::optional<SpecialCertificate> make_certificate(const JigsawGroup& g, const Word& w)
{
    const ProjectiveMatrix m = evaluate(w, g.generators);
    if (m.is_identity() || classify(m) != IsometryClass::Hyperbolic) return std::nullopt;
    const auto fp = fixed_points(m);
    const auto* two = std::get_if<TwoRational>(&fp);
    if (!two || two->first.is_infinity() || two->second.is_infinity()) return std::nullopt;
    const Integer tr = m.trace();
    return SpecialCertificate{g.id(), w, m, {two->first.value(), two->second.value()}, Rational(Integer(tr * tr)),
                              m.det()};
}

VerifyReport verify_certificate(const SpecialCertificate& c, const JigsawGroup& g)
{
    auto fail = [](std::string why) { return VerifyReport{false, std::move(why)}; };
    if (c.group != g.id()) return fail("certificate is for " + c.group + ", not " + g.id());
    for (auto l : c.word.letters())
        if (l >= g.rank()) return fail("letter out of range in " + c.word.to_string());
    const ProjectiveMatrix m = evaluate(c.word, g.generators);
    if (!(m == c.matrix)) return fail("word evaluates to " + m.to_string() + ", stored " + c.matrix.to_string());
    const Integer tr = m.trace();
    if (c.trace_squared != Rational(Integer(tr * tr))) return fail("stored trace^2 does not match");
    if (c.det != m.det()) return fail("stored determinant does not match");
    if (!(c.trace_squared > Rational(Integer(4 * c.det)))) return fail("element is not hyperbolic");
    if (!(c.fixed_points.first < c.fixed_points.second)) return fail("fixed points not distinct and increasing");
    for (const Rational& p : {c.fixed_points.first, c.fixed_points.second}) {
        if (!(mobius_apply(m, p) == ExtendedRational(p))) return fail(p.to_string() + " is not fixed");
    }
    return {};
}

std::vector<SpecialCertificate> word_scan(const JigsawGroup& g, std::size_t max_word_length, const SearchOptions& opts)
{
    const auto hits = opts.parallel ? kernels::special_scan_parallel(g.generators, max_word_length, opts.workers)
                                    : kernels::special_scan_serial(g.generators, max_word_length);
    std::vector<SpecialCertificate> out;
    for (const auto& h : hits) {
        if (auto c = make_certificate(g, h.word)) out.push_back(std::move(*c));
    }
    return out;
}

namespace {

std::vector<Rational> finite_vertices(const JigsawGroup& g)
{
    std::vector<Rational> v;
    for (std::size_t i = 1; i < g.jigsaw.vertices.size(); ++i) v.push_back(g.jigsaw.vertices[i].value());
    return v;
}

std::string walk_kind(kernels::WalkResult::Kind k)
{
    switch (k) {
    case kernels::WalkResult::Kind::HitVertex: return "vertex";
    case kernels::WalkResult::Kind::Cycle: return "cycle";
    case kernels::WalkResult::Kind::Exhausted: return "budget exhausted";
    case kernels::WalkResult::Kind::Diverged: return "height bound exceeded";
    }
    return "?";
}

// Interprets a finished walk; nullopt for a cycle whose element is not special.
std::optional<ProbeResult> interpret(const JigsawGroup& g, const Rational& x, const kernels::WalkResult& w)
{
    using K = kernels::WalkResult::Kind;
    if (w.kind == K::HitVertex) {
        Word to_inf = vertex_to_infinity(g, w.vertex) * walk_element(g, w.moves, w.moves.size());
        if (!(mobius_apply(evaluate(to_inf, g.generators), x).is_infinity()))
            throw InconsistentGroup("walk word does not send " + x.to_string() + " to Infinity");
        return ProbeResult{CuspWitness{std::move(to_inf)}};
    }
    if (w.kind == K::Cycle) {
        const Word h = walk_element(g, w.moves, w.cycle_start).inverse() *
                       walk_element(g, w.moves, w.cycle_start + w.cycle_length);
        if (h.empty()) return std::nullopt;
        auto cert = make_certificate(g, h);
        if (!cert) return std::nullopt;
        if (cert->fixed_points.first != x && cert->fixed_points.second != x)
            throw InconsistentGroup("cycle element does not fix " + x.to_string());
        return ProbeResult{std::move(*cert)};
    }
    return ProbeResult{Exhausted{w.steps, walk_kind(w.kind)}};
}

}  // namespace

ProbeResult orbit_probe(const JigsawGroup& g, const Rational& candidate, std::size_t budget, std::size_t height_bits)
{
    const auto vertices = finite_vertices(g);
    const auto w = kernels::cutting_walk(g.generators, vertices, g.fundamental_length, candidate, budget, height_bits);
    if (auto r = interpret(g, candidate, w)) return std::move(*r);
    return Exhausted{w.steps, "cycle element is not hyperbolic"};
}

Word theorem2_word(long n)
{
    auto W = [](std::string_view s) { return Word::parse_alpha(s); };
    if (n > 0 && n % 8 == 0) {
        const long k = n / 8;
        return W("caba") * W("cba").power(k - 1) * W("caba");
    }
    if (n >= 10 && n % 8 == 2) {
        const long k = (n - 2) / 8;
        return W("c") * W("abc").power(4 * k - 1) * W("ababa") * W("abc").power(1 - k) * W("ca");
    }
    if (n >= 6 && n % 8 == 6) {
        const long k = (n - 6) / 8;
        return W("a") * W("cba").power(k) * W("cababac");
    }
    throw UnsupportedResidue("no special family for n = " + std::to_string(n));
}

SpecialCertificate theorem2_certificate(long n)
{
    const Word w = theorem2_word(n);
    const JigsawGroup g = weierstrass_group(TileType(n));
    auto c = make_certificate(g, w);
    if (!c) throw InconsistentGroup("family word for n = " + std::to_string(n) + " is not special");
    return std::move(*c);
}

std::vector<Rational> candidates_by_height(const Rational& lo, const Rational& hi, long max_height)
{
    std::vector<Rational> out;
    for (long q = 1; q <= max_height; ++q) {
        const Integer Q(q);
        Integer p = (lo * Rational(Q)).floor();
        for (;; ++p) {
            const Rational x(p, Q);
            if (x >= hi) break;
            if (x < lo) continue;
            if (x.den() == Q) out.push_back(x);
        }
    }
    return out;
}

std::optional<long> weierstrass_index(const JigsawGroup& g)
{
    const std::string& id = g.id();
    if (id.size() < 3 || id[0] != 'W' || id[1] != ' ') return std::nullopt;
    try {
        std::size_t used = 0;
        const long n = std::stol(id.substr(2), &used);
        if (used + 2 != id.size()) return std::nullopt;
        return n;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::size_t scan_length(const JigsawGroup& g, const Budgets& b)
{
    const double r = static_cast<double>(g.rank());
    std::size_t len = 0;
    double count = r;
    while (len < b.max_word_length && count <= static_cast<double>(b.max_words)) {
        ++len;
        count *= r - 1;
    }
    return len;
}

std::optional<ContainsSpecial> find_special(const JigsawGroup& g, const Budgets& b, SurveyRow* row,
                                            const HuntProgress* progress)
{
    SurveyRow scratch;
    if (!row) row = &scratch;
    if (auto n = weierstrass_index(g)) {
        try {
            const Word w = theorem2_word(*n);
            if (auto c = make_certificate(g, w)) return ContainsSpecial{std::move(*c), "family"};
        } catch (const UnsupportedResidue&) {
        }
    }

    const std::size_t len = scan_length(g, b);
    if (len >= 2) {
        auto found = word_scan(g, len, b.search);
        row->words_scanned_up_to = len;
        if (!found.empty()) return ContainsSpecial{std::move(found.front()), "word scan"};
    }

    const auto vertices = finite_vertices(g);
    const auto candidates = candidates_by_height(Rational(0), Rational(g.fundamental_length), b.max_height);
    std::size_t from = progress ? std::min(progress->next_candidate, candidates.size()) : 0;
    const std::size_t chunk = progress ? std::max<std::size_t>(1, progress->chunk) : candidates.size();
    while (from < candidates.size()) {
        const std::size_t stop = std::min(candidates.size(), from + chunk);
        std::span<const Rational> rest(candidates.data() + from, stop - from);
        auto r = b.search.parallel
                     ? kernels::first_cycle_parallel(g.generators, vertices, g.fundamental_length, rest, b.max_orbit,
                                                     b.height_bits, b.search.workers)
                     : kernels::first_cycle_serial(g.generators, vertices, g.fundamental_length, rest, b.max_orbit,
                                                   b.height_bits);
        if (!r.index) {
            from = stop;
            row->candidates_probed = from;
            if (progress && progress->on_chunk) progress->on_chunk(from);
            continue;
        }
        const std::size_t at = from + *r.index;
        row->candidates_probed = at + 1;
        if (auto p = interpret(g, candidates[at], r.walk)) {
            if (auto* c = std::get_if<SpecialCertificate>(&*p)) return ContainsSpecial{std::move(*c), "orbit probe"};
        }
        from = at + 1;
    }
    row->candidates_probed = candidates.size();
    return std::nullopt;
}

SurveyRow hunt(const JigsawGroup& g, const Budgets& b, const HuntProgress* progress)
{
    const auto t0 = std::chrono::steady_clock::now();
    SurveyRow row{g.id(), Undetermined{}, 0, 0, 0};
    auto done = [&](HuntVerdict v) {
        row.verdict = std::move(v);
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return row;
    };
    if (auto s = find_special(g, b, &row, progress)) return done(std::move(*s));

    auto cover = cover_fundamental_interval(g, b.cover);
    if (auto* p = std::get_if<CoverProof>(&cover)) return done(CuspSetFull{std::move(*p)});
    auto& gaps = std::get<Gaps>(cover);
    std::string report = "no special element up to word length " + std::to_string(row.words_scanned_up_to) +
                         " or candidate height " + std::to_string(b.max_height) + "; cover incomplete";
    if (!gaps.reason.empty()) report += ": " + gaps.reason;
    return done(Undetermined{std::move(report), std::move(gaps.gaps)});
}

std::vector<SurveyRow> survey(const std::vector<JigsawGroup>& groups, const Budgets& b)
{
    std::vector<SurveyRow> rows;
    rows.reserve(groups.size());
    for (const auto& g : groups) rows.push_back(hunt(g, b));
    return rows;
}

}  // namespace jigsaw
