#include "jigsaw/cusp_cover.hpp"

#include "jigsaw/errors.hpp"
#include "jigsaw/kernels.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace jigsaw {

KillerInterval killer_from_matrix(const Word& w, const ProjectiveMatrix& m)
{
    if (m.c() == 0) throw FixesInfinity("element " + m.to_string() + " fixes Infinity");
    const Rational cusp(m.a(), m.c());
    const Rational radius(Integer(1), Integer(abs(m.c())));
    return KillerInterval{cusp, cusp - radius, cusp + radius, w.inverse(), inverse(m)};
}

KillerInterval killer_from_element(const Word& w, const JigsawGroup& g)
{
    return killer_from_matrix(w, evaluate(w, g.generators));
}

Word translation_power(const JigsawGroup& g, const Integer& k)
{
    if (!k.fits_slong_p()) throw BudgetExceeded("translation power out of range");
    return g.translation_word().power(k.get_si());
}

std::optional<Word> find_word(const JigsawGroup& g, const ProjectiveMatrix& m, std::size_t max_word_length)
{
    if (m.is_identity()) return Word();
    // Breadth by length so the first hit is shortlex-least.
    for (std::size_t len = 1; len <= max_word_length; ++len) {
        std::optional<Word> hit;
        Integer x, y;
        kernels::enumerate_words(g.generators, len, {}, [&](const std::vector<Word::Letter>& w,
                                                            const kernels::RawMatrix& r) {
            if (hit) return false;
            if (w.size() < len) return true;
            // projective equality via vanishing 2x2 minors of the entry vectors
            const Integer* re[4] = {&r.a, &r.b, &r.c, &r.d};
            const Integer* me[4] = {&m.a(), &m.b(), &m.c(), &m.d()};
            for (int i = 0; i < 4; ++i) {
                for (int j = i + 1; j < 4; ++j) {
                    x = *re[i] * *me[j];
                    y = *re[j] * *me[i];
                    if (x != y) return true;
                }
            }
            hit = Word(w);
            return false;
        });
        if (hit) return hit;
    }
    return std::nullopt;
}

Word vertex_to_infinity(const JigsawGroup& g, std::size_t j)
{
    if (j >= g.jigsaw.vertices.size()) throw InvalidArgument("vertex index out of range");
    std::vector<Word::Letter> letters;
    for (std::size_t i = 0; i < j; ++i) letters.push_back(static_cast<Word::Letter>(i));
    return Word(std::move(letters));
}

namespace {

std::vector<Rational> finite_vertices(const JigsawGroup& g)
{
    std::vector<Rational> v;
    for (std::size_t i = 1; i < g.jigsaw.vertices.size(); ++i) v.push_back(g.jigsaw.vertices[i].value());
    return v;
}

bool better_record(const CuspRecord& x, const CuspRecord& y)
{
    if (x.c_abs != y.c_abs) return x.c_abs < y.c_abs;
    return shortlex_less(x.word, y.word);
}

void offer(std::map<Rational, CuspRecord>& out, CuspRecord r)
{
    auto it = out.find(r.cusp);
    if (it == out.end()) {
        out.emplace(r.cusp, std::move(r));
    } else if (better_record(r, it->second)) {
        it->second = std::move(r);
    }
}

CuspRecord record_for(const JigsawGroup& g, Word w)
{
    ProjectiveMatrix m = evaluate(w, g.generators);
    if (m.c() == 0) throw FixesInfinity("word does not move Infinity");
    Rational cusp(m.a(), m.c());
    Integer c_abs = abs(m.c());
    return {std::move(cusp), std::move(w), std::move(m), std::move(c_abs)};
}

}  // namespace

Word walk_element(const JigsawGroup& g, const std::vector<kernels::WalkMove>& moves, std::size_t count)
{
    Word w;
    for (std::size_t i = count; i-- > 0;) {
        const kernels::WalkMove& m = moves[i];
        if (sgn(m.jump) != 0) {
            w *= translation_power(g, m.jump);
        } else {
            w.push_back(m.letter);
        }
    }
    return w;
}

std::map<Rational, CuspRecord> discover_cusps(const JigsawGroup& g, std::size_t max_word_length,
                                              const Rational& window_lo, const Rational& window_hi,
                                              const SearchOptions& opts)
{
    if (max_word_length < 1) throw InvalidArgument("max_word_length must be >= 1");
    const Integer& ell = g.fundamental_length;
    const auto hits = opts.parallel
                          ? kernels::cusp_scan_parallel(g.generators, ell, max_word_length, opts.workers)
                          : kernels::cusp_scan_serial(g.generators, ell, max_word_length);
    std::map<Rational, CuspRecord> out;

    // seed: jigsaw vertices and their translates
    std::vector<std::pair<Rational, Word>> seeds;
    for (std::size_t j = 1; j < g.jigsaw.vertices.size(); ++j) {
        seeds.emplace_back(g.jigsaw.vertices[j].value(), vertex_to_infinity(g, j).inverse());
    }
    for (const auto& [residue, hit] : hits) {
        seeds.emplace_back(residue + Rational(hit.shift * ell), hit.word);
    }
    for (const auto& [point, word] : seeds) {
        const Integer k_lo = -((point - window_lo) / Rational(ell)).floor();
        const Integer k_hi = ((window_hi - point) / Rational(ell)).floor();
        for (Integer k = k_lo; k <= k_hi; ++k) {
            offer(out, record_for(g, translation_power(g, k) * word));
        }
    }
    return out;
}

std::variant<CoverProof, Gaps> cover_fundamental_interval(const JigsawGroup& g, const CoverOptions& opts)
{
    if (opts.max_word_length < 1 || opts.max_intervals < 1) throw InvalidArgument("cover budgets must be positive");
    const Rational k0(0);
    const Rational end(g.fundamental_length);
    const auto cusps = discover_cusps(g, opts.max_word_length, k0 - 1, end + 1, opts.search);

    std::vector<KillerInterval> pool;
    for (const auto& [p, rec] : cusps) {
        KillerInterval ki = killer_from_matrix(rec.word, rec.matrix);
        if (ki.hi <= k0 || ki.lo >= end) continue;
        pool.push_back(std::move(ki));
    }

    const std::vector<Rational> vertices = finite_vertices(g);
    std::vector<KillerInterval> chosen;
    std::vector<Rational> stuck;
    std::string reason;
    bool budget = false;
    Rational frontier = k0;
    while (frontier <= end) {
        const KillerInterval* best = nullptr;
        for (const KillerInterval& ki : pool) {
            if (!(ki.lo < frontier && frontier < ki.hi)) continue;
            if (!best || ki.hi > best->hi ||
                (ki.hi == best->hi && shortlex_less(ki.witness, best->witness))) {
                best = &ki;
            }
        }
        if (!best) {
            // probe the frontier point itself
            const kernels::WalkResult w =
                kernels::cutting_walk(g.generators, vertices, g.fundamental_length, frontier, opts.probe_budget);
            if (w.kind != kernels::WalkResult::Kind::HitVertex) {
                stuck.push_back(frontier);
                reason = w.kind == kernels::WalkResult::Kind::Cycle
                             ? "frontier " + frontier.to_string() + " is fixed by a hyperbolic element"
                             : "frontier " + frontier.to_string() + " not resolved within the probe budget";
                budget = w.kind != kernels::WalkResult::Kind::Cycle;
                break;
            }
            const Word to_inf = vertex_to_infinity(g, w.vertex) * walk_element(g, w.moves, w.moves.size());
            pool.push_back(killer_from_element(to_inf.inverse(), g));
            continue;
        }
        chosen.push_back(*best);
        frontier = best->hi;
        if (chosen.size() > opts.max_intervals) {
            budget = true;
            reason = "more than " + std::to_string(opts.max_intervals) + " intervals needed";
            break;
        }
    }

    if (stuck.empty() && !budget) {
        std::sort(chosen.begin(), chosen.end(), [](const KillerInterval& x, const KillerInterval& y) {
            return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
        });
        return CoverProof{g.id(), 0, g.fundamental_length, std::move(chosen)};
    }

    // Uncovered part of [0, l] with respect to every interval considered.
    std::vector<const KillerInterval*> sorted;
    for (const KillerInterval& ki : pool) sorted.push_back(&ki);
    std::sort(sorted.begin(), sorted.end(),
              [](const KillerInterval* x, const KillerInterval* y) { return x->lo < y->lo; });
    Gaps gaps;
    gaps.budget_exceeded = budget;
    gaps.reason = reason;
    Rational reach = k0;  // points below reach are covered, reach itself is not
    for (const KillerInterval* ki : sorted) {
        if (ki->lo < reach) {
            if (ki->hi > reach) reach = ki->hi;
            continue;
        }
        if (reach <= end) gaps.gaps.push_back({reach, std::min(ki->lo, end)});
        reach = ki->hi;
    }
    if (reach <= end) gaps.gaps.push_back({reach, end});
    if (gaps.gaps.empty()) {
        for (const Rational& s : stuck) gaps.gaps.push_back({s, s});
    }
    return gaps;
}

namespace {

Integer height_of(const ExtendedRational& x) { return denominator_height(x); }

Rational random_point_in(const Rational& lo, const Rational& hi, std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> qdist(1, 1000000);
    for (int attempt = 0; attempt < 64; ++attempt) {
        const Integer q = qdist(rng);
        const Integer p_lo = (lo * Rational(q)).floor() + 1;
        Integer p_hi = (hi * Rational(q)).floor();
        if (Rational(p_hi, q) >= hi) p_hi -= 1;
        if (p_hi < p_lo) continue;
        const Integer span = p_hi - p_lo + 1;
        Integer off;
        if (span.fits_ulong_p()) {
            std::uniform_int_distribution<unsigned long> od(0, span.get_ui() - 1);
            off = od(rng);
        } else {
            off = 0;
        }
        return Rational(p_lo + off, q);
    }
    return lo + (hi - lo) / 2;
}

}  // namespace

VerifyReport verify_cover(const CoverProof& p, const JigsawGroup& g, std::size_t samples, std::uint64_t seed)
{
    VerifyReport r;
    auto fail = [&](const std::string& msg) {
        r.ok = false;
        r.diagnostic = msg;
        return r;
    };
    if (p.group != g.id()) return fail("proof is for group '" + p.group + "', not '" + g.id() + "'");
    if (p.length != g.fundamental_length) return fail("fundamental length mismatch");
    if (p.intervals.empty()) return fail("no intervals");

    for (std::size_t i = 0; i < p.intervals.size(); ++i) {
        const KillerInterval& ki = p.intervals[i];
        const std::string tag = "interval " + std::to_string(i) + " around " + ki.cusp.to_string();
        ProjectiveMatrix m;
        try {
            m = evaluate(ki.witness, g.generators);
        } catch (const Error& e) {
            return fail(tag + ": " + e.what());
        }
        if (m != ki.witness_matrix) return fail(tag + ": witness word does not evaluate to the stored matrix");
        if (!mobius_apply(m, ki.cusp).is_infinity()) return fail(tag + ": witness does not send the cusp to Infinity");
        const ProjectiveMatrix back = inverse(m);
        if (back.c() == 0) return fail(tag + ": witness fixes Infinity");
        const Rational cusp(back.a(), back.c());
        const Rational radius(Integer(1), Integer(abs(back.c())));
        if (ki.cusp.is_infinity() || ki.cusp.value() != cusp) return fail(tag + ": cusp does not match the witness");
        if (ki.lo != cusp - radius || ki.hi != cusp + radius) {
            return fail(tag + ": endpoints differ from cusp -+ 1/|c| = (" + (cusp - radius).to_string() + ", " +
                        (cusp + radius).to_string() + ")");
        }
    }

    // overlap chain over [k, k + l]
    const Rational k(p.k), end(p.k + p.length);
    for (std::size_t i = 1; i < p.intervals.size(); ++i) {
        if (p.intervals[i].lo < p.intervals[i - 1].lo) return fail("intervals are not sorted by lower end");
    }
    if (!(p.intervals.front().lo < k)) return fail("first interval does not start left of k");
    Rational frontier = p.intervals.front().hi;
    for (std::size_t i = 1; i < p.intervals.size(); ++i) {
        if (frontier > end) break;
        if (!(p.intervals[i].lo < frontier)) {
            return fail("chain broken: " + frontier.to_string() + " is not covered");
        }
        if (p.intervals[i].hi > frontier) frontier = p.intervals[i].hi;
    }
    if (!(frontier > end)) return fail("chain ends at " + frontier.to_string() + " before " + end.to_string());

    // sampled descent
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < p.intervals.size(); ++i) {
        const KillerInterval& ki = p.intervals[i];
        const Rational radius = (ki.hi - ki.lo) / 2;
        std::vector<Rational> pts;
        for (long t = 1000; t < 1004; ++t) {
            const Rational inside = radius * Rational(Integer(t - 1), Integer(t));
            pts.push_back(ki.cusp.value() - inside);
            pts.push_back(ki.cusp.value() + inside);
        }
        for (std::size_t s = 0; s < samples; ++s) pts.push_back(random_point_in(ki.lo, ki.hi, rng));
        for (const Rational& x : pts) {
            const Integer before = height_of(x);
            const Integer after = height_of(mobius_apply(ki.witness_matrix, x));
            if (!(after < before)) {
                return fail("interval " + std::to_string(i) + ": height of " + x.to_string() + " does not drop");
            }
        }
    }
    return r;
}

std::size_t DescentTrace::kill_steps() const
{
    return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [](const DescentStep& s) {
        return s.kind == DescentStep::Kind::Kill;
    }));
}

DescentTrace reduce_to_infinity(const JigsawGroup& g, const CoverProof& p, const Rational& x)
{
    DescentTrace t{x, {}};
    const Rational ell(p.length), k(p.k);
    ExtendedRational cur = x;
    while (!cur.is_infinity()) {
        Rational v = cur.value();
        const Integer shift = -((v - k) / ell).floor();
        if (shift != 0) {
            v = v + Rational(shift) * ell;
            t.steps.push_back({DescentStep::Kind::Translate, shift, Word(), v, v.den()});
        }
        const KillerInterval* hit = nullptr;
        for (const KillerInterval& ki : p.intervals) {
            if (ki.contains(v)) {
                hit = &ki;
                break;
            }
        }
        if (!hit) throw NoCoveringInterval("no interval of the proof contains " + v.to_string());
        const ExtendedRational next = mobius_apply(hit->witness_matrix, v);
        const Integer h = denominator_height(next);
        if (!(h < v.den())) throw InconsistentGroup("killer witness failed to lower the height of " + v.to_string());
        t.steps.push_back({DescentStep::Kind::Kill, 0, hit->witness, next, h});
        cur = next;
    }
    (void)g;
    return t;
}

VerifyReport verify_descent(const DescentTrace& t, const JigsawGroup& g)
{
    VerifyReport r;
    auto fail = [&](const std::string& msg) {
        r.ok = false;
        r.diagnostic = msg;
        return r;
    };
    ExtendedRational cur = t.start;
    Integer h = t.start.den();
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const DescentStep& s = t.steps[i];
        if (cur.is_infinity()) return fail("step after reaching Infinity");
        ExtendedRational next;
        if (s.kind == DescentStep::Kind::Translate) {
            next = cur.value() + Rational(s.shift * g.fundamental_length);
        } else {
            next = mobius_apply(evaluate(s.word, g.generators), cur);
        }
        if (!(next == s.value)) return fail("step " + std::to_string(i) + " value mismatch");
        const Integer nh = denominator_height(next);
        if (nh != s.height) return fail("step " + std::to_string(i) + " height mismatch");
        if (s.kind == DescentStep::Kind::Translate ? nh != h : !(nh < h)) {
            return fail("step " + std::to_string(i) + " breaks the height rule");
        }
        cur = next;
        h = nh;
    }
    if (!cur.is_infinity()) return fail("trace does not end at Infinity");
    if (Integer(static_cast<unsigned long>(t.kill_steps())) > t.start.den()) return fail("too many killer steps");
    return r;
}

}  // namespace jigsaw
