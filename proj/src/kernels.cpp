#include "jigsaw/kernels.hpp"

#include "jigsaw/errors.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <limits>

namespace jigsaw::kernels {

void right_multiply(RawMatrix& m, const ProjectiveMatrix& g, Integer& t0, Integer& t1)
{
    t0 = m.a * g.a() + m.b * g.c();
    t1 = m.a * g.b() + m.b * g.d();
    m.a.swap(t0);
    m.b.swap(t1);
    t0 = m.c * g.a() + m.d * g.c();
    t1 = m.c * g.b() + m.d * g.d();
    m.c.swap(t0);
    m.d.swap(t1);
}

namespace {

struct Frame {
    RawMatrix m;
    Word::Letter next = 0;
};

int thread_count(int workers) { return workers > 0 ? workers : omp_get_max_threads(); }

}  // namespace

void enumerate_words(std::span<const ProjectiveMatrix> generators, std::size_t max_length,
                     const std::vector<Word::Letter>& prefix, const WordVisitor& visit)
{
    const std::size_t rank = generators.size();
    if (rank == 0 || max_length == 0) return;
    Integer t0, t1;
    std::vector<Word::Letter> word(prefix);
    RawMatrix start;
    for (Word::Letter l : prefix) right_multiply(start, generators[l], t0, t1);
    if (!prefix.empty()) {
        if (prefix.size() > max_length) return;
        if (!visit(word, start)) return;
    }

    std::vector<Frame> stack;
    stack.reserve(max_length + 1);
    stack.push_back({start, 0});
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (word.size() >= max_length || top.next >= rank) {
            stack.pop_back();
            if (word.size() > prefix.size()) word.pop_back();
            continue;
        }
        const Word::Letter l = top.next++;
        if (!word.empty() && word.back() == l) continue;
        Frame child{top.m, 0};
        right_multiply(child.m, generators[l], t0, t1);
        word.push_back(l);
        if (visit(word, child.m)) {
            stack.push_back(std::move(child));
        } else {
            word.pop_back();
        }
    }
}

std::vector<std::vector<Word::Letter>> reduced_words_of_length(std::size_t rank, std::size_t length)
{
    std::vector<std::vector<Word::Letter>> out{{}};
    for (std::size_t k = 0; k < length; ++k) {
        std::vector<std::vector<Word::Letter>> next;
        for (const auto& w : out) {
            for (std::size_t l = 0; l < rank; ++l) {
                if (!w.empty() && w.back() == l) continue;
                auto v = w;
                v.push_back(static_cast<Word::Letter>(l));
                next.push_back(std::move(v));
            }
        }
        out = std::move(next);
    }
    return out;
}

namespace {

// Shared driver: visits single letters serially, then splits the remaining
// search by two-letter prefixes.
template <class Acc, class MakeVisitor>
Acc drive(std::span<const ProjectiveMatrix> generators, std::size_t max_length, bool parallel, int workers,
          MakeVisitor make_visitor)
{
    Acc total;
    const std::size_t rank = generators.size();
    if (max_length == 0 || rank == 0) return total;
    for (std::size_t l = 0; l < rank; ++l) {
        enumerate_words(generators, 1, {static_cast<Word::Letter>(l)}, make_visitor(total));
    }
    if (max_length < 2) return total;
    const auto prefixes = reduced_words_of_length(rank, 2);
    std::vector<Acc> partial(prefixes.size());
    const auto run = [&](std::size_t i) {
        enumerate_words(generators, max_length, prefixes[i], make_visitor(partial[i]));
    };
    if (parallel) {
        const long count = static_cast<long>(prefixes.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count(workers))
        for (long i = 0; i < count; ++i) run(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < prefixes.size(); ++i) run(i);
    }
    for (Acc& p : partial) total.merge(std::move(p));
    return total;
}

struct SpecialAcc {
    std::map<std::pair<std::string, std::string>, SpecialHit> hits;

    void offer(SpecialHit h)
    {
        const FixedPointResult fp = fixed_points(h.matrix);
        const auto* two = std::get_if<TwoRational>(&fp);
        if (!two) return;
        const auto key = std::make_pair(two->first.to_string(), two->second.to_string());
        auto it = hits.find(key);
        if (it == hits.end()) {
            hits.emplace(key, std::move(h));
        } else if (shortlex_less(h.word, it->second.word)) {
            it->second = std::move(h);
        }
    }
    void merge(SpecialAcc&& o)
    {
        for (auto& [k, h] : o.hits) offer(std::move(h));
    }
};

WordVisitor special_visitor(SpecialAcc& acc)
{
    return [&acc, disc = Integer(), tr = Integer()](const std::vector<Word::Letter>& w,
                                                    const RawMatrix& m) mutable {
        if (w.size() < 2) return true;
        tr = m.a + m.d;
        disc = tr * tr - 4 * (m.a * m.d - m.b * m.c);
        if (sgn(disc) > 0 && mpz_perfect_square_p(disc.get_mpz_t())) {
            acc.offer({Word(w), ProjectiveMatrix::normalize(m.a, m.b, m.c, m.d)});
        }
        return true;
    };
}

std::vector<SpecialHit> sorted_hits(SpecialAcc&& acc)
{
    std::vector<SpecialHit> out;
    for (auto& [k, h] : acc.hits) out.push_back(std::move(h));
    std::sort(out.begin(), out.end(),
              [](const SpecialHit& x, const SpecialHit& y) { return shortlex_less(x.word, y.word); });
    return out;
}

}  // namespace

std::vector<SpecialHit> special_scan_serial(std::span<const ProjectiveMatrix> generators, std::size_t max_length)
{
    return sorted_hits(drive<SpecialAcc>(generators, max_length, false, 1,
                                         [](SpecialAcc& a) { return special_visitor(a); }));
}

std::vector<SpecialHit> special_scan_parallel(std::span<const ProjectiveMatrix> generators, std::size_t max_length,
                                              int workers)
{
    return sorted_hits(drive<SpecialAcc>(generators, max_length, true, workers,
                                         [](SpecialAcc& a) { return special_visitor(a); }));
}

namespace {

bool better_cusp(const CuspHit& x, const CuspHit& y)
{
    if (x.c_abs != y.c_abs) return x.c_abs < y.c_abs;
    return shortlex_less(x.word, y.word);
}

struct CuspAcc {
    std::map<Rational, CuspHit> best;

    void offer(CuspHit h)
    {
        auto it = best.find(h.residue);
        if (it == best.end()) {
            best.emplace(h.residue, std::move(h));
        } else if (better_cusp(h, it->second)) {
            it->second = std::move(h);
        }
    }
    void merge(CuspAcc&& o)
    {
        for (auto& [k, h] : o.best) offer(std::move(h));
    }
};

WordVisitor cusp_visitor(CuspAcc& acc, const Integer& length)
{
    return [&acc, &length, g = Integer()](const std::vector<Word::Letter>& w, const RawMatrix& m) mutable {
        if (sgn(m.c) == 0) return true;
        mpz_gcd(g.get_mpz_t(), m.a.get_mpz_t(), m.b.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.c.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.d.get_mpz_t());
        const Integer c_abs = abs(m.c) / g;
        const Rational p(m.a, m.c);
        const Integer shift = (p / Rational(length)).floor();
        CuspHit h{p - Rational(shift * length), shift, c_abs, Word()};
        auto found = acc.best.find(h.residue);
        if (found != acc.best.end() && found->second.c_abs < c_abs) return true;
        h.word = Word(w);
        acc.offer(std::move(h));
        return true;
    };
}

}  // namespace

std::map<Rational, CuspHit> cusp_scan_serial(std::span<const ProjectiveMatrix> generators, const Integer& length,
                                             std::size_t max_length)
{
    return drive<CuspAcc>(generators, max_length, false, 1,
                          [&](CuspAcc& a) { return cusp_visitor(a, length); })
        .best;
}

std::map<Rational, CuspHit> cusp_scan_parallel(std::span<const ProjectiveMatrix> generators,
                                               const Integer& length, std::size_t max_length, int workers)
{
    return drive<CuspAcc>(generators, max_length, true, workers,
                          [&](CuspAcc& a) { return cusp_visitor(a, length); })
        .best;
}

// ---------------------------------------------------------------------------

namespace {

class Walker {
public:
    Walker(std::span<const ProjectiveMatrix> gens, std::span<const Rational> vertices, const Integer& length)
        : gens_(gens), vertices_(vertices), length_(length),
          low_(vertices.front() - Rational(length)), high_(vertices.back() + Rational(length))
    {
    }

    // Translation power bringing p/q back near the jigsaw, or 0.
    Integer jump_for(const Integer& p, const Integer& q) const
    {
        const Rational x(p, q);
        if (x < low_) return ((vertices_.front() - x) / Rational(length_)).floor();
        if (x > high_) return -((x - vertices_.back()) / Rational(length_)).floor();
        return 0;
    }

    void translate(const Integer& k, Integer& p, Integer& q) const { p += k * length_ * q; }

    // Returns the generator to apply, or -(j+1) when the point sits on vertex j.
    long choose(const Integer& p, const Integer& q)
    {
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            lhs_ = p * vertices_[i].den();
            rhs_ = vertices_[i].num() * q;
            const int c = cmp(lhs_, rhs_);
            if (c < 0) return static_cast<long>(i);
            if (c == 0) return -static_cast<long>(i + 2);
        }
        return static_cast<long>(vertices_.size());
    }

    // false when the image is Infinity
    bool apply(std::size_t k, Integer& p, Integer& q)
    {
        const ProjectiveMatrix& g = gens_[k];
        np_ = g.a() * p + g.b() * q;
        nq_ = g.c() * p + g.d() * q;
        if (sgn(nq_) == 0) return false;
        mpz_gcd(g_.get_mpz_t(), np_.get_mpz_t(), nq_.get_mpz_t());
        if (sgn(nq_) < 0) g_ = -g_;
        mpz_divexact(p.get_mpz_t(), np_.get_mpz_t(), g_.get_mpz_t());
        mpz_divexact(q.get_mpz_t(), nq_.get_mpz_t(), g_.get_mpz_t());
        return true;
    }

    void replay(const WalkMove& m, Integer& p, Integer& q)
    {
        if (sgn(m.jump) != 0) {
            translate(m.jump, p, q);
        } else {
            apply(m.letter, p, q);
        }
    }

private:
    std::span<const ProjectiveMatrix> gens_;
    std::span<const Rational> vertices_;
    Integer length_;
    Rational low_, high_;
    Integer lhs_, rhs_, np_, nq_, g_;
};

}  // namespace

WalkResult cutting_walk(std::span<const ProjectiveMatrix> generators, std::span<const Rational> vertices,
                        const Integer& length, const Rational& x, std::size_t budget, std::size_t height_bits)
{
    if (vertices.empty() || generators.size() != vertices.size() + 1) {
        throw InvalidArgument("walk needs N+2 generators for N+1 vertices");
    }
    Walker walker(generators, vertices, length);
    WalkResult r;
    Integer hp = x.num(), hq = x.den();
    Integer tp = hp, tq = hq;
    std::size_t power = 1, lambda = 1;
    while (r.steps < budget) {
        WalkMove move;
        move.jump = walker.jump_for(hp, hq);
        if (sgn(move.jump) != 0) {
            walker.translate(move.jump, hp, hq);
        } else {
            const long k = walker.choose(hp, hq);
            if (k < 0) {
                r.kind = WalkResult::Kind::HitVertex;
                r.vertex = static_cast<std::size_t>(-k - 1);
                return r;
            }
            move.letter = static_cast<Word::Letter>(k);
            if (!walker.apply(static_cast<std::size_t>(k), hp, hq)) {
                r.moves.push_back(std::move(move));
                ++r.steps;
                r.kind = WalkResult::Kind::HitVertex;
                r.vertex = 0;
                return r;
            }
        }
        r.moves.push_back(std::move(move));
        ++r.steps;
        if (height_bits && (mpz_sizeinbase(hp.get_mpz_t(), 2) > height_bits ||
                            mpz_sizeinbase(hq.get_mpz_t(), 2) > height_bits)) {
            r.kind = WalkResult::Kind::Diverged;
            return r;
        }
        if (hp == tp && hq == tq) {
            // Brent: lambda is the cycle length; locate the cycle start.
            r.kind = WalkResult::Kind::Cycle;
            r.cycle_length = lambda;
            Integer ap = x.num(), aq = x.den(), bp = x.num(), bq = x.den();
            for (std::size_t i = 0; i < lambda; ++i) walker.replay(r.moves[i], bp, bq);
            std::size_t mu = 0;
            while (!(ap == bp && aq == bq)) {
                walker.replay(r.moves[mu], ap, aq);
                walker.replay(r.moves[mu + lambda], bp, bq);
                ++mu;
            }
            r.cycle_start = mu;
            r.moves.resize(mu + lambda);
            return r;
        }
        if (power == lambda) {
            tp = hp;
            tq = hq;
            power *= 2;
            lambda = 0;
        }
        ++lambda;
    }
    r.kind = WalkResult::Kind::Exhausted;
    return r;
}

CycleSearchResult first_cycle_serial(std::span<const ProjectiveMatrix> generators, std::span<const Rational> vertices,
                                     const Integer& length, std::span<const Rational> candidates, std::size_t budget,
                                     std::size_t height_bits)
{
    CycleSearchResult out;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        WalkResult w = cutting_walk(generators, vertices, length, candidates[i], budget, height_bits);
        if (w.kind == WalkResult::Kind::Cycle) {
            out.index = i;
            out.walk = std::move(w);
            out.walks = i + 1;
            return out;
        }
    }
    out.walks = candidates.size();
    return out;
}

CycleSearchResult first_cycle_parallel(std::span<const ProjectiveMatrix> generators,
                                       std::span<const Rational> vertices, const Integer& length,
                                       std::span<const Rational> candidates, std::size_t budget,
                                       std::size_t height_bits, int workers)
{
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::atomic<std::size_t> best{none};
    std::vector<WalkResult> found(candidates.size());
    const long count = static_cast<long>(candidates.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(thread_count(workers))
    for (long li = 0; li < count; ++li) {
        const auto i = static_cast<std::size_t>(li);
        if (i > best.load(std::memory_order_relaxed)) continue;
        WalkResult w = cutting_walk(generators, vertices, length, candidates[i], budget, height_bits);
        if (w.kind != WalkResult::Kind::Cycle) continue;
        found[i] = std::move(w);
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
    }
    CycleSearchResult out;
    if (best.load() != none) {
        out.index = best.load();
        out.walk = std::move(found[*out.index]);
        out.walks = *out.index + 1;
    } else {
        out.walks = candidates.size();
    }
    return out;
}

}  // namespace jigsaw::kernels
