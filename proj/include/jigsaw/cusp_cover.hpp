#pragma once

#include "jigsaw/kernels.hpp"
#include "jigsaw/tiling.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace jigsaw {

/// Open interval (lo, hi) around a cusp whose witness strictly lowers the
/// denominator of every rational inside.
struct KillerInterval {
    ExtendedRational cusp;
    Rational lo;
    Rational hi;
    Word witness;
    ProjectiveMatrix witness_matrix;

    bool contains(const Rational& x) const { return lo < x && x < hi; }
};

/// Interval built from g = evaluate(w) with g(inf) = a/c: radius 1/|c| and
/// witness g^-1. Throws FixesInfinity when c = 0.
KillerInterval killer_from_element(const Word& w, const JigsawGroup& g);
KillerInterval killer_from_matrix(const Word& w, const ProjectiveMatrix& m);

struct CuspRecord {
    Rational cusp;
    Word word;                // g with g(inf) = cusp
    ProjectiveMatrix matrix;  // evaluate(word)
    Integer c_abs;
};

struct SearchOptions {
    int workers = 0;          // 0 = OpenMP default
    bool parallel = true;
};

/// Cusps reached as g(inf) for words g of length <= max_word_length, listed
/// inside the closed window. Each cusp keeps the word with minimal |c|, then
/// the shortlex-least word; translates of a residue class reuse the class
/// representative with a power of the translation prepended.
std::map<Rational, CuspRecord> discover_cusps(const JigsawGroup& g, std::size_t max_word_length,
                                              const Rational& window_lo, const Rational& window_hi,
                                              const SearchOptions& opts = {});

/// Word T^k for the positive translation T by the fundamental length.
Word translation_power(const JigsawGroup& g, const Integer& k);

struct CoverProof {
    std::string group;
    Integer k;       // fundamental interval [k, k + length]
    Integer length;
    std::vector<KillerInterval> intervals;  // sorted by lo
};

/// Closed uncovered pieces [lo, hi] (lo == hi for a single point).
struct Gap {
    Rational lo;
    Rational hi;
};

struct Gaps {
    std::vector<Gap> gaps;
    bool budget_exceeded = false;
    std::string reason;
};

struct CoverOptions {
    std::size_t max_word_length = 6;
    std::size_t max_intervals = 4096;
    /// Walk budget used to probe uncovered frontier points directly.
    std::size_t probe_budget = 20000;
    SearchOptions search;
};

std::variant<CoverProof, Gaps> cover_fundamental_interval(const JigsawGroup& g, const CoverOptions& opts = {});

struct VerifyReport {
    bool ok = true;
    std::string diagnostic;
};

/// Independent re-check: witness words, interval radii, the overlap chain
/// over [k, k+l] and sampled strict height descent.
VerifyReport verify_cover(const CoverProof& p, const JigsawGroup& g, std::size_t samples = 64,
                          std::uint64_t seed = 1);

struct DescentStep {
    enum class Kind { Translate, Kill };
    Kind kind;
    Integer shift;                // Translate: x -> x + shift * length
    Word word;                    // Kill: the witness applied
    ExtendedRational value;       // value after the step
    Integer height;               // denominator_height(value)
};

struct DescentTrace {
    Rational start;
    std::vector<DescentStep> steps;

    std::size_t kill_steps() const;
};

/// Translates x into [k, k+l) and applies covering witnesses until Infinity.
/// Throws NoCoveringInterval when the proof leaves a point uncovered.
DescentTrace reduce_to_infinity(const JigsawGroup& g, const CoverProof& p, const Rational& x);

/// Replays a trace: killer steps strictly lower the height, translations keep
/// it, the last value is Infinity.
VerifyReport verify_descent(const DescentTrace& t, const JigsawGroup& g);

/// Shortlex-least reduced word of length <= max_word_length evaluating to m.
std::optional<Word> find_word(const JigsawGroup& g, const ProjectiveMatrix& m, std::size_t max_word_length);

/// Word of the element M_s ... M_1 built from the first `count` walk moves.
Word walk_element(const JigsawGroup& g, const std::vector<kernels::WalkMove>& moves, std::size_t count);

/// A word mapping the jigsaw vertex v_j to Infinity.
Word vertex_to_infinity(const JigsawGroup& g, std::size_t j);

}  // namespace jigsaw
