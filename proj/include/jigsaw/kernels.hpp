#pragma once

// Search kernels shared by the cusp, special and arithmeticity searches.
// Each kernel has a serial reference and an OpenMP version; both return
// identical results because per-task partial results are merged in task
// order with order-insensitive reductions.

#include "jigsaw/matrix.hpp"
#include "jigsaw/word.hpp"

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace jigsaw::kernels {

/// Raw (unnormalized) integer matrix used inside the enumeration loops.
struct RawMatrix {
    Integer a = 1, b = 0, c = 0, d = 1;
};

/// this = this * g, reusing the scratch integers.
void right_multiply(RawMatrix& m, const ProjectiveMatrix& g, Integer& t0, Integer& t1);

/// Calls visit(word, raw product) for every reduced word of length
/// 1..max_length whose letters start with `prefix`. Depth-first, letters in
/// increasing order. The visitor returns false to prune the subtree below
/// the current word.
using WordVisitor = std::function<bool(const std::vector<Word::Letter>&, const RawMatrix&)>;
void enumerate_words(std::span<const ProjectiveMatrix> generators, std::size_t max_length,
                     const std::vector<Word::Letter>& prefix, const WordVisitor& visit);

/// Reduced words of exactly `length` letters in shortlex order.
std::vector<std::vector<Word::Letter>> reduced_words_of_length(std::size_t rank, std::size_t length);

// ---------------------------------------------------------------------------
// Special scan: hyperbolic words with rational fixed points.

struct SpecialHit {
    Word word;
    ProjectiveMatrix matrix;
};

/// Words of length 2..max_length whose product is hyperbolic with a perfect
/// square discriminant. At most one hit per fixed-point pair is kept, the
/// shortlex-least word.
std::vector<SpecialHit> special_scan_serial(std::span<const ProjectiveMatrix> generators, std::size_t max_length);
std::vector<SpecialHit> special_scan_parallel(std::span<const ProjectiveMatrix> generators, std::size_t max_length,
                                              int workers = 0);

// ---------------------------------------------------------------------------
// Cusp scan: images of Infinity reduced modulo the fundamental length.

struct CuspHit {
    Rational residue;      // g(inf) mod l, in [0, l)
    Integer shift;         // g(inf) = residue + shift * l
    Integer c_abs;         // |c| of the normalized matrix
    Word word;
};

/// For every residue class reached by a word of length <= max_length keeps
/// the word with minimal |c|, then shortlex-least word.
std::map<Rational, CuspHit> cusp_scan_serial(std::span<const ProjectiveMatrix> generators, const Integer& length,
                                             std::size_t max_length);
std::map<Rational, CuspHit> cusp_scan_parallel(std::span<const ProjectiveMatrix> generators,
                                               const Integer& length, std::size_t max_length, int workers = 0);

// ---------------------------------------------------------------------------
// Cutting-sequence walks over candidate points.

/// The walk moves a boundary point x to rho_i(x), where side i of the
/// jigsaw faces x, until x hits a vertex of the jigsaw or the state repeats.
/// Points far outside [v_1 - l, v_{N+1} + l] jump back by a translation
/// power in one move instead of circling the cusp at Infinity.
struct WalkMove {
    Word::Letter letter = 0;
    Integer jump;  // nonzero: x -> x + jump * l, letter unused
};

struct WalkResult {
    enum class Kind { HitVertex, Cycle, Exhausted, Diverged } kind = Kind::Exhausted;
    std::vector<WalkMove> moves;        // in the order applied
    std::size_t vertex = 0;             // jigsaw vertex index, 0 = Infinity (HitVertex)
    std::size_t cycle_start = 0;        // move index where the cycle starts (Cycle)
    std::size_t cycle_length = 0;
    std::size_t steps = 0;
};

/// `vertices` are the finite jigsaw vertices v_1 < ... < v_{N+1}; `length`
/// is the fundamental length. height_bits bounds the bit size of numerator
/// and denominator (0 = no bound).
WalkResult cutting_walk(std::span<const ProjectiveMatrix> generators, std::span<const Rational> vertices,
                        const Integer& length, const Rational& x, std::size_t budget,
                        std::size_t height_bits = 0);

/// Runs cutting_walk over every candidate and returns the index of the first
/// candidate (in input order) whose walk ends in a cycle, with its result.
struct CycleSearchResult {
    std::optional<std::size_t> index;
    WalkResult walk;
    std::size_t walks = 0;
};
CycleSearchResult first_cycle_serial(std::span<const ProjectiveMatrix> generators, std::span<const Rational> vertices,
                                     const Integer& length, std::span<const Rational> candidates, std::size_t budget,
                                     std::size_t height_bits);
CycleSearchResult first_cycle_parallel(std::span<const ProjectiveMatrix> generators,
                                       std::span<const Rational> vertices, const Integer& length,
                                       std::span<const Rational> candidates,
                                       std::size_t budget, std::size_t height_bits, int workers = 0);

}  // namespace jigsaw::kernels
