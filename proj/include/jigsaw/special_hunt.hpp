#pragma once

#include "jigsaw/cusp_cover.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace jigsaw {

/// A hyperbolic element with rational fixed points. Its existence shows the
/// group is not pseudomodular.
struct SpecialCertificate {
    std::string group;
    Word word;
    ProjectiveMatrix matrix;
    std::pair<Rational, Rational> fixed_points;  // increasing
    Rational trace_squared;                      // (a+d)^2 of the stored matrix
    Integer det;
};

/// Builds and checks a certificate for the word, or nullopt when the word is
/// not special.
std::optional<SpecialCertificate> make_certificate(const JigsawGroup& g, const Word& w);

/// Re-derives everything from the word: matrix, trace^2 > 4 det, both fixed
/// points exactly fixed.
VerifyReport verify_certificate(const SpecialCertificate& c, const JigsawGroup& g);

std::vector<SpecialCertificate> word_scan(const JigsawGroup& g, std::size_t max_word_length,
                                          const SearchOptions& opts = {});

struct CuspWitness {
    Word word;  // maps the candidate to Infinity
};

struct Exhausted {
    std::size_t states = 0;
    std::string reason;
};

using ProbeResult = std::variant<CuspWitness, SpecialCertificate, Exhausted>;

/// Follows the orbit of the candidate along its cutting sequence through the
/// jigsaw. Reaching a vertex yields a cusp witness; a repeated state yields
/// the element w1^-1 w2 fixing the candidate, kept when hyperbolic.
/// height_bits = 0 leaves heights unbounded.
ProbeResult orbit_probe(const JigsawGroup& g, const Rational& candidate, std::size_t budget,
                        std::size_t height_bits = 0);

/// Special elements of W_n for n = 8k (k >= 1), 8k+2 (k >= 1), 8k+6 (k >= 0).
/// Throws UnsupportedResidue otherwise.
SpecialCertificate theorem2_certificate(long n);
Word theorem2_word(long n);

/// Reduced rationals in [lo, hi) with denominators 1..max_height, ordered by
/// denominator then value.
std::vector<Rational> candidates_by_height(const Rational& lo, const Rational& hi, long max_height);

struct Budgets {
    std::size_t max_word_length = 14;   // word_scan
    std::size_t max_words = 2000000;    // caps the scan length for large ranks
    std::size_t max_orbit = 4000;       // walk states per candidate
    long max_height = 40;               // candidate denominators
    std::size_t height_bits = 256;      // walks abandon larger points
    std::size_t max_witness_length = 8; // even-word arithmeticity scan
    CoverOptions cover;
    SearchOptions search;
};

struct ContainsSpecial {
    SpecialCertificate certificate;
    std::string stage;  // which search produced it
};
struct CuspSetFull {
    CoverProof proof;
};
struct Undetermined {
    std::string report;
    std::vector<Gap> gaps;
};
using HuntVerdict = std::variant<ContainsSpecial, CuspSetFull, Undetermined>;

struct SurveyRow {
    std::string group;
    HuntVerdict verdict;
    std::size_t words_scanned_up_to = 0;
    std::size_t candidates_probed = 0;
    double seconds = 0;
};

/// Longest scan length within both max_word_length and max_words.
std::size_t scan_length(const JigsawGroup& g, const Budgets& b);

/// Resume point and progress hook for the orbit-probe stage. Candidates are
/// probed in chunks; after each chunk on_chunk receives the index of the
/// next unprobed candidate. The verdict does not depend on the chunking.
struct HuntProgress {
    std::size_t next_candidate = 0;
    std::size_t chunk = 256;
    std::function<void(std::size_t)> on_chunk;
};

/// The special searches of hunt() without the cover attempt. Progress
/// counters go to `row` when given.
std::optional<ContainsSpecial> find_special(const JigsawGroup& g, const Budgets& b, SurveyRow* row = nullptr,
                                            const HuntProgress* progress = nullptr);

/// The n = 0, 2, 6 mod 8 family when it applies, then word_scan, then orbit probes over
/// candidates by increasing height in [0, l), then a cover attempt. Returns
/// the first decisive verdict.
SurveyRow hunt(const JigsawGroup& g, const Budgets& b, const HuntProgress* progress = nullptr);
std::vector<SurveyRow> survey(const std::vector<JigsawGroup>& groups, const Budgets& b);

/// n for groups named "W n", otherwise nullopt.
std::optional<long> weierstrass_index(const JigsawGroup& g);

}  // namespace jigsaw
