#pragma once

#include "jigsaw/special_hunt.hpp"

#include <optional>
#include <string>
#include <variant>

namespace jigsaw {

/// An even-length word whose scale-invariant trace square is not an
/// integer. Even words lie in the subgroup generated by squares, so a
/// non-integral trace square there rules out commensurability with PSL(2,Z).
/// The remaining hypotheses of the trace criterion (finite covolume, trace
/// field Q) are assumed, not checked.
struct ArithmeticityWitness {
    std::string group;
    Word word;
    ProjectiveMatrix matrix;
    Rational trace_squared_over_det;
    /// "vertical sides", "generator pair", "vertical tiles" or "even word scan".
    std::string construction;
};

/// Tries, in order: the two vertical exterior sides of the jigsaw, any pair
/// of generators, pairs of exterior vertical sides of the tessellation over
/// two fundamental lengths, and finally all even words up to max_word_length.
std::optional<ArithmeticityWitness> arithmeticity_witness(const JigsawGroup& g, std::size_t max_word_length);

VerifyReport verify_witness(const ArithmeticityWitness& w, const JigsawGroup& g);

/// ((x1 - x2)^2 + s1 + s2)^2 / (s1 s2): trace square of the product of the
/// rotations about (x1, sqrt s1) and (x2, sqrt s2).
Rational rotation_pair_trace_square(const MarkedPoint& p, const MarkedPoint& q);

struct Pseudomodular {
    CoverProof cover;
    ArithmeticityWitness witness;
};
struct NotPseudomodular {
    SpecialCertificate certificate;
};
struct CuspSetFullOnly {
    CoverProof cover;
};
struct UndeterminedVerdict {
    std::string report;
};
using GroupVerdict = std::variant<Pseudomodular, NotPseudomodular, CuspSetFullOnly, UndeterminedVerdict>;

std::string verdict_name(const GroupVerdict& v);

/// Runs the cover and the special searches. Throws InconsistentGroup if both
/// succeed. Every attached proof is re-verified before it is returned.
GroupVerdict verdict(const JigsawGroup& g, const Budgets& b);

/// Re-checks every sub-proof a verdict carries.
VerifyReport verify_verdict(const GroupVerdict& v, const JigsawGroup& g);

}  // namespace jigsaw
