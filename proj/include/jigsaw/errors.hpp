#pragma once

#include <stdexcept>
#include <string>

namespace jigsaw {

// Base class for every error raised by the library. The concrete subclasses
// mirror the failure modes of the individual operations so callers can catch
// exactly what they expect.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define JIGSAW_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                     \
    public:                                                         \
        explicit Name(const std::string& what) : Error(what) {}     \
    }

JIGSAW_DEFINE_ERROR(SingularMatrix);
JIGSAW_DEFINE_ERROR(NegativeDeterminant);
JIGSAW_DEFINE_ERROR(IdentityMatrix);
JIGSAW_DEFINE_ERROR(NonPositiveHeight);
JIGSAW_DEFINE_ERROR(ParseError);
JIGSAW_DEFINE_ERROR(EmptyJigsaw);
JIGSAW_DEFINE_ERROR(NotATranslation);
JIGSAW_DEFINE_ERROR(BudgetExceeded);
JIGSAW_DEFINE_ERROR(UnsupportedTileType);
JIGSAW_DEFINE_ERROR(EmptyFingerprint);
JIGSAW_DEFINE_ERROR(FixesInfinity);
JIGSAW_DEFINE_ERROR(NoCoveringInterval);
JIGSAW_DEFINE_ERROR(UnsupportedResidue);
JIGSAW_DEFINE_ERROR(InconsistentGroup);
JIGSAW_DEFINE_ERROR(InvalidArgument);

#undef JIGSAW_DEFINE_ERROR

}  // namespace jigsaw
