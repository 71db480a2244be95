#pragma once

#include <stdexcept>
#include <string>

namespace racah {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define RACAH_DEFINE_ERROR(Name)                                               \
    struct Name : Error {                                                      \
        using Error::Error;                                                    \
    }

RACAH_DEFINE_ERROR(DimensionMismatch);
RACAH_DEFINE_ERROR(SingularSystem);
RACAH_DEFINE_ERROR(NonCommuting);
RACAH_DEFINE_ERROR(IncompleteSpectrum);
RACAH_DEFINE_ERROR(NotInvariant);
RACAH_DEFINE_ERROR(NonPolynomialResult);
RACAH_DEFINE_ERROR(PoleAtPoint);
RACAH_DEFINE_ERROR(PoleOnGrid);
RACAH_DEFINE_ERROR(LabelCollision);
RACAH_DEFINE_ERROR(EmptySubset);
RACAH_DEFINE_ERROR(RepeatedIndex);
RACAH_DEFINE_ERROR(UnsupportedRealization);
RACAH_DEFINE_ERROR(InsufficientSites);
RACAH_DEFINE_ERROR(RelationFailure);
RACAH_DEFINE_ERROR(NotAChain);
RACAH_DEFINE_ERROR(NotAdjacent);
RACAH_DEFINE_ERROR(NoPath);
RACAH_DEFINE_ERROR(DivisionByZero);
RACAH_DEFINE_ERROR(NotInKernel);
RACAH_DEFINE_ERROR(BadInput);

#undef RACAH_DEFINE_ERROR

} // namespace racah
