// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace qmeas {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define QMEAS_DEFINE_ERROR(Name)                                               \
    class Name : public Error {                                                \
      public:                                                                  \
        explicit Name(const std::string& what) : Error(what) {}                \
    }

QMEAS_DEFINE_ERROR(NonSquare);
QMEAS_DEFINE_ERROR(DimensionMismatch);
QMEAS_DEFINE_ERROR(UnknownLabel);
QMEAS_DEFINE_ERROR(NotHermitian);
QMEAS_DEFINE_ERROR(NotPositive);
QMEAS_DEFINE_ERROR(NotNormalized);
QMEAS_DEFINE_ERROR(NotIsometry);
QMEAS_DEFINE_ERROR(NotUnitary);
QMEAS_DEFINE_ERROR(NotProjective);
QMEAS_DEFINE_ERROR(SpaceMismatch);
QMEAS_DEFINE_ERROR(ZeroProbabilityCondition);
QMEAS_DEFINE_ERROR(ProbabilityOutOfRange);
QMEAS_DEFINE_ERROR(InvalidPovm);
QMEAS_DEFINE_ERROR(HeterogeneousFamily);
QMEAS_DEFINE_ERROR(IndexOutOfRange);
QMEAS_DEFINE_ERROR(OrderViolation);
QMEAS_DEFINE_ERROR(LengthMismatch);
QMEAS_DEFINE_ERROR(KindMismatch);
QMEAS_DEFINE_ERROR(ParseError);
QMEAS_DEFINE_ERROR(ValidationFailure);

#undef QMEAS_DEFINE_ERROR

}  // namespace qmeas
