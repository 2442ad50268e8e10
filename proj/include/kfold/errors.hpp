#pragma once

#include <stdexcept>
#include <string>

namespace kfold {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionCapExceeded final : Error { using Error::Error; };
struct DimensionMismatch final : Error { using Error::Error; };
struct LengthMismatch final : Error { using Error::Error; };
struct InvalidPermutation final : Error { using Error::Error; };
struct IndexOutOfRange final : Error { using Error::Error; };
struct TupleTooLarge final : Error { using Error::Error; };
struct IndexInTuple final : Error { using Error::Error; };
struct EmptySubspace final : Error { using Error::Error; };
struct ParameterOutOfRange final : Error { using Error::Error; };
struct NotOrbitInvariant final : Error { using Error::Error; };
struct NotDensityMatrix final : Error { using Error::Error; };
struct NotNormalized final : Error { using Error::Error; };
struct NotUnitary final : Error { using Error::Error; };
struct NormDrift final : Error { using Error::Error; };
struct UnsupportedK final : Error { using Error::Error; };
struct ReadoutUndefined final : Error { using Error::Error; };
struct ProfileTooShort final : Error { using Error::Error; };
struct NotAPOVM final : Error { using Error::Error; };
struct IncompleteMeasurement final : Error { using Error::Error; };

}  // namespace kfold
