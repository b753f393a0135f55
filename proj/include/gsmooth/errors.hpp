#pragma once

#include <stdexcept>
#include <string>

namespace gsmooth {

// Validation errors are bad inputs (CLI exit 2); numerical errors are
// failures of a well-formed computation (CLI exit 1).
enum class ErrorCategory { validation, numerical };

class Error : public std::runtime_error {
public:
    Error(std::string kind, ErrorCategory category, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)), category_(category) {}

    const std::string& kind() const noexcept { return kind_; }
    ErrorCategory category() const noexcept { return category_; }

private:
    std::string kind_;
    ErrorCategory category_;
};

#define GSMOOTH_DEFINE_ERROR(Name, Category)                                   \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& message)                              \
            : Error(#Name, ErrorCategory::Category, message) {}                \
    };

GSMOOTH_DEFINE_ERROR(InvalidSpec, validation)
GSMOOTH_DEFINE_ERROR(InvalidGrid, validation)
GSMOOTH_DEFINE_ERROR(TruncationError, validation)
GSMOOTH_DEFINE_ERROR(DimensionMismatch, validation)
GSMOOTH_DEFINE_ERROR(GridTooCoarse, validation)
GSMOOTH_DEFINE_ERROR(KernelExceedsGrid, validation)
GSMOOTH_DEFINE_ERROR(UnphysicalS, validation)
GSMOOTH_DEFINE_ERROR(UnphysicalEfficiency, validation)
GSMOOTH_DEFINE_ERROR(InsufficientSamples, validation)

GSMOOTH_DEFINE_ERROR(LeakageError, numerical)
GSMOOTH_DEFINE_ERROR(AliasingError, numerical)
GSMOOTH_DEFINE_ERROR(BoundaryMassError, numerical)
GSMOOTH_DEFINE_ERROR(NotInSpan, numerical)
GSMOOTH_DEFINE_ERROR(ParamMismatch, numerical)
GSMOOTH_DEFINE_ERROR(NonPhysicalDistribution, numerical)
GSMOOTH_DEFINE_ERROR(InvalidField, numerical)

#undef GSMOOTH_DEFINE_ERROR

}  // namespace gsmooth
