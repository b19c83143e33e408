#pragma once

#include <stdexcept>
#include <string>

namespace meanclt {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input data failed validation (bad JSON, NaN/Inf, nonpositive probs, mass error).
class InputError : public Error {
public:
    using Error::Error;
};

/// Scalar argument outside its admissible range.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Operation requires positive variance but the distribution is (near) a point mass.
class DegenerateDistribution : public Error {
public:
    using Error::Error;
};

/// Operation requires mean zero but the input is not centered.
class NonCenteredInput : public Error {
public:
    using Error::Error;
};

/// Mixture component violates the mean-zero requirement.
class NonCenteredComponent : public Error {
public:
    using Error::Error;
};

/// Mixture has zero total variance.
class DegenerateMixture : public Error {
public:
    using Error::Error;
};

/// Scaling by zero requested.
class ZeroScale : public Error {
public:
    using Error::Error;
};

/// Operation requires a standardized (mean 0, variance 1) distribution.
class NotStandardized : public Error {
public:
    using Error::Error;
};

/// Two-point decomposition rejects distributions with an atom at zero.
class AtomAtZero : public Error {
public:
    using Error::Error;
};

/// Two-point decomposition needs mass on both sides of zero.
class OneSidedSupport : public Error {
public:
    using Error::Error;
};

/// Three-point split called with the wrong number of support points.
class WrongSupportSize : public Error {
public:
    using Error::Error;
};

/// Three-point split cannot handle a middle support point at zero.
class ZeroMiddlePoint : public Error {
public:
    using Error::Error;
};

/// Arguments violate the required ordering x < y < 0 < z.
class OrderingViolation : public Error {
public:
    using Error::Error;
};

/// Convolution support would exceed the configured guard.
class SupportBlowup : public Error {
public:
    using Error::Error;
};

/// Grid specification produced no admissible evaluation points.
class EmptyGrid : public Error {
public:
    using Error::Error;
};

/// Mixture splitting recursed past the depth cap.
class MixtureBlowup : public Error {
public:
    using Error::Error;
};

}  // namespace meanclt
