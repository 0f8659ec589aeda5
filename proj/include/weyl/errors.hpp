#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace weyl {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class MixedRings : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

/// Division requested in a ring where the divisor has no inverse.
class NonInvertible : public Error {
public:
    using Error::Error;
};

/// Exact division by a prime failed; the dividend was not a multiple.
class NotDivisible : public Error {
public:
    using Error::Error;
};

class SignatureMismatch : public Error {
public:
    using Error::Error;
};

class NegativeExponent : public Error {
public:
    using Error::Error;
};

class UnsupportedRing : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

class NotValidated : public Error {
public:
    using Error::Error;
};

/// A defining relation fails for a candidate endomorphism. Carries every
/// violated pair together with the value of the offending commutator.
struct RelationViolation {
    std::size_t i = 0;  // 1-based generator indices
    std::size_t j = 0;
    std::string commutator;  // rendered value of [image_i, image_j]
};

class RelationViolated : public Error {
public:
    RelationViolated(const std::string& what, std::vector<RelationViolation> violations)
        : Error(what), violations_(std::move(violations)) {}

    const std::vector<RelationViolation>& violations() const { return violations_; }

private:
    std::vector<RelationViolation> violations_;
};

/// The coefficient projection produced a result outside the coefficient ring.
class NotScalar : public Error {
public:
    using Error::Error;
};

/// A series exceeded its termination guard cap.
class NonTerminating : public Error {
public:
    using Error::Error;
};

/// Candidate inverse failed the two-sided composition check.
class VerificationFailed : public Error {
public:
    using Error::Error;
};

/// The computed inverse degree exceeds the proven bound. Must never fire;
/// firing indicates an implementation bug.
class BoundViolated : public Error {
public:
    using Error::Error;
};

/// Inversion requires the central generators to be fixed pointwise.
class UnsupportedCentralImage : public Error {
public:
    using Error::Error;
};

class NotCentralInput : public Error {
public:
    using Error::Error;
};

class CenterNotPreserved : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Chain-rule matrix identity violated; indicates an implementation bug.
class IdentityFailed : public Error {
public:
    using Error::Error;
};

/// Jacobian determinant is not a unit constant; the rejection side of the
/// certificate.
class DeterminantNotUnit : public Error {
public:
    using Error::Error;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t offset)
        : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class UnknownVariable : public Error {
public:
    using Error::Error;
};

class ExponentTooLarge : public Error {
public:
    using Error::Error;
};

}  // namespace weyl
