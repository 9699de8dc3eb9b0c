#pragma once

#include <stdexcept>
#include <string>

namespace lrho {

// Base for every error this library raises on purpose. Catching LrhoError
// separates expected numeric/usage failures from genuine bugs.
struct LrhoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A 2-frame whose span is too close to degenerate to trust.
struct DegenerateFrame : LrhoError {
    using LrhoError::LrhoError;
};

// Argument expected on the unit 3-sphere is not.
struct NotOnSphere : LrhoError {
    using LrhoError::LrhoError;
};

// Expression text does not conform to the grammar.
struct ParseError : LrhoError {
    ParseError(std::size_t position, const std::string& expected,
               const std::string& message)
        : LrhoError(message), pos(position), expected_tokens(expected) {}
    std::size_t pos;
    std::string expected_tokens;
};

// The (*) field vector vanishes: the point is (numerically) critical.
struct CriticalPoint : LrhoError {
    using LrhoError::LrhoError;
};

// Sphere sampling produced no converged preimage seed.
struct NoSeedsFound : LrhoError {
    using LrhoError::LrhoError;
};

// The target value is not regular along the preimage; caller perturbs it.
struct NotRegular : LrhoError {
    using LrhoError::LrhoError;
};

// Curve continuation exhausted its step budget without closing up.
struct Diverged : LrhoError {
    using LrhoError::LrhoError;
};

// The orientation determinant is below tolerance at every probed vertex.
struct AmbiguousOrientation : LrhoError {
    using LrhoError::LrhoError;
};

// No admissible stereographic pole far enough from both curves.
struct PoleTooClose : LrhoError {
    using LrhoError::LrhoError;
};

// The Gauss integral did not land near an integer; curves under-resolved.
struct NonIntegerLinking : LrhoError {
    using LrhoError::LrhoError;
};

// No two successive radii produced matching invariants before the floor.
struct EpsilonUnstable : LrhoError {
    using LrhoError::LrhoError;
};

// Two independent perturbations of a multiplicity count disagree.
struct UnstableCount : LrhoError {
    using LrhoError::LrhoError;
};

}  // namespace lrho
