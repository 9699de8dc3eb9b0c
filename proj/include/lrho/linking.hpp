#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "lrho/tracer.hpp"

namespace lrho {

// Linking number of two disjoint closed oriented curves on the same sphere:
// stereographic projection from a pole far from both, then the discretized
// Gauss double integral, rounded to the nearest integer.
// Throws PoleTooClose / NonIntegerLinking.
long linking_number(const OrientedCurve& a, const OrientedCurve& b,
                    std::uint64_t seed = 0, double* raw_out = nullptr);

struct HopfOptions {
    std::uint64_t seed{0};
    Eigen::Vector3d p{1, 0, 0};
    Eigen::Vector3d q{-1, 0, 0};
    TraceParams trace;
    int max_rotations{8};
};

struct HopfDiagnostics {
    std::size_t components_p{0};
    std::size_t components_q{0};
    int rotations_used{0};
    double max_vertex_residual{0};
    double max_linking_residual{0};
    double min_separation{0};
};

// Hopf invariant of the field over S^3(x; eps): the total linking number of
// the preimages of two regular values. Empty preimages contribute zero. On a
// non-regular value the pair (p, q) is rotated by a small random rotation
// and the computation retried.
long hopf_invariant(const FieldPtr& field, const Eigen::Vector4d& x, double eps,
                    const HopfOptions& opt = {}, HopfDiagnostics* diag = nullptr);

}  // namespace lrho
