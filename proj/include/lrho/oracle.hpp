#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "lrho/polymap.hpp"

namespace lrho {

// Local intersection multiplicity at x of two complex-analytic plane curves
// {h1 = 0} and {h2 = 0}, counted as the number of solutions of the perturbed
// system h1 = d1, h2 = d2 inside a small polydisk, via multi-start Newton.
// Two independent perturbations must agree (UnstableCount otherwise).
long intersection_mult_analytic(const MapExpr& h1, const MapExpr& h2,
                                const Eigen::Vector4d& x, std::uint64_t seed = 0);

// Milnor's mu of a complex polynomial at an isolated critical point:
// the intersection number of {f_z = 0} and {f_w = 0}.
long milnor_oracle(const MapExpr& m, const Eigen::Vector4d& x, std::uint64_t seed = 0);

// One factor of a half-complex cycle: the analytic model h together with
// whether the cycle carries h itself or its conjugate, and an explicit sign.
struct CycleFactor {
    MapExpr model;
    bool conjugated{false};
    int sign{1};
};

using CycleFactors = std::vector<CycleFactor>;

// Intersection number of two cycles given as signed products of analytic and
// conjugate-analytic factors: sum over factor pairs of
// sign_a * sign_b * (-1)^{#conjugated in the pair} * multiplicity.
// Factors with no zero at x are discarded. The -i-half twist, where one is
// due, is expected to be carried by the caller's signs.
long halfcomplex_intersection_oracle(const CycleFactors& a, const CycleFactors& b,
                                     const Eigen::Vector4d& x, std::uint64_t seed = 0);

// Winding number of zeta |-> e(zeta, conj(zeta)) around a small circle:
// the intersection number of the oriented surface {w = conj(z)},
// parametrized by z, with the analytic curve {e = 0}.
long winding_on_conj_graph(const MapExpr& e, const Eigen::Vector4d& x,
                           double radius = 1e-2);

// Intersection number of the parametrized cycle {w = conj(z)} with a signed
// factor list, by winding numbers.
long conj_graph_vs_cycle(const CycleFactors& cycle, const Eigen::Vector4d& x);

}  // namespace lrho
