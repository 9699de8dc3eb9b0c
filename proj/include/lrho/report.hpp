#pragma once

#include <Eigen/Core>
#include <string>

#include "lrho/invariants.hpp"

namespace lrho {

// Fixed-order structured text: map, point, epsilon_used, lambda, rho,
// tau_plus, tau_minus, mu_from_sum, mu_oracle, diagnostics. Stable ordering
// keeps diffs meaningful; two runs with the same seed are byte-identical.
std::string format_report(const std::string& map_src, const Eigen::Vector4d& point,
                          const InvariantReport& rep);

}  // namespace lrho
