#pragma once

#include <map>
#include <optional>
#include <string>

#include "lrho/linking.hpp"
#include "lrho/polymap.hpp"

namespace lrho {

// Result record of one lambda/rho computation. tau and mu fields are
// derived: tau+ = -lambda, tau- = rho - 1, mu_from_sum = lambda + rho.
// mu_oracle, when present, is an independently computed value and is
// reported as-is, never reconciled.
struct InvariantReport {
    long lambda{0};
    long rho{0};
    long tau_plus{0};
    long tau_minus{0};
    long mu_from_sum{0};
    std::optional<long> mu_oracle;
    double epsilon_used{0};
    std::map<std::string, double> diagnostics;

    static InvariantReport make(long lambda, long rho, double eps) {
        InvariantReport r;
        r.lambda = lambda;
        r.rho = rho;
        r.tau_plus = -lambda;
        r.tau_minus = rho - 1;
        r.mu_from_sum = lambda + rho;
        r.epsilon_used = eps;
        return r;
    }
};

struct LambdaRhoOptions {
    std::uint64_t seed{0};
    // eps <= 0 means AUTO: halve from 0.5 until two successive radii agree.
    double eps{-1.0};
    Eigen::Vector3d p{1, 0, 0};
    Eigen::Vector3d q{-1, 0, 0};
    TraceParams trace;
    bool run_probe{true};
};

// lambda = -H(l o <Df> o E), rho = +H(r o <Df> o E) over S^3(x; eps).
// With AUTO, requires lambda and rho to agree at eps and eps/2, halving from
// 0.5 down to a floor of 1e-3 (EpsilonUnstable otherwise). The isolatedness
// probe gates the initial radius.
InvariantReport lambda_rho(const MapExpr& m, const Eigen::Vector4d& x,
                           const LambdaRhoOptions& opt = {});

}  // namespace lrho
