#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lrho/oracle.hpp"

namespace lrho {

// Independent route to one invariant of a registry map.
struct OracleSide {
    enum class Kind {
        None,              // no intersection-number route for this side
        ConstantField,     // the plane field is constant; the invariant is 0
        Cycles,            // halfcomplex_intersection_oracle on a x b
        ConjGraphVsCycles  // {w = conj z} replacement paired with b
    };
    Kind kind{Kind::None};
    CycleFactors a, b;
};

struct RegistryEntry {
    std::string name;
    std::string map_src;
    std::array<double, 4> point{0, 0, 0, 0};
    std::optional<long> expected_lambda, expected_rho, expected_mu;
    std::string notes;
    OracleSide lambda_oracle, rho_oracle;
    bool use_milnor{false};      // mu via milnor_oracle (analytic maps)
    bool invariants_run{true};   // false: probe-only entry (non-isolated)
    bool expect_probe_pass{true};
};

// Built-in machine-readable form of the worked examples.
const std::vector<RegistryEntry>& registry();

const RegistryEntry* find_entry(const std::string& name);

// Evaluates the intersection-number route of one side; nullopt if none.
std::optional<long> oracle_value(const OracleSide& side, const Eigen::Vector4d& x,
                                 std::uint64_t seed);

// Combined mu from the oracles of an entry: milnor for analytic maps, else
// the sum of the per-side intersection routes when both exist.
std::optional<long> entry_mu_oracle(const RegistryEntry& e, std::uint64_t seed);

}  // namespace lrho
