#include "lrho/registry.hpp"

namespace lrho {

namespace {

CycleFactor factor(const std::string& src, bool conjugated, int sign) {
    return {MapExpr::parse(src), conjugated, sign};
}

OracleSide constant_side() {
    OracleSide s;
    s.kind = OracleSide::Kind::ConstantField;
    return s;
}

OracleSide cycles(CycleFactors a, CycleFactors b) {
    OracleSide s;
    s.kind = OracleSide::Kind::Cycles;
    s.a = std::move(a);
    s.b = std::move(b);
    return s;
}

OracleSide conj_graph(CycleFactors b) {
    OracleSide s;
    s.kind = OracleSide::Kind::ConjGraphVsCycles;
    s.b = std::move(b);
    return s;
}

std::vector<RegistryEntry> build() {
    std::vector<RegistryEntry> v;

    {
        RegistryEntry e;
        e.name = "regular-point";
        e.map_src = "z";
        e.expected_lambda = 0;
        e.expected_rho = 0;
        e.expected_mu = 0;
        e.notes = "regular point; both plane fields constant, unknotted local link";
        e.lambda_oracle = constant_side();
        e.rho_oracle = constant_side();
        e.use_milnor = true;
        v.push_back(std::move(e));
    }
    {
        RegistryEntry e;
        e.name = "trefoil";
        e.map_src = "z^2 + w^3";
        e.expected_lambda = 0;
        e.expected_rho = 2;
        e.expected_mu = 2;
        e.notes = "right trefoil, cusp of a complex plane curve; lambda 0, rho = mu";
        e.lambda_oracle = constant_side();
        // R*(i) is the conjugate curve of {f_w = 0}; R*(-i) is {f_z = 0}
        // carried with the opposite orientation.
        e.rho_oracle = cycles({factor("3*w^2", true, +1)}, {factor("2*z", false, -1)});
        e.use_milnor = true;
        v.push_back(std::move(e));
    }
    {
        RegistryEntry e;
        e.name = "trefoil-mirror";
        e.map_src = "zb^2 + w^3";
        e.expected_lambda = 2;
        e.expected_rho = 0;
        e.expected_mu = 2;
        e.notes = "left trefoil, mirror of z^2 + w^3; invariants swap";
        // The l-route field equation is z w^2 = 0 up to units; {z = 0} lies
        // over +i, {w^2 = 0} over -i, both with their natural multiplicity.
        e.lambda_oracle = cycles({factor("z", false, +1)}, {factor("w^2", false, +1)});
        e.rho_oracle = constant_side();
        v.push_back(std::move(e));
    }
    {
        RegistryEntry e;
        e.name = "figure8-F";
        e.map_src = "w^3 - 3*abs2(z)*(1 + z - zb)*w - 2*(z + zb)";
        e.expected_lambda = 0;
        e.expected_rho = 0;
        e.expected_mu = 0;
        e.notes = "genuine critical point with unknotted local link; half-complex, "
                  "cycles approximated by w = +-|z| do not factor, no oracle route";
        v.push_back(std::move(e));
    }
    {
        RegistryEntry e;
        e.name = "figure8-G";
        e.map_src = "w^3 - 3*abs2(z)^2*(1 + z^2 - zb^2)*w - 2*(z^2 + zb^2)";
        e.expected_lambda = 1;
        e.expected_rho = 1;
        e.expected_mu = 2;
        e.notes = "figure-8 knot (amphicheiral, mu 2) from G(z, w) = F(z^2, w)";
        v.push_back(std::move(e));
    }
    {
        RegistryEntry e;
        e.name = "mixed-cusp-product";
        e.map_src = "(z^2 + w^3)*conj(z^3 + w^2)";
        e.expected_lambda = 1;
        e.expected_rho = 2;
        e.expected_mu = 3;
        e.notes = "product of a cusp with a conjugated cusp; iterated torus link, "
                  "neither a complex-curve link nor the mirror of one";
        // L*(i) = {z conj(f) = 0}, and {w conj(g) (4 - 9 z w) = 0} is the
        // -i half already carrying its twist sign.
        e.lambda_oracle = cycles(
            {factor("z", false, +1), factor("z^2 + w^3", true, +1)},
            {factor("w", false, +1), factor("z^3 + w^2", true, +1),
             factor("4 - 9*z*w", false, +1)});
        // R*(i) meets a neighborhood of 0 the way {w - zb = 0} does;
        // {z conj(w) = 0} is the twisted -i half.
        e.rho_oracle = conj_graph({factor("z", false, +1), factor("w", true, +1)});
        v.push_back(std::move(e));
    }
    {
        RegistryEntry e;
        e.name = "mixed-equal-product";
        e.map_src = "(z^2 + w^2)*conj(z^2 + w^2)";
        e.notes = "equal exponents: |z^2 + w^2|^2 is real, every point of the "
                  "curve z^2 + w^2 = 0 is critical, the origin is not isolated";
        e.invariants_run = false;
        e.expect_probe_pass = false;
        v.push_back(std::move(e));
    }
    return v;
}

}  // namespace

const std::vector<RegistryEntry>& registry() {
    static const std::vector<RegistryEntry> r = build();
    return r;
}

const RegistryEntry* find_entry(const std::string& name) {
    for (const auto& e : registry()) {
        if (e.name == name) return &e;
    }
    return nullptr;
}

std::optional<long> oracle_value(const OracleSide& side, const Eigen::Vector4d& x,
                                 std::uint64_t seed) {
    switch (side.kind) {
        case OracleSide::Kind::None: return std::nullopt;
        case OracleSide::Kind::ConstantField: return 0;
        case OracleSide::Kind::Cycles:
            return halfcomplex_intersection_oracle(side.a, side.b, x, seed);
        case OracleSide::Kind::ConjGraphVsCycles:
            return conj_graph_vs_cycle(side.b, x);
    }
    return std::nullopt;
}

std::optional<long> entry_mu_oracle(const RegistryEntry& e, std::uint64_t seed) {
    const Eigen::Vector4d x(e.point[0], e.point[1], e.point[2], e.point[3]);
    if (e.use_milnor) {
        return milnor_oracle(MapExpr::parse(e.map_src), x, seed);
    }
    const auto l = oracle_value(e.lambda_oracle, x, seed);
    const auto r = oracle_value(e.rho_oracle, x, seed);
    if (l && r) return *l + *r;
    return std::nullopt;
}

}  // namespace lrho
