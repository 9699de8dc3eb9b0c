#include "lrho/invariants.hpp"

#include <cmath>

namespace lrho {

namespace {

struct PairResult {
    long lambda, rho;
    HopfDiagnostics dl, dr;
};

PairResult lambda_rho_at(const MapExpr& m, const Eigen::Vector4d& x, double eps,
                         const LambdaRhoOptions& opt) {
    HopfOptions h;
    h.seed = opt.seed;
    h.p = opt.p;
    h.q = opt.q;
    h.trace = opt.trace;

    PairResult out{0, 0, {}, {}};
    const FieldPtr lf = make_map_field(m, Side::L);
    const FieldPtr rf = make_map_field(m, Side::R);
    // Note the sign: lambda is minus the Hopf invariant of the l-route.
    out.lambda = -hopf_invariant(lf, x, eps, h, &out.dl);
    out.rho = hopf_invariant(rf, x, eps, h, &out.dr);
    return out;
}

void fill_diag(InvariantReport& rep, const PairResult& r, const char* tag) {
    const std::string t(tag);
    rep.diagnostics["l_components_p" + t] = double(r.dl.components_p);
    rep.diagnostics["l_components_q" + t] = double(r.dl.components_q);
    rep.diagnostics["r_components_p" + t] = double(r.dr.components_p);
    rep.diagnostics["r_components_q" + t] = double(r.dr.components_q);
    rep.diagnostics["max_vertex_residual" + t] =
        std::max(r.dl.max_vertex_residual, r.dr.max_vertex_residual);
    rep.diagnostics["max_linking_residual" + t] =
        std::max(r.dl.max_linking_residual, r.dr.max_linking_residual);
    rep.diagnostics["value_rotations" + t] =
        double(r.dl.rotations_used + r.dr.rotations_used);
}

}  // namespace

InvariantReport lambda_rho(const MapExpr& m, const Eigen::Vector4d& x,
                           const LambdaRhoOptions& opt) {
    const Cplx z0(x[0], x[1]), w0(x[2], x[3]);
    (void)z0;
    (void)w0;

    const bool automatic = opt.eps <= 0;
    const double eps0 = automatic ? 0.5 : opt.eps;

    IsolatednessReport probe;
    if (opt.run_probe) {
        probe = isolatedness_probe(m, x, eps0, opt.seed);
        if (!probe.pass) {
            throw CriticalPoint(
                "isolatedness probe failed at eps=" + std::to_string(eps0) +
                " (min residual " + std::to_string(probe.min_residual) + ")");
        }
    }

    InvariantReport rep;
    if (!automatic) {
        const PairResult r = lambda_rho_at(m, x, eps0, opt);
        rep = InvariantReport::make(r.lambda, r.rho, eps0);
        fill_diag(rep, r, "");
    } else {
        constexpr double kFloor = 1e-3;
        double eps = eps0;
        PairResult coarse = lambda_rho_at(m, x, eps, opt);
        bool settled = false;
        while (eps / 2.0 >= kFloor) {
            const PairResult fine = lambda_rho_at(m, x, eps / 2.0, opt);
            if (fine.lambda == coarse.lambda && fine.rho == coarse.rho) {
                rep = InvariantReport::make(coarse.lambda, coarse.rho, eps);
                fill_diag(rep, coarse, "");
                fill_diag(rep, fine, "_half");
                rep.diagnostics["eps_pair_fine"] = eps / 2.0;
                settled = true;
                break;
            }
            eps /= 2.0;
            coarse = fine;
        }
        if (!settled) {
            throw EpsilonUnstable(
                "no two successive radii agreed before the 1e-3 floor");
        }
    }

    if (opt.run_probe) {
        rep.diagnostics["probe_min_residual"] = probe.min_residual;
        rep.diagnostics["probe_min_normalized"] = probe.min_normalized;
    }
    return rep;
}

}  // namespace lrho
