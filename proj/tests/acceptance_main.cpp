// Acceptance suite: one line per criterion, exit nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "lrho/invariants.hpp"
#include "lrho/registry.hpp"
#include "lrho/rng.hpp"

using namespace lrho;

namespace {

const Eigen::Vector4d kOrigin = Eigen::Vector4d::Zero();
constexpr std::uint64_t kSeed = 0;

int g_failures = 0;

class Criterion {
  public:
    explicit Criterion(std::string name) : name_(std::move(name)) {
        start_ = std::chrono::steady_clock::now();
    }

    void expect(bool ok, const std::string& detail) {
        ok_ = ok_ && ok;
        if (!detail.empty()) {
            if (!detail_.empty()) detail_ += "; ";
            detail_ += detail;
        }
    }

    void finish(double time_limit_s) {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
                .count();
        const bool in_time = secs < time_limit_s;
        const bool pass = ok_ && in_time;
        if (!pass) ++g_failures;
        std::printf("%-4s %s (%.1fs%s)%s%s\n", pass ? "PASS" : "FAIL", name_.c_str(),
                    secs, in_time ? "" : " OVER LIMIT", detail_.empty() ? "" : " -- ",
                    detail_.c_str());
        std::fflush(stdout);
    }

  private:
    std::string name_;
    std::chrono::steady_clock::time_point start_;
    bool ok_{true};
    std::string detail_;
};

std::string pair_str(long l, long r) {
    return "(" + std::to_string(l) + "," + std::to_string(r) + ")";
}

InvariantReport auto_report(const std::string& src, std::uint64_t seed = kSeed) {
    LambdaRhoOptions opt;
    opt.seed = seed;
    opt.trace.seed = seed;
    return lambda_rho(parse_map(src), kOrigin, opt);
}

InvariantReport fixed_report(const std::string& src, double eps,
                             const Eigen::Vector3d& p = {1, 0, 0},
                             const Eigen::Vector3d& q = {-1, 0, 0}) {
    LambdaRhoOptions opt;
    opt.seed = kSeed;
    opt.trace.seed = kSeed;
    opt.eps = eps;
    opt.p = p;
    opt.q = q;
    return lambda_rho(parse_map(src), kOrigin, opt);
}

void criterion1() {
    Criterion c("1 hopf-calibration");
    const long h = hopf_invariant(make_hopf_field(), kOrigin, 1.0);
    c.expect(h == 1, "H(hopf)=" + std::to_string(h));
    c.finish(10.0);
}

void criterion2() {
    Criterion c("2 tangent-frame");
    const long hl = hopf_invariant(make_tangent_jk_field(Side::L), kOrigin, 1.0);
    const long hr = hopf_invariant(make_tangent_jk_field(Side::R), kOrigin, 1.0);
    c.expect(hl == 0, "H(l o T)=" + std::to_string(hl));
    c.expect(hr == 1, "H(r o T)=" + std::to_string(hr));
    c.finish(30.0);
}

void criterion3() {
    {
        Criterion c("3a trefoil");
        const InvariantReport rep = auto_report("z^2 + w^3");
        const long mu = milnor_oracle(parse_map("z^2 + w^3"), kOrigin, kSeed);
        c.expect(rep.lambda == 0 && rep.rho == 2,
                 "lambda,rho=" + pair_str(rep.lambda, rep.rho));
        c.expect(mu == 2, "milnor=" + std::to_string(mu));
        c.finish(120.0);
    }
    {
        Criterion c("3b trefoil-mirror");
        const InvariantReport rep = auto_report("zb^2 + w^3");
        c.expect(rep.lambda == 2 && rep.rho == 0,
                 "lambda,rho=" + pair_str(rep.lambda, rep.rho));
        c.finish(120.0);
    }
}

void criterion4() {
    {
        Criterion c("4a flat-unknot");
        const InvariantReport rep =
            auto_report("w^3 - 3*abs2(z)*(1 + z - zb)*w - 2*(z + zb)");
        c.expect(rep.lambda == 0 && rep.rho == 0 && rep.mu_from_sum == 0,
                 "lambda,rho=" + pair_str(rep.lambda, rep.rho));
        c.finish(300.0);
    }
    {
        Criterion c("4b figure8");
        const InvariantReport rep =
            auto_report("w^3 - 3*abs2(z)^2*(1 + z^2 - zb^2)*w - 2*(z^2 + zb^2)");
        c.expect(rep.lambda == 1 && rep.rho == 1 && rep.mu_from_sum == 2,
                 "lambda,rho=" + pair_str(rep.lambda, rep.rho));
        c.finish(300.0);
    }
}

void criterion5() {
    Criterion c("5 mixed-cusp-product");
    const RegistryEntry* e = find_entry("mixed-cusp-product");
    const InvariantReport rep = auto_report(e->map_src);
    c.expect(rep.lambda == 1 && rep.rho == 2 && rep.mu_from_sum == 3,
             "lambda,rho=" + pair_str(rep.lambda, rep.rho));
    const auto l_or = oracle_value(e->lambda_oracle, kOrigin, kSeed);
    const auto r_or = oracle_value(e->rho_oracle, kOrigin, kSeed);
    c.expect(l_or && *l_or == rep.lambda && r_or && *r_or == rep.rho,
             "oracle=" + pair_str(l_or.value_or(-99), r_or.value_or(-99)));
    c.finish(300.0);
}

void criterion6() {
    Criterion c("6 identity-suite");

    // Corollary-style splitting plus tau identities on every entry.
    for (const auto& e : registry()) {
        if (!e.invariants_run) continue;
        const InvariantReport rep = auto_report(e.map_src);
        const auto mu = entry_mu_oracle(e, kSeed);
        if (mu) {
            c.expect(rep.lambda + rep.rho == *mu,
                     e.name + " sum=" + std::to_string(rep.lambda + rep.rho) +
                         " mu_oracle=" + std::to_string(*mu));
        }
        c.expect(rep.tau_plus - rep.tau_minus == 1 - rep.mu_from_sum,
                 rep.tau_plus - rep.tau_minus == 1 - rep.mu_from_sum
                     ? ""
                     : e.name + " tau identity broken");
    }

    // Invariance under three random regular-value pairs.
    std::mt19937_64 pick(kSeed + 1);
    for (const char* name : {"trefoil", "mixed-cusp-product"}) {
        const RegistryEntry* e = find_entry(name);
        const InvariantReport ref = fixed_report(e->map_src, 0.25);
        Rng rng(Rng::sub_seed(kSeed, 0xabc));
        for (int k = 0; k < 3; ++k) {
            const Eigen::Vector3d p = rng.unit3();
            Eigen::Vector3d q = rng.unit3();
            while ((q - p).norm() < 0.5) q = rng.unit3();
            const InvariantReport rep = fixed_report(e->map_src, 0.25, p, q);
            c.expect(rep.lambda == ref.lambda && rep.rho == ref.rho,
                     rep.lambda == ref.lambda && rep.rho == ref.rho
                         ? ""
                         : std::string(name) + " changed under value pair " +
                               std::to_string(k) + ": " +
                               pair_str(rep.lambda, rep.rho) + " vs " +
                               pair_str(ref.lambda, ref.rho));
        }
    }

    // Antipodal invariance of H on two fields.
    {
        const long h1 = hopf_invariant(make_hopf_field(), kOrigin, 1.0);
        const long h2 =
            hopf_invariant(make_antipodal_field(make_hopf_field()), kOrigin, 1.0);
        const FieldPtr lf =
            make_map_field(parse_map(find_entry("mixed-cusp-product")->map_src), Side::L);
        const long h3 = hopf_invariant(lf, kOrigin, 0.25);
        const long h4 = hopf_invariant(make_antipodal_field(lf), kOrigin, 0.25);
        c.expect(h1 == h2, "H(hopf)=" + std::to_string(h1) +
                               " H(-o hopf)=" + std::to_string(h2));
        c.expect(h3 == h4, "H(l)=" + std::to_string(h3) +
                               " H(-o l)=" + std::to_string(h4));
    }

    // Mirror duality swaps the pair on every entry.
    for (const auto& e : registry()) {
        if (!e.invariants_run) continue;
        const InvariantReport orig = fixed_report(e.map_src, 0.25);
        LambdaRhoOptions opt;
        opt.seed = kSeed;
        opt.trace.seed = kSeed;
        opt.eps = 0.25;
        const InvariantReport mir =
            lambda_rho(mirror_map(parse_map(e.map_src)), kOrigin, opt);
        c.expect(mir.lambda == orig.rho && mir.rho == orig.lambda,
                 mir.lambda == orig.rho && mir.rho == orig.lambda
                     ? ""
                     : e.name + " mirror " + pair_str(mir.lambda, mir.rho) +
                           " vs " + pair_str(orig.lambda, orig.rho));
    }

    c.finish(1200.0);
}

void criterion7() {
    Criterion c("7 numerical-sub-suites");
    std::mt19937 gen(12345);
    std::uniform_real_distribution<> d(-2, 2);

    // Wirtinger derivatives against central differences, 1000 points.
    {
        const MapExpr m = parse_map("(z^2 + w^3) * conj(z^3 + w^2)");
        const double h = 1e-5;
        double worst = 0;
        for (int k = 0; k < 1000; ++k) {
            const Cplx z(d(gen), d(gen)), w(d(gen), d(gen));
            const auto cd = m.wirtinger(z, w);
            const Cplx fx = (m.eval(z + h, w) - m.eval(z - h, w)) / (2 * h);
            const Cplx fy =
                (m.eval(z + Cplx(0, h), w) - m.eval(z - Cplx(0, h), w)) / (2 * h);
            const Cplx fz = (fx - Cplx(0, 1) * fy) / 2.0;
            const Cplx fzb = (fx + Cplx(0, 1) * fy) / 2.0;
            const double scale = std::max({1.0, std::abs(cd.fz), std::abs(cd.fzb)});
            worst = std::max(worst, std::abs(cd.fz - fz) / scale);
            worst = std::max(worst, std::abs(cd.fzb - fzb) / scale);
        }
        c.expect(worst < 1e-6, "wirtinger-vs-fd worst rel err " + std::to_string(worst));
    }

    // Field route against frame route, 1000 points.
    {
        double worst = 0;
        int done = 0;
        for (const auto& e : registry()) {
            if (!e.invariants_run) continue;
            const MapExpr m = parse_map(e.map_src);
            while (done < 1000) {
                const Cplx z(d(gen), d(gen)), w(d(gen), d(gen));
                const auto cd = m.wirtinger(z, w);
                const TwoFrame fr = frame_of_rows(real_differential(cd));
                if (fr.gram_det() < 1e-6) continue;
                worst = std::max(worst,
                                 (l_field(m, z, w).vec() - l_of_frame(fr).vec()).norm());
                worst = std::max(worst,
                                 (r_field(m, z, w).vec() - r_of_frame(fr).vec()).norm());
                ++done;
            }
            done = 0;
        }
        c.expect(worst < 1e-9, "field-vs-frame worst abs err " + std::to_string(worst));
    }

    // Traced-curve residuals on a representative preimage.
    {
        const FieldPtr rf = make_map_field(parse_map("z^2 + w^3"), Side::R);
        SphereTracer tracer(rf, kOrigin, 0.25, {});
        const auto comps = tracer.preimage_components(Eigen::Vector3d(-1, 0, 0));
        double worst = 0;
        for (const auto& curve : comps) worst = std::max(worst, curve.max_residual);
        c.expect(!comps.empty() && worst < 1e-6,
                 "traced residual " + std::to_string(worst));
    }

    // Epsilon stability: AUTO agreed on two successive radii for every entry.
    {
        bool ok = true;
        for (const auto& e : registry()) {
            if (!e.invariants_run) continue;
            const InvariantReport rep = auto_report(e.map_src);
            ok = ok && rep.diagnostics.count("eps_pair_fine") > 0;
        }
        c.expect(ok, "auto-eps pairs recorded");
    }

    c.finish(1200.0);
}

void criterion8() {
    Criterion c("8 bad-exponent-detection");
    const auto bad = isolatedness_probe(parse_map("(z^2 + w^2)*conj(z^2 + w^2)"),
                                        kOrigin, 0.5, kSeed);
    const auto good = isolatedness_probe(parse_map("(z^2 + w^3)*conj(z^3 + w^2)"),
                                         kOrigin, 0.5, kSeed);
    c.expect(!bad.pass, "equal exponents min residual " + std::to_string(bad.min_residual));
    c.expect(good.pass, "good exponents min normalized " +
                            std::to_string(good.min_normalized));
    // Deterministic under the fixed seed.
    const auto bad2 = isolatedness_probe(parse_map("(z^2 + w^2)*conj(z^2 + w^2)"),
                                         kOrigin, 0.5, kSeed);
    c.expect(bad.min_residual == bad2.min_residual &&
                 bad.min_normalized == bad2.min_normalized,
             "probe deterministic");
    c.finish(120.0);
}

}  // namespace

int main() {
    try {
        criterion1();
        criterion2();
        criterion3();
        criterion4();
        criterion5();
        criterion6();
        criterion7();
        criterion8();
    } catch (const std::exception& e) {
        std::printf("FAIL (exception: %s)\n", e.what());
        return 1;
    }
    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
