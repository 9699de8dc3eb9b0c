#include "lrho/oracle.hpp"

#include <cmath>
#include <complex>

#include "lrho/rng.hpp"

namespace lrho {

namespace {

constexpr double kDelta = 1e-4;        // perturbation magnitude
constexpr double kStartRadius = 0.7;   // multistart polydisk
constexpr double kAcceptRadius = 0.35; // roots counted as local to x
constexpr int kStarts = 600;

// Count roots of (h1 - d1, h2 - d2) near x by complex Newton from many
// quasi-random starts, deduplicated.
long count_perturbed(const MapExpr& h1, const MapExpr& h2, const Eigen::Vector4d& x,
                     Cplx d1, Cplx d2, Rng& rng) {
    const Cplx zc(x[0], x[1]), wc(x[2], x[3]);
    std::vector<std::pair<Cplx, Cplx>> roots;
    for (int s = 0; s < kStarts; ++s) {
        Cplx z = zc + Cplx(rng.uniform(-kStartRadius, kStartRadius),
                           rng.uniform(-kStartRadius, kStartRadius));
        Cplx w = wc + Cplx(rng.uniform(-kStartRadius, kStartRadius),
                           rng.uniform(-kStartRadius, kStartRadius));
        bool ok = false;
        for (int it = 0; it < 60; ++it) {
            const Cplx f1 = h1.eval(z, w) - d1;
            const Cplx f2 = h2.eval(z, w) - d2;
            const double rn = std::abs(f1) + std::abs(f2);
            if (!std::isfinite(rn)) break;
            if (rn < 1e-12) {
                ok = true;
                break;
            }
            const auto cd1 = h1.wirtinger(z, w);
            const auto cd2 = h2.wirtinger(z, w);
            // Analytic system: Jacobian is the complex 2x2 [h_z h_w].
            const Cplx a = cd1.fz, b = cd1.fw, c = cd2.fz, d = cd2.fw;
            const Cplx det = a * d - b * c;
            if (std::abs(det) < 1e-250) break;
            const Cplx dz = (d * f1 - b * f2) / det;
            const Cplx dw = (-c * f1 + a * f2) / det;
            z -= dz;
            w -= dw;
            if (std::abs(z - zc) > 4.0 || std::abs(w - wc) > 4.0) break;
        }
        if (!ok) continue;
        if (std::abs(z - zc) > kAcceptRadius || std::abs(w - wc) > kAcceptRadius) continue;
        bool dup = false;
        for (const auto& r : roots) {
            if (std::abs(r.first - z) < 1e-6 && std::abs(r.second - w) < 1e-6) {
                dup = true;
                break;
            }
        }
        if (!dup) roots.emplace_back(z, w);
    }
    return static_cast<long>(roots.size());
}

}  // namespace

long intersection_mult_analytic(const MapExpr& h1, const MapExpr& h2,
                                const Eigen::Vector4d& x, std::uint64_t seed) {
    if (!h1.analytic() || !h2.analytic()) {
        throw LrhoError("intersection_mult_analytic needs complex-analytic factors");
    }
    Rng rng(Rng::sub_seed(seed, 0x0f5a));
    long counts[2];
    for (int trial = 0; trial < 2; ++trial) {
        const Cplx d1 = std::polar(kDelta, rng.uniform(0, 2 * M_PI));
        const Cplx d2 = std::polar(kDelta, rng.uniform(0, 2 * M_PI));
        counts[trial] = count_perturbed(h1, h2, x, d1, d2, rng);
    }
    if (counts[0] != counts[1]) {
        throw UnstableCount("perturbation counts disagree: " + std::to_string(counts[0]) +
                            " vs " + std::to_string(counts[1]));
    }
    return counts[0];
}

long milnor_oracle(const MapExpr& m, const Eigen::Vector4d& x, std::uint64_t seed) {
    if (!m.analytic()) throw LrhoError("milnor_oracle needs a complex-analytic map");
    const MapExpr fz(m.deriv_root(Var::Z));
    const MapExpr fw(m.deriv_root(Var::W));
    return intersection_mult_analytic(fz, fw, x, seed);
}

namespace {

bool vanishes_at(const MapExpr& h, const Eigen::Vector4d& x) {
    return std::abs(h.eval(Cplx(x[0], x[1]), Cplx(x[2], x[3]))) < 1e-8;
}

}  // namespace

long halfcomplex_intersection_oracle(const CycleFactors& a, const CycleFactors& b,
                                     const Eigen::Vector4d& x, std::uint64_t seed) {
    long total = 0;
    for (const auto& fa : a) {
        if (!vanishes_at(fa.model, x)) continue;  // not involved at x
        for (const auto& fb : b) {
            if (!vanishes_at(fb.model, x)) continue;
            const int orient = (fa.conjugated ? -1 : 1) * (fb.conjugated ? -1 : 1);
            const long mult = intersection_mult_analytic(fa.model, fb.model, x, seed);
            total += fa.sign * fb.sign * orient * mult;
        }
    }
    return total;
}

long winding_on_conj_graph(const MapExpr& e, const Eigen::Vector4d& x, double radius) {
    const Cplx zc(x[0], x[1]);
    const Cplx wc(x[2], x[3]);
    // Adaptively refine until consecutive phase increments are small.
    std::size_t n = 64;
    for (;;) {
        double total = 0.0;
        double max_step = 0.0;
        bool hit_zero = false;
        // The curve is z = zc + dz, w = wc + conj(dz).
        Cplx prev = e.eval(zc + Cplx(radius, 0), wc + Cplx(radius, 0));
        for (std::size_t k = 1; k <= n; ++k) {
            const double th = 2.0 * M_PI * double(k) / double(n);
            const Cplx dz = std::polar(radius, th);
            const Cplx z = zc + dz;
            const Cplx w = wc + std::conj(dz);
            const Cplx v = e.eval(z, w);
            if (std::abs(v) < 1e-14) {
                hit_zero = true;
                break;
            }
            const double step = std::arg(v / prev);
            max_step = std::max(max_step, std::abs(step));
            total += step;
            prev = v;
        }
        if (!hit_zero && max_step < 0.5) return std::lround(total / (2.0 * M_PI));
        if (n > (1u << 20)) throw UnstableCount("winding number failed to stabilize");
        n *= 2;
    }
}

long conj_graph_vs_cycle(const CycleFactors& cycle, const Eigen::Vector4d& x) {
    long total = 0;
    for (const auto& f : cycle) {
        if (!vanishes_at(f.model, x)) continue;
        const long wind = winding_on_conj_graph(f.model, x);
        total += f.sign * (f.conjugated ? -1 : 1) * wind;
    }
    return total;
}

}  // namespace lrho
