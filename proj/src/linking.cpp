#include "lrho/linking.hpp"

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <cmath>
#include <vector>

#include "lrho/rng.hpp"

namespace lrho {

namespace {

using Eigen::Vector3d;
using Eigen::Vector4d;

// Global sign fixed once so that the oriented Hopf fibers O, O' link +1.
constexpr double kProjectionSign = 1.0;

struct Polyline3 {
    std::vector<Vector3d> pts;  // closed: pts[n-1] == projection of first
};

Polyline3 stereo_project(const OrientedCurve& c, const Vector4d& pole,
                         const Eigen::Matrix<double, 4, 3>& basis) {
    Polyline3 out;
    out.pts.reserve(c.dirs.size());
    for (const auto& u : c.dirs) {
        const double t = 1.0 - u.dot(pole);
        const Vector4d v = u - u.dot(pole) * pole;
        out.pts.push_back(basis.transpose() * v / t);
    }
    return out;
}

double gauss_pair(const Vector3d& a0, const Vector3d& a1, const Vector3d& b0,
                  const Vector3d& b1, int depth) {
    const Vector3d ra = a1 - a0;
    const Vector3d rb = b1 - b0;
    const Vector3d am = 0.5 * (a0 + a1);
    const Vector3d bm = 0.5 * (b0 + b1);
    const Vector3d d = am - bm;
    const double dist = d.norm();
    const double la = ra.norm(), lb = rb.norm();
    const double len = std::max(la, lb);
    if (len < 1e-12) return 0.0;
    if (dist < 5.0 * len && depth < 16) {
        // Split the longer segment; the integrand peaks at near approaches.
        if (la >= lb) {
            return gauss_pair(a0, am, b0, b1, depth + 1) +
                   gauss_pair(am, a1, b0, b1, depth + 1);
        }
        return gauss_pair(a0, a1, b0, bm, depth + 1) +
               gauss_pair(a0, a1, bm, b1, depth + 1);
    }
    if (dist < 1e-12) return 0.0;
    return ra.cross(rb).dot(d) / (dist * dist * dist);
}

double gauss_integral(const Polyline3& A, const Polyline3& B) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < A.pts.size(); ++i) {
        for (std::size_t j = 0; j + 1 < B.pts.size(); ++j) {
            total += gauss_pair(A.pts[i], A.pts[i + 1], B.pts[j], B.pts[j + 1], 0);
        }
    }
    return total / (4.0 * M_PI);
}

Vector4d pick_pole(const OrientedCurve& a, const OrientedCurve& b, std::uint64_t seed) {
    Rng rng(Rng::sub_seed(seed, 0x701e));
    Vector4d best = Vector4d::Unit(0);
    double best_score = -1.0;
    auto consider = [&](const Vector4d& n) {
        double score = std::numeric_limits<double>::infinity();
        for (const auto& u : a.dirs) score = std::min(score, (u - n).norm());
        for (const auto& u : b.dirs) score = std::min(score, (u - n).norm());
        if (score > best_score) {
            best_score = score;
            best = n;
        }
    };
    for (int i = 0; i < 4; ++i) {
        consider(Vector4d::Unit(i));
        consider(-Vector4d::Unit(i));
    }
    for (int k = 0; k < 200; ++k) consider(rng.unit4());
    if (best_score < 0.05) {
        throw PoleTooClose("no stereographic pole is far enough from both curves");
    }
    return best;
}

}  // namespace

long linking_number(const OrientedCurve& a, const OrientedCurve& b, std::uint64_t seed,
                    double* raw_out) {
    if (!a.closed || !b.closed) throw LrhoError("linking_number needs closed curves");
    const Vector4d pole = pick_pole(a, b, seed);

    // Orthonormal basis of pole^perp with det[b1 b2 b3 pole] = +1.
    Eigen::Matrix<double, 4, 3> basis;
    {
        int col = 0;
        for (int i = 0; i < 4 && col < 3; ++i) {
            Vector4d e = Vector4d::Unit(i);
            e -= e.dot(pole) * pole;
            for (int j = 0; j < col; ++j) e -= e.dot(basis.col(j)) * basis.col(j);
            const double n = e.norm();
            if (n < 1e-6) continue;
            basis.col(col++) = e / n;
        }
        Eigen::Matrix4d M;
        M << basis.col(0), basis.col(1), basis.col(2), pole;
        if (M.determinant() < 0) basis.col(2) = -basis.col(2);
    }

    const Polyline3 A = stereo_project(a, pole, basis);
    const Polyline3 B = stereo_project(b, pole, basis);
    const double raw = kProjectionSign * gauss_integral(A, B);
    if (raw_out) *raw_out = raw;
    const double rounded = std::round(raw);
    if (std::abs(raw - rounded) >= 0.1) {
        throw NonIntegerLinking("Gauss integral not near an integer: " + std::to_string(raw));
    }
    return static_cast<long>(rounded);
}

namespace {

long linking_sum(const std::vector<OrientedCurve>& P, const std::vector<OrientedCurve>& Q,
                 std::uint64_t seed, HopfDiagnostics* diag) {
    long total = 0;
    for (const auto& cp : P) {
        for (const auto& cq : Q) {
            double raw = 0.0;
            total += linking_number(cp, cq, seed, &raw);
            if (diag) {
                diag->max_linking_residual =
                    std::max(diag->max_linking_residual, std::abs(raw - std::round(raw)));
            }
        }
    }
    return total;
}

}  // namespace

long hopf_invariant(const FieldPtr& field, const Vector4d& x, double eps,
                    const HopfOptions& opt, HopfDiagnostics* diag) {
    Vector3d p = opt.p.normalized();
    Vector3d q = opt.q.normalized();
    Rng rot_rng(Rng::sub_seed(opt.seed, 0x07a7e));

    HopfDiagnostics local;
    HopfDiagnostics* d = diag ? diag : &local;

    TraceParams par = opt.trace;
    par.seed = opt.seed;

    for (int attempt = 0;; ++attempt) {
        try {
            SphereTracer tracer(field, x, eps, par);
            const auto P = tracer.preimage_components(p);
            d->components_p = P.size();
            if (P.empty()) return 0;
            const auto Q = tracer.preimage_components(q);
            d->components_q = Q.size();
            if (Q.empty()) return 0;

            double max_step = 0.0, max_res = 0.0;
            for (const auto& c : P) {
                max_step = std::max(max_step, c.max_step);
                max_res = std::max(max_res, c.max_residual);
            }
            for (const auto& c : Q) {
                max_step = std::max(max_step, c.max_step);
                max_res = std::max(max_res, c.max_residual);
            }
            d->max_vertex_residual = max_res;

            double sep = std::numeric_limits<double>::infinity();
            for (const auto& cp : P) {
                for (const auto& cq : Q) sep = std::min(sep, curve_curve_distance(cp, cq));
            }
            d->min_separation = sep;
            if (sep <= 10.0 * max_step) {
                throw NotRegular("preimages of p and q too close; rotating the pair");
            }

            try {
                return linking_sum(P, Q, opt.seed, d);
            } catch (const NonIntegerLinking&) {
                // One retry at half step length before surfacing the error.
                SphereTracer fine_tracer(field, x, eps, [&] {
                    TraceParams t = par;
                    t.h_max *= 0.5;
                    t.h_init *= 0.5;
                    return t;
                }());
                const auto P2 = fine_tracer.preimage_components(p);
                const auto Q2 = fine_tracer.preimage_components(q);
                return linking_sum(P2, Q2, opt.seed, d);
            }
        } catch (const NotRegular&) {
            if (attempt >= opt.max_rotations) throw;
            // H is homotopy invariant: any distinct regular pair computes it.
            const Eigen::AngleAxisd R(0.05, rot_rng.unit3());
            p = (R * p).normalized();
            q = (R * q).normalized();
            d->rotations_used = attempt + 1;
        }
    }
}

}  // namespace lrho
