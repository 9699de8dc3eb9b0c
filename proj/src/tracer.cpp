#include "lrho/tracer.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <ostream>

#include "lrho/rng.hpp"

namespace lrho {

namespace {

using Eigen::Matrix2d;
using Eigen::Vector3d;
using Eigen::Vector4d;
using Matrix43 = Eigen::Matrix<double, 4, 3>;
using Matrix23 = Eigen::Matrix<double, 2, 3>;
using Matrix24 = Eigen::Matrix<double, 2, 4>;

// Orthonormal basis of the tangent space u^perp, deterministic in u.
Matrix43 tangent_basis(const Vector4d& u) {
    // Start from the three coordinate axes least aligned with u.
    int drop = 0;
    for (int i = 1; i < 4; ++i) {
        if (std::abs(u[i]) > std::abs(u[drop])) drop = i;
    }
    Matrix43 B;
    int col = 0;
    for (int i = 0; i < 4; ++i) {
        if (i == drop) continue;
        Vector4d e = Vector4d::Unit(i);
        e -= e.dot(u) * u;
        for (int j = 0; j < col; ++j) e -= e.dot(B.col(j)) * B.col(j);
        B.col(col++) = e.normalized();
    }
    return B;
}

double det4(const Vector4d& a, const Vector4d& b, const Vector4d& c, const Vector4d& d) {
    Eigen::Matrix4d M;
    M << a, b, c, d;
    return M.determinant();
}

// Positive orthonormal chart of S^2 at p: det[p, e1, e2] > 0.
void chart_basis(const Vector3d& p, Vector3d& e1, Vector3d& e2) {
    int drop = 0;
    for (int i = 1; i < 3; ++i) {
        if (std::abs(p[i]) > std::abs(p[drop])) drop = i;
    }
    Vector3d a = Vector3d::Unit((drop + 1) % 3);
    e1 = (a - a.dot(p) * p).normalized();
    e2 = p.cross(e1);  // det[p, e1, p x e1] = |p x e1|^2 > 0
}

struct Sigma {
    double min, max;
};

Sigma singular_values(const Matrix23& J) {
    const Matrix2d M = J * J.transpose();
    const double tr = M.trace();
    const double det = M.determinant();
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    const double l1 = tr / 2.0 + disc;
    const double l2 = std::max(0.0, tr / 2.0 - disc);
    return {std::sqrt(l2), std::sqrt(l1)};
}

}  // namespace

struct SphereTracer::Chart {
    Vector3d p, e1, e2;

    // Unit field value at direction u.
    Vector3d g;
    // Rows: gradients of (g.e1, g.e2) w.r.t. u (2x4), i.e. the chart
    // constraint derivative in ambient direction coordinates.
    Matrix24 Dc;

    Eigen::Vector2d c() const { return {g.dot(e1), g.dot(e2)}; }
};

SphereTracer::SphereTracer(FieldPtr field, const Vector4d& x, double eps, TraceParams params)
    : field_(std::move(field)), x_(x), eps_(eps), params_(params) {}

namespace {

void eval_chart(const SphereField& f, const Vector4d& x, double eps,
                SphereTracer::Chart& ch, const Vector4d& u) {
    const Vector4d y = x + eps * u;
    const Vector3d v = f.raw(y);
    const double n = v.norm();
    if (n < 1e-300) throw CriticalPoint("field vanishes while tracing");
    ch.g = v / n;
    const Matrix34 Jraw = f.jacobian(y);
    // d(unit v) = (I - g g^T) dv / |v|; ambient direction scale is eps.
    const Matrix34 Dg =
        (Eigen::Matrix3d::Identity() - ch.g * ch.g.transpose()) * Jraw * (eps / n);
    ch.Dc.row(0) = ch.e1.transpose() * Dg;
    ch.Dc.row(1) = ch.e2.transpose() * Dg;
}

}  // namespace

bool SphereTracer::newton(const Chart& proto, Vector4d& u) const {
    Chart ch = proto;
    double prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < params_.newton_iters; ++it) {
        eval_chart(*field_, x_, eps_, ch, u);
        const Eigen::Vector2d c = ch.c();
        const double cn = c.norm();
        if (!std::isfinite(cn)) return false;
        if (cn < params_.newton_tol) return ch.g.dot(ch.p) > 0;
        if (it > 6 && cn > 0.9 * prev) return false;
        prev = std::min(prev, cn);
        const Matrix43 B = tangent_basis(u);
        const Matrix23 J = ch.Dc * B;
        const Matrix2d M = J * J.transpose();
        if (std::abs(M.determinant()) < 1e-300) return false;
        const Eigen::Vector2d s = M.ldlt().solve(c);
        const Eigen::Vector3d delta = -J.transpose() * s;
        if (!delta.allFinite()) return false;
        u = (u + B * delta).normalized();
    }
    return false;
}

// Typical magnitude of the chart derivative over the sphere (a low
// percentile). A fiber whose derivative is negligible against this scale is
// the image of a critical value, not a transverse preimage.
double SphereTracer::field_scale(const Vector3d& p) const {
    Chart ch;
    ch.p = p;
    chart_basis(p, ch.e1, ch.e2);
    Rng rng(Rng::sub_seed(params_.seed, 0x5ca1e));
    std::vector<double> smax;
    smax.reserve(256);
    for (int k = 0; k < 256; ++k) {
        const Vector4d u = rng.unit4();
        try {
            eval_chart(*field_, x_, eps_, ch, u);
        } catch (const CriticalPoint&) {
            continue;
        }
        smax.push_back(singular_values(ch.Dc * tangent_basis(u)).max);
    }
    if (smax.empty()) return 0.0;
    std::sort(smax.begin(), smax.end());
    return smax[smax.size() / 10];
}

std::vector<SpherePoint> SphereTracer::find_seeds(const Vector3d& p) const {
    Chart proto;
    proto.p = p;
    chart_basis(p, proto.e1, proto.e2);

    Rng rng(Rng::sub_seed(params_.seed, 0x5eed));
    std::vector<SpherePoint> out;
    for (std::size_t k = 0; k < params_.n_samples; ++k) {
        Vector4d u = rng.unit4();
        if (!newton(proto, u)) continue;
        bool dup = false;
        for (const auto& s : out) {
            if ((s.u - u).norm() < 1e-6) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back({u, x_ + eps_ * u});
    }
    if (out.empty()) throw NoSeedsFound("no converged preimage seed on the sphere");
    return out;
}

OrientedCurve SphereTracer::trace_preimage(const Vector3d& p, const SpherePoint& seed) const {
    Chart ch;
    ch.p = p;
    chart_basis(p, ch.e1, ch.e2);

    Vector4d u = seed.u;
    if (!newton(ch, u)) throw NotRegular("seed does not satisfy the fiber equation");

    const double scale_floor = 1e-4 * field_scale(p);
    auto tangent_at = [&](const Vector4d& at, Sigma* sig) -> Vector3d {
        eval_chart(*field_, x_, eps_, ch, at);
        const Matrix43 B = tangent_basis(at);
        const Matrix23 J = ch.Dc * B;
        const Sigma s = singular_values(J);
        if (sig) *sig = s;
        if (s.max < 1e-300 || s.min < params_.sigma_rel_tol * s.max ||
            s.min < scale_floor) {
            throw NotRegular("derivative of the field is singular along the preimage");
        }
        const Vector3d t = J.row(0).transpose().cross(J.row(1).transpose());
        return t.normalized();
    };

    OrientedCurve curve;
    curve.target = p;
    curve.center = x_;
    curve.eps = eps_;
    curve.dirs.push_back(u);

    const Vector4d u0 = u;
    Sigma sig;
    Vector3d t3 = tangent_at(u, &sig);
    Matrix43 B = tangent_basis(u);
    Vector4d t_prev = B * t3;  // ambient tangent, sign fixed arbitrarily
    const Vector4d t_start = t_prev;

    double h = params_.h_init;
    for (std::size_t step = 0; step < params_.step_budget; ++step) {
        // Kernel direction at the current point, continued in sign.
        B = tangent_basis(u);
        t3 = tangent_at(u, &sig);
        Vector4d t = B * t3;
        if (t.dot(t_prev) < 0) t = -t;

        // Closure: back near the start, heading into it, same branch.
        const double d0 = (u - u0).norm();
        if (step >= 10 && d0 < std::max(1.5 * h, 1e-6) && t.dot(u0 - u) > 0 &&
            t.dot(t_start) > 0.5) {
            curve.dirs.push_back(u0);
            curve.max_step = std::max(curve.max_step, d0);
            curve.closed = true;
            break;
        }

        // Predict, then correct back onto the fiber.
        bool ok = false;
        Vector4d u_new;
        while (h >= params_.h_min) {
            u_new = (u + h * t).normalized();
            if (newton(ch, u_new)) {
                ok = true;
                break;
            }
            h *= 0.5;
        }
        if (!ok) throw Diverged("corrector failed at the minimum step length");

        curve.max_step = std::max(curve.max_step, (u_new - u).norm());
        curve.dirs.push_back(u_new);
        t_prev = t;
        u = u_new;
        h = std::min(h * 1.4, params_.h_max);
    }
    if (!curve.closed) throw Diverged("step budget exhausted before the curve closed");

    // Fiber-tracking residual over all vertices.
    for (const auto& v : curve.dirs) {
        eval_chart(*field_, x_, eps_, ch, v);
        curve.max_residual = std::max(curve.max_residual, (ch.g - p).norm());
    }
    return curve;
}

void SphereTracer::orient_curve(OrientedCurve& c) const {
    if (c.dirs.size() < 12 || !c.closed) {
        throw AmbiguousOrientation("curve too short to orient");
    }
    Chart ch;
    ch.p = c.target;
    chart_basis(c.target, ch.e1, ch.e2);

    const std::size_t n = c.dirs.size() - 1;  // last repeats first
    int votes_pos = 0, votes_neg = 0;
    for (int probe = 0; probe < 7; ++probe) {
        const std::size_t i = 1 + (probe * n) / 7;
        const Vector4d u = c.dirs[i];
        const Vector4d chord = (c.dirs[i + 1] - c.dirs[i - 1]).normalized();

        eval_chart(*field_, x_, eps_, ch, u);
        const Matrix43 B = tangent_basis(u);
        const Matrix23 J = ch.Dc * B;
        Vector3d t3 = J.row(0).transpose().cross(J.row(1).transpose());
        if (t3.norm() < 1e-300) continue;
        t3.normalize();
        // Sign the kernel direction by the vertex order.
        if ((B * t3).dot(chord) < 0) t3 = -t3;

        // (t, n1, n2) positively oriented in T_u S^3 with the boundary
        // orientation of D^4 (inward normal last):
        // det3[t, n1, n2] * det4[B | u] < 0.
        Vector3d n1 = std::abs(t3[0]) < 0.9 ? Vector3d::Unit(0) : Vector3d::Unit(1);
        n1 = (n1 - n1.dot(t3) * t3).normalized();
        const double su = det4(B.col(0), B.col(1), B.col(2), u) > 0 ? 1.0 : -1.0;
        const Vector3d n2 = -su * t3.cross(n1);

        // Dg on the normal disk, in the positive chart at the target.
        const Eigen::Vector2d w1 = ch.Dc * (B * n1);
        const Eigen::Vector2d w2 = ch.Dc * (B * n2);
        const double det = w1[0] * w2[1] - w1[1] * w2[0];
        if (std::abs(det) < 1e-18) continue;
        (det > 0 ? votes_pos : votes_neg)++;
    }
    if (votes_pos == 0 && votes_neg == 0) {
        throw AmbiguousOrientation("orientation determinant vanished at all probes");
    }
    if (votes_neg > votes_pos) {
        std::reverse(c.dirs.begin(), c.dirs.end());
    }
}

std::vector<OrientedCurve> SphereTracer::preimage_components(const Vector3d& p) const {
    std::vector<SpherePoint> seeds;
    try {
        seeds = find_seeds(p);
    } catch (const NoSeedsFound&) {
        return {};
    }

    Chart ch;
    ch.p = p;
    chart_basis(p, ch.e1, ch.e2);

    // Partition seeds by regularity of the chart derivative, against both
    // the local conditioning and the field's global derivative scale.
    const double scale_floor = 1e-4 * field_scale(p);
    std::vector<bool> claimed(seeds.size(), false);
    std::vector<bool> regular(seeds.size(), false);
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        eval_chart(*field_, x_, eps_, ch, seeds[i].u);
        const Matrix43 B = tangent_basis(seeds[i].u);
        const Sigma s = singular_values(ch.Dc * B);
        regular[i] = s.max > 1e-300 && s.min >= params_.sigma_rel_tol * s.max &&
                     s.min >= scale_floor;
    }

    std::vector<OrientedCurve> out;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (claimed[i] || !regular[i]) continue;
        OrientedCurve curve = trace_preimage(p, seeds[i]);
        orient_curve(curve);
        const double claim = std::max(5e-3, 2.0 * curve.max_step);
        for (std::size_t j = 0; j < seeds.size(); ++j) {
            if (!claimed[j] && point_curve_distance(seeds[j].u, curve) < claim) {
                claimed[j] = true;
            }
        }
        out.push_back(std::move(curve));
    }

    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (!claimed[i]) {
            throw NotRegular("converged seeds remain outside every regular component");
        }
    }
    return out;
}

double point_curve_distance(const Vector4d& u, const OrientedCurve& c) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : c.dirs) best = std::min(best, (u - v).norm());
    return best;
}

double curve_curve_distance(const OrientedCurve& a, const OrientedCurve& b) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : a.dirs) {
        best = std::min(best, point_curve_distance(v, b));
    }
    return best;
}

void dump_curves(std::ostream& os, const std::vector<OrientedCurve>& curves) {
    bool first = true;
    for (const auto& c : curves) {
        if (!first) os << "\n";
        first = false;
        const Vector3d p = c.target;
        os << "# curve target=";
        if ((p - Vector3d(1, 0, 0)).norm() < 1e-12) {
            os << "i";
        } else if ((p - Vector3d(-1, 0, 0)).norm() < 1e-12) {
            os << "-i";
        } else {
            os << p[0] << "," << p[1] << "," << p[2];
        }
        os << " orientation=+\n";
        char buf[160];
        for (std::size_t i = 0; i < c.dirs.size(); ++i) {
            const Vector4d a = c.ambient(i);
            std::snprintf(buf, sizeof(buf), "%.12g %.12g %.12g %.12g\n", a[0], a[1], a[2], a[3]);
            os << buf;
        }
    }
}

}  // namespace lrho
