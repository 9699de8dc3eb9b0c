#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "lrho/fields.hpp"

namespace lrho {

// A direction on the unit 3-sphere together with its ambient image x + eps u.
struct SpherePoint {
    Eigen::Vector4d u;
    Eigen::Vector4d ambient;
};

// Closed oriented polyline on S^3(x; eps), a traced preimage component of
// one regular value. Vertices are unit directions; the last vertex repeats
// the first once the curve closes.
struct OrientedCurve {
    std::vector<Eigen::Vector4d> dirs;
    bool closed{false};
    Eigen::Vector3d target{1, 0, 0};
    Eigen::Vector4d center{0, 0, 0, 0};
    double eps{1.0};
    double max_step{0.0};       // largest u-space edge length
    double max_residual{0.0};   // max angular distance |g(vertex) - p|

    Eigen::Vector4d ambient(std::size_t i) const { return center + eps * dirs[i]; }
    std::size_t size() const { return dirs.size(); }
};

struct TraceParams {
    std::uint64_t seed{0};
    std::size_t n_samples{20000};
    double h_min{1e-4};
    double h_max{1e-2};
    double h_init{2e-3};
    std::size_t step_budget{1000000};
    double newton_tol{1e-11};
    int newton_iters{40};
    double sigma_rel_tol{1e-6};
};

// Traces preimage curves of a field over S^3(x; eps).
class SphereTracer {
  public:
    SphereTracer(FieldPtr field, const Eigen::Vector4d& x, double eps,
                 TraceParams params = {});

    // Quasi-random sphere sampling followed by projected Newton refinement.
    // Throws NoSeedsFound when nothing converges (legitimately empty
    // preimages are possible; callers treat that as zero contribution).
    std::vector<SpherePoint> find_seeds(const Eigen::Vector3d& p) const;

    // Predictor-corrector continuation from one converged seed.
    OrientedCurve trace_preimage(const Eigen::Vector3d& p, const SpherePoint& seed) const;

    // Fixes the vertex order so the component carries the preimage
    // orientation: a positively oriented normal disk maps to S^2
    // preserving orientation.
    void orient_curve(OrientedCurve& c) const;

    // Full pipeline: seeds, component tracing with seed claiming, orientation.
    // Empty result means the preimage is (numerically) empty. Throws
    // NotRegular if converged seeds exist that no regular component explains.
    std::vector<OrientedCurve> preimage_components(const Eigen::Vector3d& p) const;

    const TraceParams& params() const { return params_; }

    struct Chart;

  private:
    bool newton(const Chart& ch, Eigen::Vector4d& u) const;
    double field_scale(const Eigen::Vector3d& p) const;
    FieldPtr field_;
    Eigen::Vector4d x_;
    double eps_;
    TraceParams params_;
};

// Distance from a unit direction to the polyline vertices of a curve.
double point_curve_distance(const Eigen::Vector4d& u, const OrientedCurve& c);
// Minimum vertex-to-vertex distance between two curves.
double curve_curve_distance(const OrientedCurve& a, const OrientedCurve& b);

// Plain-text dump: "# curve target=<p> orientation=+" then one ambient
// vertex per line "cx cy cz cw"; blank line between components.
void dump_curves(std::ostream& os, const std::vector<OrientedCurve>& curves);

}  // namespace lrho
