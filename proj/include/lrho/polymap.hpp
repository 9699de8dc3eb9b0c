#pragma once

#include <Eigen/Core>
#include <array>
#include <memory>
#include <optional>
#include <string>

#include "lrho/expr.hpp"
#include "lrho/quat.hpp"

namespace lrho {

// The complex row vector [F_z F_zb F_w F_wb] at a point.
struct ComplexDifferential {
    Cplx fz, fzb, fw, fwb;
};

// 2x4 real matrix whose rows are the gradients of (Re F, Im F).
using RealDifferential = Eigen::Matrix<double, 2, 4>;

// A polynomial map F(z, zb, w, wb): R^4 -> R^2 with cached symbolic
// derivatives and compiled evaluators. Immutable after construction;
// cheap to copy.
class MapExpr {
  public:
    MapExpr() = default;
    explicit MapExpr(ExprPtr root, std::string src = "");

    static MapExpr parse(const std::string& src);

    Cplx eval(Cplx z, Cplx w) const;
    ComplexDifferential wirtinger(Cplx z, Cplx w) const;

    // Second Wirtinger derivatives d2[a][b] = d_b d_a F, indices in the
    // order z, zb, w, wb.
    std::array<std::array<Cplx, 4>, 4> wirtinger2(Cplx z, Cplx w) const;

    bool analytic() const;
    const std::string& source() const;
    ExprPtr root() const;
    ExprPtr deriv_root(Var v) const;

  private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

MapExpr parse_map(const std::string& src);
Cplx eval_map(const MapExpr& m, Cplx z, Cplx w);
ComplexDifferential wirtinger_differential(const MapExpr& m, Cplx z, Cplx w);

// DF reconstructed from the complex differential:
//   [ Re(Fz+Fzb)  Re(i Fz - i Fzb)  Re(Fw+Fwb)  Re(i Fw - i Fwb) ]
//   [ Im(Fz+Fzb)  Im(i Fz - i Fzb)  Im(Fw+Fwb)  Im(i Fw - i Fwb) ]
RealDifferential real_differential(const ComplexDifferential& cd);

TwoFrame frame_of_rows(const RealDifferential& df);

// Un-normalized value of the (*) plane-field vector at a point, as
// (i, j, k) components. Vanishes exactly on crit(F).
Eigen::Vector3d l_field_raw(const ComplexDifferential& cd);
// Likewise for (**).
Eigen::Vector3d r_field_raw(const ComplexDifferential& cd);

UnitPure l_field(const MapExpr& m, Cplx z, Cplx w);
UnitPure r_field(const MapExpr& m, Cplx z, Cplx w);

// Euclidean norm of the (*) vector; identically the frame area
// sqrt(|A|^2 |B|^2 - <A,B>^2) of the rows of DF.
double critical_residual(const MapExpr& m, Cplx z, Cplx w);

struct IsolatednessReport {
    double min_residual{0};    // min of |(*)| over all samples
    double min_normalized{0};  // min of |(*)| / (|A| |B|), scale-free
    bool pass{false};
    std::size_t samples{0};
};

// Samples >= 20^4 directions over radii in [eps/2, eps] around x and
// reports the smallest residual seen. pass uses the scale-free ratio
// (the sine of the frame angle) against 1e-3; a numeric probe, not a proof.
IsolatednessReport isolatedness_probe(const MapExpr& m, const Eigen::Vector4d& x,
                                      double eps, std::uint64_t seed = 0,
                                      std::size_t n_directions = 20000);

// The mirror image: precomposition with the orientation-reversing
// reflection (z, w) |-> (zb, w), realized by swapping z and zb in the tree.
MapExpr mirror_map(const MapExpr& m);

}  // namespace lrho
