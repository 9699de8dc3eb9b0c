#pragma once

#include <Eigen/Core>
#include <memory>
#include <string>

#include "lrho/polymap.hpp"

namespace lrho {

using Matrix34 = Eigen::Matrix<double, 3, 4>;

// A smooth map from a region of R^4 to R^3 \ {0} whose normalization is the
// S^2-valued field being traced. Implementations also provide the ambient
// Jacobian of the un-normalized value.
class SphereField {
  public:
    virtual ~SphereField() = default;
    virtual Eigen::Vector3d raw(const Eigen::Vector4d& y) const = 0;
    virtual Matrix34 jacobian(const Eigen::Vector4d& y) const = 0;

    Eigen::Vector3d unit(const Eigen::Vector4d& y) const {
        Eigen::Vector3d v = raw(y);
        const double n = v.norm();
        if (n < 1e-300) throw CriticalPoint("field vector vanishes on the sphere");
        return v / n;
    }
};

using FieldPtr = std::shared_ptr<const SphereField>;

enum class Side { L, R };

// The (*) or (**) plane-field of a polynomial map.
FieldPtr make_map_field(const MapExpr& m, Side side);

// (z, w) |-> ([|z|^2 - |w|^2] i, 2 i z conj(w)) as a field on R^4.
FieldPtr make_hopf_field();

// The r-image of the tangent frame field T(Q) = <jQ, kQ>: -P(conj(Q) i Q).
FieldPtr make_tangent_jk_field(Side side);

FieldPtr make_constant_field(const Eigen::Vector3d& v);

// Post-composition with the antipodal map of S^2.
FieldPtr make_antipodal_field(FieldPtr base);

// Resolves a builtin field name: "hopf", "antipodal-hopf", "tangent-jk".
FieldPtr make_builtin_field(const std::string& name, Side side);

}  // namespace lrho
