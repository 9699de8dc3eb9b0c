#include "lrho/fields.hpp"

#include <cmath>

namespace lrho {

namespace {

// Real-direction derivatives of a Wirtinger quadruple: column mu of the
// result is the derivative of (F_z, F_zb, F_w, F_wb) along ambient axis mu.
std::array<std::array<Cplx, 4>, 4> directional(const std::array<std::array<Cplx, 4>, 4>& d2) {
    const Cplx i(0, 1);
    std::array<std::array<Cplx, 4>, 4> g;
    for (int a = 0; a < 4; ++a) {
        g[a][0] = d2[a][0] + d2[a][1];
        g[a][1] = i * (d2[a][0] - d2[a][1]);
        g[a][2] = d2[a][2] + d2[a][3];
        g[a][3] = i * (d2[a][2] - d2[a][3]);
    }
    return g;
}

class MapField final : public SphereField {
  public:
    MapField(MapExpr m, Side side) : m_(std::move(m)), side_(side) {}

    Eigen::Vector3d raw(const Eigen::Vector4d& y) const override {
        const auto cd = m_.wirtinger(Cplx(y[0], y[1]), Cplx(y[2], y[3]));
        return side_ == Side::L ? l_field_raw(cd) : r_field_raw(cd);
    }

    Matrix34 jacobian(const Eigen::Vector4d& y) const override {
        const Cplx z(y[0], y[1]), w(y[2], y[3]);
        const auto cd = m_.wirtinger(z, w);
        const auto g = directional(m_.wirtinger2(z, w));
        const Cplx fz = cd.fz, fzb = cd.fzb, fw = cd.fw, fwb = cd.fwb;
        Matrix34 J;
        for (int mu = 0; mu < 4; ++mu) {
            const Cplx gz = g[0][mu], gzb = g[1][mu], gw = g[2][mu], gwb = g[3][mu];
            const double ds_z = 2.0 * (std::conj(fz) * gz).real();
            const double ds_zb = 2.0 * (std::conj(fzb) * gzb).real();
            const double ds_w = 2.0 * (std::conj(fw) * gw).real();
            const double ds_wb = 2.0 * (std::conj(fwb) * gwb).real();
            if (side_ == Side::L) {
                const double ds = ds_z - ds_zb + ds_w - ds_wb;
                const Cplx dx = gz * std::conj(fwb) + fz * std::conj(gwb) -
                                std::conj(gzb) * fw - std::conj(fzb) * gw;
                J(0, mu) = ds;
                J(1, mu) = -2.0 * dx.imag();
                J(2, mu) = -2.0 * dx.real();
            } else {
                const double ds = ds_z - ds_zb - ds_w + ds_wb;
                const Cplx dy = gz * std::conj(fw) + fz * std::conj(gw) -
                                std::conj(gzb) * fwb - std::conj(fzb) * gwb;
                J(0, mu) = ds;
                J(1, mu) = -2.0 * dy.imag();
                J(2, mu) = 2.0 * dy.real();
            }
        }
        return J;
    }

  private:
    MapExpr m_;
    Side side_;
};

class HopfField final : public SphereField {
  public:
    Eigen::Vector3d raw(const Eigen::Vector4d& y) const override {
        const double s = y[0] * y[0] + y[1] * y[1] - y[2] * y[2] - y[3] * y[3];
        // 2 i z conj(w) = (-2(y1 y2 - y0 y3), 2(y0 y2 + y1 y3)) as (j, k).
        return {s, -2.0 * (y[1] * y[2] - y[0] * y[3]), 2.0 * (y[0] * y[2] + y[1] * y[3])};
    }

    Matrix34 jacobian(const Eigen::Vector4d& y) const override {
        Matrix34 J;
        J << 2 * y[0], 2 * y[1], -2 * y[2], -2 * y[3],
             2 * y[3], -2 * y[2], -2 * y[1], 2 * y[0],
             2 * y[2], 2 * y[3], 2 * y[0], 2 * y[1];
        return J;
    }
};

// -P(conj(Q) i Q): the r-image of the tangent frame <jQ, kQ>.
class AdjointField final : public SphereField {
  public:
    Eigen::Vector3d raw(const Eigen::Vector4d& y) const override {
        const Quat q = Quat::from_vec4(y);
        return (-(q.conj() * kQuatI * q)).pure();
    }

    Matrix34 jacobian(const Eigen::Vector4d& y) const override {
        const Quat q = Quat::from_vec4(y);
        Matrix34 J;
        const Quat basis[4] = {kQuatOne, kQuatI, kQuatJ, kQuatK};
        for (int mu = 0; mu < 4; ++mu) {
            const Quat h = basis[mu];
            const Quat d = -(h.conj() * kQuatI * q + q.conj() * kQuatI * h);
            J.col(mu) = d.pure();
        }
        return J;
    }
};

class ConstantField final : public SphereField {
  public:
    explicit ConstantField(Eigen::Vector3d v) : v_(std::move(v)) {}
    Eigen::Vector3d raw(const Eigen::Vector4d&) const override { return v_; }
    Matrix34 jacobian(const Eigen::Vector4d&) const override { return Matrix34::Zero(); }

  private:
    Eigen::Vector3d v_;
};

class AntipodalField final : public SphereField {
  public:
    explicit AntipodalField(FieldPtr base) : base_(std::move(base)) {}
    Eigen::Vector3d raw(const Eigen::Vector4d& y) const override { return -base_->raw(y); }
    Matrix34 jacobian(const Eigen::Vector4d& y) const override { return -base_->jacobian(y); }

  private:
    FieldPtr base_;
};

}  // namespace

FieldPtr make_map_field(const MapExpr& m, Side side) {
    return std::make_shared<MapField>(m, side);
}

FieldPtr make_hopf_field() { return std::make_shared<HopfField>(); }

FieldPtr make_tangent_jk_field(Side side) {
    if (side == Side::L) {
        // l(<jQ, kQ>) = UP(kQ conj(jQ)) = i for every unit Q.
        return std::make_shared<ConstantField>(Eigen::Vector3d(1, 0, 0));
    }
    return std::make_shared<AdjointField>();
}

FieldPtr make_constant_field(const Eigen::Vector3d& v) {
    return std::make_shared<ConstantField>(v);
}

FieldPtr make_antipodal_field(FieldPtr base) {
    return std::make_shared<AntipodalField>(std::move(base));
}

FieldPtr make_builtin_field(const std::string& name, Side side) {
    if (name == "hopf") return make_hopf_field();
    if (name == "antipodal-hopf") return make_antipodal_field(make_hopf_field());
    if (name == "tangent-jk") return make_tangent_jk_field(side);
    throw LrhoError("unknown builtin field: " + name);
}

}  // namespace lrho
