#include "lrho/polymap.hpp"

#include <cmath>

#include "lrho/rng.hpp"

namespace lrho {

struct MapExpr::Impl {
    ExprPtr root;
    std::string src;
    bool analytic{false};
    ExprPtr d1[4];
    ExprPtr d2[4][4];
    CompiledExpr c_root;
    CompiledExpr c_d1[4];
    CompiledExpr c_d2[4][4];
};

namespace {
constexpr Var kVars[4] = {Var::Z, Var::Zb, Var::W, Var::Wb};
}

MapExpr::MapExpr(ExprPtr root, std::string src) {
    auto impl = std::make_shared<Impl>();
    impl->root = root;
    impl->src = src.empty() ? expr_to_string(root) : std::move(src);
    impl->analytic = expr_is_analytic(root);
    impl->c_root = CompiledExpr(root);
    for (int a = 0; a < 4; ++a) {
        impl->d1[a] = diff_expr(root, kVars[a]);
        impl->c_d1[a] = CompiledExpr(impl->d1[a]);
        for (int b = 0; b < 4; ++b) {
            impl->d2[a][b] = diff_expr(impl->d1[a], kVars[b]);
            impl->c_d2[a][b] = CompiledExpr(impl->d2[a][b]);
        }
    }
    impl_ = std::move(impl);
}

MapExpr MapExpr::parse(const std::string& src) { return MapExpr(parse_expr(src), src); }

Cplx MapExpr::eval(Cplx z, Cplx w) const { return impl_->c_root.eval(z, w); }

ComplexDifferential MapExpr::wirtinger(Cplx z, Cplx w) const {
    return {impl_->c_d1[0].eval(z, w), impl_->c_d1[1].eval(z, w),
            impl_->c_d1[2].eval(z, w), impl_->c_d1[3].eval(z, w)};
}

std::array<std::array<Cplx, 4>, 4> MapExpr::wirtinger2(Cplx z, Cplx w) const {
    std::array<std::array<Cplx, 4>, 4> out;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) out[a][b] = impl_->c_d2[a][b].eval(z, w);
    }
    return out;
}

bool MapExpr::analytic() const { return impl_->analytic; }
const std::string& MapExpr::source() const { return impl_->src; }
ExprPtr MapExpr::root() const { return impl_->root; }
ExprPtr MapExpr::deriv_root(Var v) const {
    switch (v) {
        case Var::Z: return impl_->d1[0];
        case Var::Zb: return impl_->d1[1];
        case Var::W: return impl_->d1[2];
        case Var::Wb: return impl_->d1[3];
    }
    return impl_->d1[0];
}

MapExpr parse_map(const std::string& src) { return MapExpr::parse(src); }

Cplx eval_map(const MapExpr& m, Cplx z, Cplx w) { return m.eval(z, w); }

ComplexDifferential wirtinger_differential(const MapExpr& m, Cplx z, Cplx w) {
    return m.wirtinger(z, w);
}

RealDifferential real_differential(const ComplexDifferential& cd) {
    const Cplx i(0, 1);
    const Cplx c0 = cd.fz + cd.fzb;
    const Cplx c1 = i * cd.fz - i * cd.fzb;
    const Cplx c2 = cd.fw + cd.fwb;
    const Cplx c3 = i * cd.fw - i * cd.fwb;
    RealDifferential df;
    df << c0.real(), c1.real(), c2.real(), c3.real(),
          c0.imag(), c1.imag(), c2.imag(), c3.imag();
    return df;
}

TwoFrame frame_of_rows(const RealDifferential& df) {
    return {Quat{df(0, 0), df(0, 1), df(0, 2), df(0, 3)},
            Quat{df(1, 0), df(1, 1), df(1, 2), df(1, 3)}};
}

Eigen::Vector3d l_field_raw(const ComplexDifferential& cd) {
    const double s = std::norm(cd.fz) - std::norm(cd.fzb) + std::norm(cd.fw) - std::norm(cd.fwb);
    const Cplx x = cd.fz * std::conj(cd.fwb) - std::conj(cd.fzb) * cd.fw;
    return {s, -2.0 * x.imag(), -2.0 * x.real()};
}

Eigen::Vector3d r_field_raw(const ComplexDifferential& cd) {
    const double s = std::norm(cd.fz) - std::norm(cd.fzb) - std::norm(cd.fw) + std::norm(cd.fwb);
    const Cplx y = cd.fz * std::conj(cd.fw) - std::conj(cd.fzb) * cd.fwb;
    return {s, -2.0 * y.imag(), 2.0 * y.real()};
}

namespace {

double row_scale(const ComplexDifferential& cd) {
    const RealDifferential df = real_differential(cd);
    return df.row(0).norm() * df.row(1).norm();
}

UnitPure field_unit(const Eigen::Vector3d& v, const ComplexDifferential& cd) {
    const double n = v.norm();
    const double scale = row_scale(cd);
    if (n <= 1e-9 * std::max(scale, 1e-300) || scale == 0.0) {
        throw CriticalPoint("plane-field vector vanishes: the point is critical");
    }
    return UnitPure(v);
}

}  // namespace

UnitPure l_field(const MapExpr& m, Cplx z, Cplx w) {
    const auto cd = m.wirtinger(z, w);
    return field_unit(l_field_raw(cd), cd);
}

UnitPure r_field(const MapExpr& m, Cplx z, Cplx w) {
    const auto cd = m.wirtinger(z, w);
    return field_unit(r_field_raw(cd), cd);
}

double critical_residual(const MapExpr& m, Cplx z, Cplx w) {
    return l_field_raw(m.wirtinger(z, w)).norm();
}

IsolatednessReport isolatedness_probe(const MapExpr& m, const Eigen::Vector4d& x,
                                      double eps, std::uint64_t seed,
                                      std::size_t n_directions) {
    IsolatednessReport rep;
    rep.min_residual = std::numeric_limits<double>::infinity();
    rep.min_normalized = std::numeric_limits<double>::infinity();

    Rng rng(Rng::sub_seed(seed, 0x150));
    constexpr int kShells = 8;
    for (int shell = 0; shell < kShells; ++shell) {
        const double r = eps * (0.5 + 0.5 * double(shell) / double(kShells - 1));
        for (std::size_t k = 0; k < n_directions; ++k) {
            const Eigen::Vector4d u = rng.unit4();
            const Eigen::Vector4d y = x + r * u;
            const auto cd = m.wirtinger(Cplx(y[0], y[1]), Cplx(y[2], y[3]));
            const double res = l_field_raw(cd).norm();
            const double scale = row_scale(cd);
            const double eta = scale > 0 ? res / scale : 0.0;
            rep.min_residual = std::min(rep.min_residual, res);
            rep.min_normalized = std::min(rep.min_normalized, eta);
            ++rep.samples;
        }
    }
    rep.pass = rep.min_normalized > 1e-3;
    return rep;
}

MapExpr mirror_map(const MapExpr& m) {
    return MapExpr(swap_z_zb(m.root()));
}

}  // namespace lrho
