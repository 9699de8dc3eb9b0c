#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lrho/fields.hpp"
#include "lrho/quat.hpp"

using namespace lrho;

namespace {

// Central-difference check of a field jacobian.
void check_jacobian(const SphereField& f, const Eigen::Vector4d& y, double tol = 1e-6) {
    const Matrix34 J = f.jacobian(y);
    const double h = 1e-5;
    for (int mu = 0; mu < 4; ++mu) {
        Eigen::Vector4d e = Eigen::Vector4d::Zero();
        e[mu] = h;
        const Eigen::Vector3d fd = (f.raw(y + e) - f.raw(y - e)) / (2 * h);
        const double scale = std::max(1.0, fd.norm());
        CHECK((J.col(mu) - fd).norm() / scale < tol);
    }
}

}  // namespace

TEST_CASE("hopf field matches hopf_map on the unit sphere") {
    const auto f = make_hopf_field();
    std::mt19937 gen(3);
    std::uniform_real_distribution<> d(-1, 1);
    for (int k = 0; k < 200; ++k) {
        Eigen::Vector4d y(d(gen), d(gen), d(gen), d(gen));
        if (y.norm() < 0.1) continue;
        y.normalize();
        const Eigen::Vector3d v = f->unit(y);
        const Eigen::Vector3d expect = hopf_map(Quat::from_vec4(y)).vec();
        CHECK((v - expect).norm() < 1e-12);
        check_jacobian(*f, y);
    }
}

TEST_CASE("tangent-jk r field is minus the conjugated i") {
    const auto f = make_tangent_jk_field(Side::R);
    std::mt19937 gen(5);
    std::uniform_real_distribution<> d(-1, 1);
    for (int k = 0; k < 100; ++k) {
        Eigen::Vector4d y(d(gen), d(gen), d(gen), d(gen));
        if (y.norm() < 0.1) continue;
        y.normalize();
        const Quat q = Quat::from_vec4(y);
        // r(<jQ, kQ>) = UP(conj(jQ) kQ) directly from the frame route.
        const TwoFrame fr{kQuatJ * q, kQuatK * q};
        CHECK((f->unit(y) - r_of_frame(fr).vec()).norm() < 1e-12);
        check_jacobian(*f, y);
    }
    // At Q = 1 the value is -i.
    CHECK((f->unit(Eigen::Vector4d(1, 0, 0, 0)) - Eigen::Vector3d(-1, 0, 0)).norm() <
          1e-14);
}

TEST_CASE("map field jacobians match finite differences") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<> d(-1.5, 1.5);
    const char* sources[] = {
        "z^2 + w^3",
        "zb^2 + w^3",
        "w^3 - 3*abs2(z)*(1 + z - zb)*w - 2*(z + zb)",
        "w^3 - 3*abs2(z)^2*(1 + z^2 - zb^2)*w - 2*(z^2 + zb^2)",
        "(z^2 + w^3) * conj(z^3 + w^2)",
    };
    for (const char* src : sources) {
        const MapExpr m = parse_map(src);
        for (Side side : {Side::L, Side::R}) {
            const auto f = make_map_field(m, side);
            for (int k = 0; k < 60; ++k) {
                const Eigen::Vector4d y(d(gen), d(gen), d(gen), d(gen));
                check_jacobian(*f, y, 1e-5);
            }
        }
    }
}

TEST_CASE("map field raw values agree with the point operations") {
    const MapExpr m = parse_map("(z^2 + w^3) * conj(z^3 + w^2)");
    const auto lf = make_map_field(m, Side::L);
    const auto rf = make_map_field(m, Side::R);
    std::mt19937 gen(11);
    std::uniform_real_distribution<> d(-1.5, 1.5);
    for (int k = 0; k < 100; ++k) {
        const Eigen::Vector4d y(d(gen), d(gen), d(gen), d(gen));
        const auto cd = wirtinger_differential(m, Cplx(y[0], y[1]), Cplx(y[2], y[3]));
        CHECK((lf->raw(y) - l_field_raw(cd)).norm() < 1e-12);
        CHECK((rf->raw(y) - r_field_raw(cd)).norm() < 1e-12);
    }
}

TEST_CASE("antipodal wrapper negates values and jacobians") {
    const auto base = make_hopf_field();
    const auto anti = make_antipodal_field(base);
    const Eigen::Vector4d y = Eigen::Vector4d(0.5, -0.3, 0.7, 0.2).normalized();
    CHECK((anti->raw(y) + base->raw(y)).norm() < 1e-15);
    CHECK((anti->jacobian(y) + base->jacobian(y)).norm() < 1e-15);
}

TEST_CASE("builtin lookup") {
    CHECK_NOTHROW(make_builtin_field("hopf", Side::L));
    CHECK_NOTHROW(make_builtin_field("antipodal-hopf", Side::L));
    CHECK_NOTHROW(make_builtin_field("tangent-jk", Side::R));
    CHECK_THROWS_AS(make_builtin_field("nope", Side::L), LrhoError);
}
