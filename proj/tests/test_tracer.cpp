#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lrho/tracer.hpp"

using namespace lrho;

namespace {

const Eigen::Vector4d kOrigin = Eigen::Vector4d::Zero();

}  // namespace

TEST_CASE("hopf preimage of i is the circle |z| = 1, w = 0") {
    SphereTracer tracer(make_hopf_field(), kOrigin, 1.0);
    const auto comps = tracer.preimage_components(Eigen::Vector3d(1, 0, 0));
    REQUIRE(comps.size() == 1);
    const OrientedCurve& c = comps[0];
    CHECK(c.closed);
    CHECK(c.size() > 100);
    CHECK(c.max_residual < 1e-6);
    for (const auto& u : c.dirs) {
        CHECK(std::abs(u.head<2>().norm() - 1.0) < 1e-8);
        CHECK(u.tail<2>().norm() < 1e-8);
    }
    // Closure: first and last vertices coincide.
    CHECK((c.dirs.front() - c.dirs.back()).norm() < 1e-9);
}

TEST_CASE("hopf preimage of -i is the circle z = 0, |w| = 1") {
    SphereTracer tracer(make_hopf_field(), kOrigin, 1.0);
    const auto comps = tracer.preimage_components(Eigen::Vector3d(-1, 0, 0));
    REQUIRE(comps.size() == 1);
    for (const auto& u : comps[0].dirs) {
        CHECK(u.head<2>().norm() < 1e-8);
    }
}

TEST_CASE("constant field has empty preimage of any other value") {
    SphereTracer tracer(make_constant_field(Eigen::Vector3d(1, 0, 0)), kOrigin, 1.0);
    const auto comps = tracer.preimage_components(Eigen::Vector3d(-1, 0, 0));
    CHECK(comps.empty());
}

TEST_CASE("component count is stable under four-fold resampling") {
    const MapExpr m = parse_map("(z^2 + w^3) * conj(z^3 + w^2)");
    const auto field = make_map_field(m, Side::L);
    TraceParams par;
    par.n_samples = 4000;
    SphereTracer coarse(field, kOrigin, 0.25, par);
    const auto a = coarse.preimage_components(Eigen::Vector3d(1, 0, 0));
    par.n_samples = 16000;
    SphereTracer fine(field, kOrigin, 0.25, par);
    const auto b = fine.preimage_components(Eigen::Vector3d(1, 0, 0));
    CHECK(a.size() == b.size());
    CHECK(a.size() == 2);  // the z = 0 circle and the cusp curve
}

TEST_CASE("preimages of distinct values stay apart") {
    SphereTracer tracer(make_hopf_field(), kOrigin, 1.0);
    const auto P = tracer.preimage_components(Eigen::Vector3d(1, 0, 0));
    const auto Q = tracer.preimage_components(Eigen::Vector3d(-1, 0, 0));
    REQUIRE(P.size() == 1);
    REQUIRE(Q.size() == 1);
    const double sep = curve_curve_distance(P[0], Q[0]);
    CHECK(sep > 10.0 * std::max(P[0].max_step, Q[0].max_step));
}

TEST_CASE("trace from an explicit seed and dump") {
    SphereTracer tracer(make_hopf_field(), kOrigin, 1.0);
    const SpherePoint seed{Eigen::Vector4d(1, 0, 0, 0), Eigen::Vector4d(1, 0, 0, 0)};
    OrientedCurve c = tracer.trace_preimage(Eigen::Vector3d(1, 0, 0), seed);
    tracer.orient_curve(c);
    CHECK(c.closed);

    std::ostringstream os;
    dump_curves(os, {c});
    const std::string text = os.str();
    CHECK(text.find("# curve target=i orientation=+") == 0);
    CHECK(text.find('\n') != std::string::npos);
}

TEST_CASE("tangent frame l-side never reaches a generic value") {
    // l o T is constantly i; a rotated target has an empty preimage.
    SphereTracer tracer(make_tangent_jk_field(Side::L), kOrigin, 1.0);
    const auto comps =
        tracer.preimage_components(Eigen::Vector3d(0.9, 0.1, 0.0).normalized());
    CHECK(comps.empty());
}
