// Scratch: singular-value scales of the chart derivative at converged seeds
// versus random sphere points, for the degenerate and rotated targets.
#include <Eigen/Geometry>
#include <algorithm>
#include <cstdio>

#include "lrho/linking.hpp"
#include "lrho/rng.hpp"

using namespace lrho;

namespace {

using Matrix43 = Eigen::Matrix<double, 4, 3>;

Matrix43 tangent_basis(const Eigen::Vector4d& u) {
    int drop = 0;
    for (int i = 1; i < 4; ++i) {
        if (std::abs(u[i]) > std::abs(u[drop])) drop = i;
    }
    Matrix43 B;
    int col = 0;
    for (int i = 0; i < 4; ++i) {
        if (i == drop) continue;
        Eigen::Vector4d e = Eigen::Vector4d::Unit(i);
        e -= e.dot(u) * u;
        for (int j = 0; j < col; ++j) e -= e.dot(B.col(j)) * B.col(j);
        B.col(col++) = e.normalized();
    }
    return B;
}

void chart_basis(const Eigen::Vector3d& p, Eigen::Vector3d& e1, Eigen::Vector3d& e2) {
    int drop = 0;
    for (int i = 1; i < 3; ++i) {
        if (std::abs(p[i]) > std::abs(p[drop])) drop = i;
    }
    Eigen::Vector3d a = Eigen::Vector3d::Unit((drop + 1) % 3);
    e1 = (a - a.dot(p) * p).normalized();
    e2 = p.cross(e1);
}

std::pair<double, double> sigmas(const SphereField& f, const Eigen::Vector4d& u,
                                 const Eigen::Vector3d& p, double eps) {
    Eigen::Vector3d e1, e2;
    chart_basis(p, e1, e2);
    const Eigen::Vector4d y = eps * u;
    const Eigen::Vector3d v = f.raw(y);
    const double n = v.norm();
    const Eigen::Vector3d g = v / n;
    const Matrix34 Dg =
        (Eigen::Matrix3d::Identity() - g * g.transpose()) * f.jacobian(y) * (eps / n);
    Eigen::Matrix<double, 2, 4> Dc;
    Dc.row(0) = e1.transpose() * Dg;
    Dc.row(1) = e2.transpose() * Dg;
    const Eigen::Matrix<double, 2, 3> J = Dc * tangent_basis(u);
    Eigen::JacobiSVD<Eigen::Matrix<double, 2, 3>> svd(J);
    return {svd.singularValues()[1], svd.singularValues()[0]};
}

}  // namespace

int main() {
    const MapExpr m = parse_map("z^2 + w^3");
    const FieldPtr rf = make_map_field(m, Side::R);
    const double eps = 0.25;

    for (bool rotated : {false, true}) {
        Eigen::Vector3d p(1, 0, 0);
        if (rotated) {
            Rng rot(Rng::sub_seed(0, 0x07a7e));
            p = (Eigen::AngleAxisd(0.05, rot.unit3()) * p).normalized();
        }
        std::printf("=== p %s\n", rotated ? "rotated" : "= i exactly");

        SphereTracer tracer(rf, Eigen::Vector4d::Zero(), eps, {});
        try {
            const auto seeds = tracer.find_seeds(p);
            std::printf("seeds: %zu\n", seeds.size());
            for (std::size_t i = 0; i < std::min<std::size_t>(5, seeds.size()); ++i) {
                const auto [smin, smax] = sigmas(*rf, seeds[i].u, p, eps);
                std::printf("  seed %zu: sigma_min %.3e sigma_max %.3e ratio %.3e\n", i,
                            smin, smax, smin / smax);
            }
        } catch (const NoSeedsFound&) {
            std::printf("no seeds\n");
        }

        Rng rng(123);
        std::vector<double> all;
        for (int k = 0; k < 512; ++k) {
            const auto [smin, smax] = sigmas(*rf, rng.unit4(), p, eps);
            all.push_back(smax);
        }
        std::sort(all.begin(), all.end());
        std::printf("random sigma_max percentiles: 10%%=%.3e 25%%=%.3e 50%%=%.3e 90%%=%.3e\n",
                    all[51], all[128], all[256], all[460]);
    }
    return 0;
}
