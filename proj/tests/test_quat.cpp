#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lrho/quat.hpp"

using namespace lrho;

namespace {

bool near(const Eigen::Vector3d& a, const Eigen::Vector3d& b, double tol = 1e-12) {
    return (a - b).norm() < tol;
}

}  // namespace

TEST_CASE("hamilton product defining relations") {
    CHECK(near((kQuatI * kQuatJ).pure(), kQuatK.pure()));
    CHECK(near((kQuatJ * kQuatK).pure(), kQuatI.pure()));
    CHECK(near((kQuatK * kQuatJ).pure(), (-kQuatI).pure()));
    CHECK((kQuatI * kQuatI).real() == doctest::Approx(-1));
    // ijk = -1
    const Quat ijk = kQuatI * kQuatJ * kQuatK;
    CHECK(ijk.real() == doctest::Approx(-1));
    CHECK(ijk.pure().norm() == doctest::Approx(0));
}

TEST_CASE("bilinearity: (1+i)(1+j) = 1 + i + j + k") {
    const Quat p = Quat{1, 1, 0, 0} * Quat{1, 0, 1, 0};
    CHECK(p.a == doctest::Approx(1));
    CHECK(p.b == doctest::Approx(1));
    CHECK(p.c == doctest::Approx(1));
    CHECK(p.d == doctest::Approx(1));
}

TEST_CASE("conj is an anti-homomorphism") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<> d(-2, 2);
    for (int k = 0; k < 50; ++k) {
        const Quat x{d(gen), d(gen), d(gen), d(gen)};
        const Quat y{d(gen), d(gen), d(gen), d(gen)};
        const Quat lhs = (x * y).conj();
        const Quat rhs = y.conj() * x.conj();
        CHECK((lhs - rhs).norm() < 1e-12);
    }
}

TEST_CASE("l and r of coordinate frames") {
    // The complex line C x {0}.
    const TwoFrame f1{Quat::from_complex(1, 0), Quat::from_complex(Cplx(0, 1), 0)};
    CHECK(near(l_of_frame(f1).vec(), {1, 0, 0}));
    CHECK(near(r_of_frame(f1).vec(), {1, 0, 0}));

    // A = j, B = k: l = i, r = -i (the constant case of the tangent frame).
    const TwoFrame f2{kQuatJ, kQuatK};
    CHECK(near(l_of_frame(f2).vec(), {1, 0, 0}));
    CHECK(near(r_of_frame(f2).vec(), {-1, 0, 0}));

    // A = (1,0), B = (0,1): both images are j.
    const TwoFrame f3{Quat::from_complex(1, 0), Quat::from_complex(0, 1)};
    CHECK(near(l_of_frame(f3).vec(), {0, 1, 0}));
    CHECK(near(r_of_frame(f3).vec(), {0, 1, 0}));
}

TEST_CASE("l agrees with the complex-coordinate formula") {
    std::mt19937 gen(11);
    std::uniform_real_distribution<> d(-2, 2);
    for (int k = 0; k < 200; ++k) {
        const Cplx z1(d(gen), d(gen)), w1(d(gen), d(gen));
        const Cplx z2(d(gen), d(gen)), w2(d(gen), d(gen));
        const TwoFrame f{Quat::from_complex(z1, w1), Quat::from_complex(z2, w2)};
        if (f.gram_det() < 1e-3) continue;
        const Cplx first = std::conj(z1) * z2 + std::conj(w1) * w2;
        const Cplx second = z1 * w2 - w1 * z2;
        const Eigen::Vector3d expect =
            Eigen::Vector3d(first.imag(), second.real(), second.imag()).normalized();
        CHECK(near(l_of_frame(f).vec(), expect, 1e-10));
    }
}

TEST_CASE("unit pure outputs on random nondegenerate frames") {
    std::mt19937 gen(3);
    std::uniform_real_distribution<> d(-2, 2);
    for (int k = 0; k < 500; ++k) {
        const TwoFrame f{{d(gen), d(gen), d(gen), d(gen)}, {d(gen), d(gen), d(gen), d(gen)}};
        if (f.gram_det() < 1e-3) continue;
        for (const UnitPure& u : {l_of_frame(f), r_of_frame(f)}) {
            CHECK(std::abs(u.q.norm() - 1.0) < 1e-12);
            CHECK(std::abs(u.q.real()) < 1e-12);
            // square root of -1
            const Quat sq = u.q * u.q;
            CHECK(std::abs(sq.real() + 1.0) < 1e-10);
            CHECK(sq.pure().norm() < 1e-10);
        }
    }
}

TEST_CASE("frame invariance under positively oriented recombination") {
    std::mt19937 gen(17);
    std::uniform_real_distribution<> d(-2, 2);
    int done = 0;
    while (done < 100) {
        const TwoFrame f{{d(gen), d(gen), d(gen), d(gen)}, {d(gen), d(gen), d(gen), d(gen)}};
        if (f.gram_det() < 1e-2) continue;
        const double m00 = d(gen), m01 = d(gen), m10 = d(gen), m11 = d(gen);
        if (m00 * m11 - m01 * m10 < 1e-2) continue;
        const TwoFrame g{f.A * m00 + f.B * m01, f.A * m10 + f.B * m11};
        if (g.gram_det() < 1e-4) continue;
        CHECK(near(l_of_frame(f).vec(), l_of_frame(g).vec(), 1e-10));
        CHECK(near(r_of_frame(f).vec(), r_of_frame(g).vec(), 1e-10));
        ++done;
    }
}

TEST_CASE("orientation reversal negates l and r") {
    std::mt19937 gen(23);
    std::uniform_real_distribution<> d(-2, 2);
    for (int k = 0; k < 100; ++k) {
        const TwoFrame f{{d(gen), d(gen), d(gen), d(gen)}, {d(gen), d(gen), d(gen), d(gen)}};
        if (f.gram_det() < 1e-3) continue;
        const TwoFrame rev{f.B, f.A};
        CHECK(near(l_of_frame(f).vec(), -l_of_frame(rev).vec(), 1e-10));
        CHECK(near(r_of_frame(f).vec(), -r_of_frame(rev).vec(), 1e-10));
    }
}

TEST_CASE("degenerate frames are rejected") {
    const TwoFrame f{kQuatOne, kQuatOne * 2.0};
    CHECK_THROWS_AS(l_of_frame(f), DegenerateFrame);
    CHECK_THROWS_AS(r_of_frame(f), DegenerateFrame);
    CHECK(!f.independent());
}

TEST_CASE("hopf map values") {
    CHECK(near(hopf_map(Quat::from_complex(1, 0)).vec(), {1, 0, 0}));
    CHECK(near(hopf_map(Quat::from_complex(0, 1)).vec(), {-1, 0, 0}));
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(near(hopf_map(Quat::from_complex(s, s)).vec(), {0, 0, 1}, 1e-12));
    CHECK_THROWS_AS(hopf_map(Quat::from_complex(2, 0)), NotOnSphere);
}

TEST_CASE("hopf map is constant on fibers") {
    std::mt19937 gen(29);
    std::uniform_real_distribution<> d(-1, 1);
    int done = 0;
    while (done < 1000) {
        Quat q{d(gen), d(gen), d(gen), d(gen)};
        const double n = q.norm();
        if (n < 0.1) continue;
        q = q * (1.0 / n);
        const double th = 3.0 * d(gen);
        const Cplx u(std::cos(th), std::sin(th));
        const Quat q2 = Quat::from_complex(q.z() * u, q.w() * u);
        CHECK(near(hopf_map(q).vec(), hopf_map(q2).vec(), 1e-10));
        ++done;
    }
}
