#pragma once

#include <Eigen/Core>
#include <cmath>
#include <complex>

#include "lrho/errors.hpp"

namespace lrho {

using Cplx = std::complex<double>;

// Quaternion a + b i + c j + d k, identified with C^2 by
// (z, w) <-> z + w j, i.e. z = a + b i and w = c + d i.
struct Quat {
    double a{0}, b{0}, c{0}, d{0};

    Quat() = default;
    constexpr Quat(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {}

    static Quat from_complex(Cplx z, Cplx w) {
        return {z.real(), z.imag(), w.real(), w.imag()};
    }
    static Quat from_vec4(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }

    Cplx z() const { return {a, b}; }
    Cplx w() const { return {c, d}; }
    Eigen::Vector4d vec4() const { return {a, b, c, d}; }

    Quat operator+(const Quat& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    Quat operator-(const Quat& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    Quat operator-() const { return {-a, -b, -c, -d}; }
    Quat operator*(double s) const { return {a * s, b * s, c * s, d * s}; }

    // Hamilton product.
    Quat operator*(const Quat& o) const {
        return {a * o.a - b * o.b - c * o.c - d * o.d,
                a * o.b + b * o.a + c * o.d - d * o.c,
                a * o.c - b * o.d + c * o.a + d * o.b,
                a * o.d + b * o.c - c * o.b + d * o.a};
    }

    Quat conj() const { return {a, -b, -c, -d}; }

    double norm_sq() const { return a * a + b * b + c * c + d * d; }
    double norm() const { return std::sqrt(norm_sq()); }

    double real() const { return a; }
    // Pure part as a vector in span(i, j, k).
    Eigen::Vector3d pure() const { return {b, c, d}; }

    double dot(const Quat& o) const { return a * o.a + b * o.b + c * o.c + d * o.d; }
};

inline Quat operator*(double s, const Quat& q) { return q * s; }

inline constexpr Quat kQuatOne{1, 0, 0, 0};
inline constexpr Quat kQuatI{0, 1, 0, 0};
inline constexpr Quat kQuatJ{0, 0, 1, 0};
inline constexpr Quat kQuatK{0, 0, 0, 1};

inline Quat quat_product(const Quat& x, const Quat& y) { return x * y; }

// A point of the sphere S^2 of unit pure quaternions (the square roots of -1).
struct UnitPure {
    Quat q;  // real part 0, norm 1

    UnitPure() : q(kQuatI) {}
    explicit UnitPure(const Quat& raw) : q(raw) {
        const double n = std::sqrt(raw.b * raw.b + raw.c * raw.c + raw.d * raw.d);
        if (n < 1e-300) throw DegenerateFrame("unit pure quaternion from zero vector");
        q = Quat{0, raw.b / n, raw.c / n, raw.d / n};
    }
    explicit UnitPure(const Eigen::Vector3d& v) : UnitPure(Quat{0, v[0], v[1], v[2]}) {}

    Eigen::Vector3d vec() const { return q.pure(); }
    UnitPure operator-() const { return UnitPure(Eigen::Vector3d(-q.b, -q.c, -q.d)); }
};

// Ordered pair of R^4 vectors spanning an oriented 2-plane.
struct TwoFrame {
    Quat A, B;

    // Gram determinant |A|^2 |B|^2 - <A,B>^2, the squared area of the frame.
    double gram_det() const {
        const double aa = A.norm_sq(), bb = B.norm_sq(), ab = A.dot(B);
        return aa * bb - ab * ab;
    }
    bool independent(double tol = 1e-10) const { return gram_det() > tol; }
};

namespace detail {
inline UnitPure unit_pure_of(const Quat& prod, const TwoFrame& f, const char* which) {
    const Eigen::Vector3d p = prod.pure();
    const double n = p.norm();
    const double scale = std::sqrt(f.A.norm_sq() * f.B.norm_sq());
    if (n <= 1e-10 * scale || scale == 0.0) {
        throw DegenerateFrame(std::string("frame is ") + which +
                              "-degenerate: pure part too small to normalize");
    }
    return UnitPure(p);
}
}  // namespace detail

// The left complex structure stabilizing the oriented span of (A, B):
// l(<A,B>) = UP(B conj(A)).
inline UnitPure l_of_frame(const TwoFrame& f) {
    return detail::unit_pure_of(f.B * f.A.conj(), f, "l");
}

// The right complex structure stabilizing the oriented span:
// r(<A,B>) = UP(conj(A) B).
inline UnitPure r_of_frame(const TwoFrame& f) {
    return detail::unit_pure_of(f.A.conj() * f.B, f, "r");
}

// (z, w) |-> ([|z|^2 - |w|^2] i, 2 i z conj(w)), the complex Hopf fibration.
inline UnitPure hopf_map(const Quat& q) {
    if (std::abs(q.norm() - 1.0) > 1e-9) {
        throw NotOnSphere("hopf_map argument is not on the unit 3-sphere");
    }
    const Cplx z = q.z(), w = q.w();
    const double s = std::norm(z) - std::norm(w);
    const Cplx second = Cplx(0, 2) * z * std::conj(w);
    return UnitPure(Eigen::Vector3d(s, second.real(), second.imag()));
}

}  // namespace lrho
