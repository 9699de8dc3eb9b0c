#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>

namespace lrho {

// All randomness in the library flows through seeded engines so that runs
// with the same --seed are bit-identical.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo, double hi) {
        std::uniform_real_distribution<double> d(lo, hi);
        return d(eng_);
    }

    double normal() {
        std::normal_distribution<double> d(0.0, 1.0);
        return d(eng_);
    }

    Eigen::Vector4d unit4() {
        Eigen::Vector4d v;
        do {
            v << normal(), normal(), normal(), normal();
        } while (v.norm() < 1e-8);
        return v.normalized();
    }

    Eigen::Vector3d unit3() {
        Eigen::Vector3d v;
        do {
            v << normal(), normal(), normal();
        } while (v.norm() < 1e-8);
        return v.normalized();
    }

    std::uint64_t raw() { return eng_(); }

    // Deterministic stream split: child k of a seed is independent per k.
    static std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t k) {
        std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return x;
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace lrho
