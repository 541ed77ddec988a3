#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "opnorm/matrix.hpp"

namespace opnorm {

// One splitmix64 step. Used to spread a master seed into independent
// per-purpose streams so that adding a consumer never shifts another
// consumer's stream.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t s = master ^ (0xa0761d6478bd642fULL * (stream + 1));
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    return a ^ (b << 1);
}

// mt19937_64 wrapper with fixed floating-point mappings. std::uniform_*
// distributions are not portable across standard libraries; these are.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    std::size_t index(std::size_t n) {           // uniform in [0, n)
        return static_cast<std::size_t>(uniform01() * static_cast<double>(n)) % n;
    }

    // Box-Muller without a cached spare: always consumes exactly two
    // uniforms, so the stream position is independent of the call mix.
    double normal() {
        const double u1 = 1.0 - uniform01();     // (0,1], keeps log finite
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Standard complex gaussian, E|z|^2 = 1.
    cplx cgauss() {
        const double re = normal();
        const double im = normal();
        return cplx(re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0);
    }

    // Uniform on the unit circle.
    cplx unimodular() {
        const double t = 2.0 * std::numbers::pi * uniform01();
        return cplx(std::cos(t), std::sin(t));
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace opnorm
