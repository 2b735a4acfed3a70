#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "akns/algebra.hpp"

namespace akns {

// Seeded generator for property instances. The mapping from engine output to
// doubles is spelled out so that a seed gives the same numbers on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 42) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    cplx complexNormal(double scale = 1.0) { return {scale * normal(), scale * normal()}; }

    CMatrix matrix(std::size_t rows, std::size_t cols, double scale = 1.0) {
        CMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = complexNormal(scale);
        return m;
    }

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace akns
