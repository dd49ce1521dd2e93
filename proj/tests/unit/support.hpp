#pragma once

#include <cmath>
#include <random>

#include "mnv/algebra.hpp"

namespace test {

inline std::mt19937_64& rng()
{
    static std::mt19937_64 gen(20240917);
    return gen;
}

inline double uniform(double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline mnv::Complex random_complex(double scale = 1.0)
{
    return {uniform(-scale, scale), uniform(-scale, scale)};
}

inline double dist(mnv::Complex a, mnv::Complex b) { return std::abs(a - b); }

inline double dist(const mnv::HMatrix& a, const mnv::HMatrix& b) { return (a - b).max_abs(); }

}  // namespace test
