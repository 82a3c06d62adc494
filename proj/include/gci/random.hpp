#pragma once

#include <cstdint>
#include <random>

#include "fourpoint.hpp"

namespace gci {

// Seeded source of rational test data: numerators in [-9, 9],
// denominators in {1, 2, 3}.
class RationalSampler {
public:
    explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}

    Rat next()
    {
        std::uniform_int_distribution<int> num(-9, 9), den(1, 3);
        int p = num(rng_);
        int q = den(rng_);
        return rat(p, q);
    }

    Vec4 vec4() { return {next(), next(), next(), next()}; }

    // Rejects configurations with any vanishing interval.
    PointConfig config(std::size_t n)
    {
        for (;;) {
            PointConfig c;
            for (std::size_t i = 0; i < n; ++i) c.points.push_back(vec4());
            if (c.nondegenerate()) return c;
        }
    }

    PWParams params(bool with_B = false)
    {
        PWParams p{next(), next(), next(), next(), next(), 0};
        if (with_B) p.B = abs(next());
        return p;
    }

    std::mt19937_64 &engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace gci
