#pragma once

#include <cstdint>
#include <random>

#include "framelink/rational.hpp"

namespace framelink {

// All randomness in the library flows through this: same seed, same run.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        std::uniform_int_distribution<std::int64_t> d(lo, hi);
        return d(gen_);
    }

    // Small rational in (-1/denom_scale, 1/denom_scale), never zero.
    Rat tiny(std::int64_t denom_scale = 1000000) {
        std::int64_t n = 0;
        while (n == 0) n = uniform_int(-999, 999);
        return Rat(Int(n), Int(denom_scale) * 1000);
    }

    Rat rational(std::int64_t lo, std::int64_t hi, std::int64_t max_den = 16) {
        std::int64_t d = uniform_int(1, max_den);
        std::int64_t n = uniform_int(lo * d, hi * d);
        return Rat(Int(n), Int(d));
    }

    // Exact rotation matrix from a Pythagorean parametrization,
    // (c, s) = ((1-t^2)/(1+t^2), 2t/(1+t^2)).
    std::pair<Rat, Rat> rotation() {
        Rat t(uniform_int(-999, 999), uniform_int(1, 999) + 1000);
        Rat t2 = t * t;
        return {(1 - t2) / (1 + t2), 2 * t / (1 + t2)};
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace framelink
