#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace hcol {

// Deterministic RNG wrapper. Bounded draws are done by rejection instead of
// std::uniform_int_distribution, whose output is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // uniform on [0, bound), bound > 0
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t limit = max - max % bound;
        std::uint64_t r;
        do {
            r = eng_();
        } while (r >= limit);
        return r % bound;
    }

    // uniform on [0, 1)
    double real() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 eng_;
};

}  // namespace hcol
