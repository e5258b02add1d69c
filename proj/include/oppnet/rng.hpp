#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oppnet {

// Deterministic random stream. All draws go through hand-rolled mappings on
// top of mt19937_64 so that a given seed produces the same sequence on every
// build of this project (std::uniform_*_distribution output is
// implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // uniform double in [0, 1)
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // inclusive integer range
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next_u64() % span);
    }

    double exponential(double mean) {
        double u = uniform();
        return -mean * std::log1p(-u);
    }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(v.size()) - 1))];
    }

private:
    std::mt19937_64 gen_;
};

} // namespace oppnet
