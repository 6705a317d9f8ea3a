#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace repzeta {

// Philox4x32-10 counter-based generator. A (seed, stream) pair names an
// independent sequence, so per-trial streams give results that do not
// depend on thread scheduling.
class CounterRng {
public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t seed, std::uint64_t stream);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();
    // Uniform integer in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound);
    double uniform01();

    std::uint64_t seed() const { return key_seed_; }
    std::uint64_t stream() const { return stream_; }

private:
    void refill();

    std::uint64_t key_seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> block_{};
    unsigned used_ = 4;
};

}  // namespace repzeta
