#ifndef CMDPIRL_RNG_HPP
#define CMDPIRL_RNG_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace cmdpirl {

// SplitMix64 step; used to derive independent stream seeds from (seed, stream).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

// Seedable stream with platform-independent output: mt19937_64 is fully
// specified by the standard, and doubles/categorical draws avoid the
// implementation-defined std::uniform_*/discrete_distribution.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
        : gen_(derive_seed(seed, stream)) {}

    std::uint64_t next_u64() { return gen_(); }

    // uniform in [0, 1) with 53 random bits
    double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // inverse-CDF draw from an unnormalized-tolerant probability vector
    int categorical(const std::vector<double>& probs) {
        if (probs.empty()) throw std::invalid_argument("categorical: empty");
        double u = next_double();
        double acc = 0.0;
        int last_positive = -1;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            if (probs[i] > 0.0) last_positive = static_cast<int>(i);
            acc += probs[i];
            if (u < acc) return static_cast<int>(i);
        }
        if (last_positive < 0) throw std::invalid_argument("categorical: all-zero");
        return last_positive;  // u landed in the rounding slack at the top
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace cmdpirl

#endif
