#ifndef ABELJAC_RNG_HPP
#define ABELJAC_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace abeljac {

// Deterministic random source. std::mt19937_64 has a standard-mandated
// sequence; the uniform mappings below avoid the implementation-defined
// std distributions so seeded runs are byte-reproducible everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // integer in [lo, hi], inclusive
    int integer(int lo, int hi) {
        return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    int sign() { return (eng_() & 1u) ? 1 : -1; }

    std::complex<double> in_disk(double radius) {
        for (;;) {
            double re = uniform(-1.0, 1.0), im = uniform(-1.0, 1.0);
            if (re * re + im * im <= 1.0) return {radius * re, radius * im};
        }
    }

    std::uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
};

} // namespace abeljac

#endif
