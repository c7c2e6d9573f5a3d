#pragma once

#include <cstdint>
#include <complex>
#include <random>

namespace ghostsim {

/// Stateless mixing step of the splitmix64 generator.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Per-realisation sub-seed. Depends only on (master, index), never on the
/// execution schedule, so any work partition replays the same streams.
inline std::uint64_t derive_subseed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x51ed270b8a45c561ULL));
}

/// Recorded in run manifests; the draw contract is tied to this stack.
inline const char* generator_name() { return "splitmix64/mt19937_64/rayleigh-phase"; }

/// Deterministic random stream for one speckle realisation.
///
/// Uniform doubles come from explicit 53-bit conversions rather than
/// std distributions, which the standard leaves implementation-defined.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

    /// Uniform on (0, 1]; never zero, safe under log.
    double uniform_pos() {
        return (double((eng_() >> 11)) + 1.0) * 0x1p-53;
    }

    /// Uniform on [0, 1).
    double uniform() { return double(eng_() >> 11) * 0x1p-53; }

    /// Circularly symmetric complex Gaussian with E|A|^2 = variance
    /// (Rayleigh modulus, uniform phase).
    std::complex<double> circular_gaussian(double variance) {
        const double r = std::sqrt(-variance * std::log(uniform_pos()));
        const double phi = 6.283185307179586476925286766559 * uniform();
        return {r * std::cos(phi), r * std::sin(phi)};
    }

    /// |A|^2 = variance exactly, uniform phase. Diagnostic amplitude law used
    /// to break the Gaussian moment factorisation on purpose.
    std::complex<double> constant_modulus(double variance) {
        const double r = std::sqrt(variance);
        const double phi = 6.283185307179586476925286766559 * uniform();
        return {r * std::cos(phi), r * std::sin(phi)};
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace ghostsim
