#pragma once

#include "ghostsim/dft.hpp"
#include "ghostsim/grid.hpp"

#include <cstdint>
#include <vector>

namespace ghostsim {

enum class AmplitudeLaw {
    circular_gaussian,  // thermal statistics, the production law
    constant_modulus    // fixed modulus, random phase; diagnostic only
};

/// Angular-spectrum description of the pseudo-thermal source.
///
/// Mode k carries deterministic weight exp(-|k|^2/sigma^2), zeroed beyond
/// k_max, times a random amplitude with E|A|^2 = mode_intensity.
struct SourceParams {
    double sigma = 0.0;           // rad/um, spectral 1/e half-width scale
    double mode_intensity = 1.0;  // E|A_k|^2
    double k_max = 0.0;           // propagating-mode cutoff, rad/um
    AmplitudeLaw law = AmplitudeLaw::circular_gaussian;
};

/// sigma = 2 sqrt(2) / l_c, the inverse map of the field autocorrelation
/// exp(-sigma^2 dx^2 / 8) reaching 1/e at dx = l_c.
double sigma_from_coherence_length(double l_c_um);

/// Validates positivity and that the cutoff keeps at least the 3 sigma
/// band of the spectral weight.
SourceParams make_source_params(double sigma, double mode_intensity, double k_max,
                                AmplitudeLaw law = AmplitudeLaw::circular_gaussian);

/// One realisation of the random mode amplitudes on the conjugate lattice
/// of `grid`. Amplitudes are drawn in row-major lattice order from a stream
/// seeded only by `seed`, so equal (params, grid, seed) replay bit-exactly.
struct SpeckleDraw {
    GridSpec grid;
    std::uint64_t seed = 0;
    std::vector<cplx> amplitudes;
};

SpeckleDraw draw_speckle(const SourceParams& params, const GridSpec& grid, std::uint64_t seed);

/// Allocation-free variant: fills `out` (grid.count() samples) with the same
/// bit-exact sequence draw_speckle would produce for this seed.
void draw_speckle_amplitudes(const SourceParams& params, const GridSpec& grid, std::uint64_t seed,
                             std::vector<cplx>& out);

/// Deterministic spectral weights w(k) on the conjugate lattice, cutoff
/// applied.
std::vector<double> source_weights(const SourceParams& params, const GridSpec& grid);

/// U(x) = (1/2) sum_k w(k) A_k exp(i k . x) on the source plane.
ComplexField synthesize_source_field(const SpeckleDraw& draw, const SourceParams& params);

/// Hot-path variant writing into `out` (grid.count() samples) through a
/// caller-owned plan and scratch buffer of the same size.
void synthesize_source_field(const SpeckleDraw& draw, const std::vector<double>& weights,
                             DftPlan& plan, cplx* scratch, cplx* out);

}  // namespace ghostsim
