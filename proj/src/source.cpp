#include "ghostsim/source.hpp"

#include "ghostsim/rng.hpp"

#include <cmath>

namespace ghostsim {

double sigma_from_coherence_length(double l_c_um) {
    if (!(l_c_um > 0.0) || !std::isfinite(l_c_um))
        throw std::invalid_argument("sigma_from_coherence_length: coherence length must be "
                                    "a positive finite length");
    return 2.0 * std::sqrt(2.0) / l_c_um;
}

SourceParams make_source_params(double sigma, double mode_intensity, double k_max,
                                AmplitudeLaw law) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("make_source_params: sigma must be positive and finite");
    if (!(mode_intensity > 0.0) || !std::isfinite(mode_intensity))
        throw std::invalid_argument("make_source_params: mode_intensity must be positive");
    if (!(k_max >= 3.0 * sigma))
        throw std::invalid_argument("make_source_params: k_max must keep the 3 sigma spectral "
                                    "band (k_max >= 3 sigma)");
    return SourceParams{sigma, mode_intensity, k_max, law};
}

SpeckleDraw draw_speckle(const SourceParams& params, const GridSpec& grid, std::uint64_t seed) {
    SpeckleDraw draw;
    draw.grid = grid;
    draw.seed = seed;
    draw_speckle_amplitudes(params, grid, seed, draw.amplitudes);
    return draw;
}

void draw_speckle_amplitudes(const SourceParams& params, const GridSpec& grid, std::uint64_t seed,
                             std::vector<cplx>& out) {
    out.resize(std::size_t(grid.count()));
    RandomStream stream(seed);
    if (params.law == AmplitudeLaw::circular_gaussian) {
        for (cplx& a : out) a = stream.circular_gaussian(params.mode_intensity);
    } else {
        for (cplx& a : out) a = stream.constant_modulus(params.mode_intensity);
    }
}

std::vector<double> source_weights(const SourceParams& params, const GridSpec& grid) {
    std::vector<double> w(std::size_t(grid.count()));
    const double inv_s2 = 1.0 / (params.sigma * params.sigma);
    const double k2_max = params.k_max * params.k_max;
    for (int iy = 0; iy < grid.n_y; ++iy) {
        const double ky = grid.is_1d() ? 0.0 : grid.freq_y(iy);
        for (int ix = 0; ix < grid.n_x; ++ix) {
            const double kx = grid.freq_x(ix);
            const double k2 = kx * kx + ky * ky;
            w[std::size_t(grid.idx(ix, iy))] = k2 > k2_max ? 0.0 : std::exp(-k2 * inv_s2);
        }
    }
    return w;
}

ComplexField synthesize_source_field(const SpeckleDraw& draw, const SourceParams& params) {
    DftPlan plan(draw.grid);
    const std::vector<double> w = source_weights(params, draw.grid);
    std::vector<cplx> scratch(std::size_t(draw.grid.count()));
    ComplexField out = zero_field(draw.grid, Plane::source);
    synthesize_source_field(draw, w, plan, scratch.data(), out.samples.data());
    return out;
}

void synthesize_source_field(const SpeckleDraw& draw, const std::vector<double>& weights,
                             DftPlan& plan, cplx* scratch, cplx* out) {
    if (plan.grid() != draw.grid || weights.size() != draw.amplitudes.size())
        throw std::invalid_argument("synthesize_source_field: draw, weights and plan must "
                                    "share one lattice");
    const std::int64_t n = draw.grid.count();
    for (std::int64_t i = 0; i < n; ++i)
        scratch[i] = 0.5 * weights[std::size_t(i)] * draw.amplitudes[std::size_t(i)];
    plan.backward_raw(scratch, out);
}

}  // namespace ghostsim
