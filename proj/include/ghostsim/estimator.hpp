#pragma once

#include <cstdint>
#include <vector>

#include "ghostsim/grid.hpp"
#include "ghostsim/optics.hpp"
#include "ghostsim/source.hpp"

namespace ghostsim {

/// Detector on the focal plane: either one pixel (field and intensity are
/// both recorded) or a bucket summing intensity over an index aperture.
struct DetectorSpec {
    enum class Kind { pixel, bucket };
    Kind kind = Kind::pixel;
    // pixel kind; -1 selects the lattice centre index n/2
    int pixel_ix = -1;
    int pixel_iy = -1;
    // bucket kind, half-open index ranges; -1/-1 selects the full axis
    int x_lo = -1, x_hi = -1;
    int y_lo = -1, y_hi = -1;

    static DetectorSpec centre_pixel();
    static DetectorSpec pixel(int ix, int iy = -1);
    static DetectorSpec bucket_full();
    static DetectorSpec bucket(int x_lo, int x_hi, int y_lo = -1, int y_hi = -1);
};

/// Ensemble-averaged correlations from M independent speckle draws.
///
/// Detector value per draw: pixel kind records the complex focal field at
/// the detector index and its squared modulus; bucket kind records the plain
/// sum of squared moduli over the aperture bins.
///
/// The reference axis x2f carries the image-arm inversion: entry j of the
/// reference-indexed vectors corresponds to the source sample at -coord(j).
///
/// gamma[j]    = (1/M) sum_m U_m(detector) conj(V_m(j))      (pixel kind)
/// g_fluct[j]  = (1/M) sum_m D_m I_m(j) - mean_D * mean_I(j)
///
/// Draws are split into 80 index-defined chunks merged in fixed order, so
/// results are bitwise identical for any thread count. Chunks group into 10
/// equal batches whose raw sums are retained for standard-error estimates.
/// Per-chunk partials are kept until the merge (~2.6 KB per lattice sample).
struct CorrelationResult {
    GridSpec grid;
    DetectorSpec detector;
    long long draws = 0;
    std::uint64_t master_seed = 0;
    int threads = 1;

    std::vector<cplx> gamma;  // empty for bucket kind
    std::vector<double> g_fluct;
    std::vector<double> mean_reference;
    double mean_detector = 0.0;

    struct BatchSums {
        long long draws = 0;
        double d = 0.0;                // sum of detector values
        std::vector<cplx> gamma;       // sum of U conj(V), pixel kind
        std::vector<double> di;        // sum of D * I(j)
        std::vector<double> i2;        // sum of I(j)
    };
    std::vector<BatchSums> batches;  // exactly 10
};

inline constexpr int kEnsembleChunks = 80;
inline constexpr int kEnsembleBatches = 10;

/// Runs the two-arm ensemble. Seeds per draw are derived from master_seed by
/// index, so the stream is independent of chunk scheduling. Requires at
/// least 2 draws so fluctuation covariances are defined; threads are capped
/// to the chunk count.
CorrelationResult run_ensemble(const SourceParams& source, const ObjectMask& mask,
                               const ArmParams& arm, const DetectorSpec& detector, long long draws,
                               std::uint64_t master_seed, int threads = 1);

/// Fluctuation image: g_fluct with negatives clamped to zero, scaled so the
/// peak equals 1. Throws if the image is identically non-positive.
std::vector<double> reconstruct_image(const CorrelationResult& r);

/// |gamma|^2, the field-correlation route to the same image (pixel kind).
std::vector<double> reconstruct_gamma_squared(const CorrelationResult& r);

/// Normalised intensity correlation 1 + g_fluct / (mean_D * mean_I).
std::vector<double> g2_image(const CorrelationResult& r);

/// Largest Student-t style statistic over x2f of the factorisation
/// g_fluct = |gamma|^2 that circular Gaussian statistics imply, using the
/// ten batch estimates for the standard error (pixel kind, >= 20 draws).
/// Thermal-law runs stay small; constant-modulus amplitudes violate the
/// factorisation and drive it far above 5.
double gaussian_moment_check(const CorrelationResult& r);

}  // namespace ghostsim
