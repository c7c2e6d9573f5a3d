#pragma once

#include "ghostsim/grid.hpp"
#include "ghostsim/optics.hpp"
#include "ghostsim/source.hpp"

namespace ghostsim {

/// Inputs for the closed-form correlation routes. The conjugate lattice of
/// `quad` is the quadrature grid; it must span at least 6 sigma either side
/// of DC with spacing at most sigma/8 on every transforming axis.
struct OracleConfig {
    SourceParams source;
    ArmParams arm;
    GridSpec quad;
};

OracleConfig make_oracle_config(SourceParams source, ArmParams arm, GridSpec quad);

/// Second-order correlation between the focal-plane point at (x_f, y_f) and
/// every reference-plane point of `out_grid`:
///
///   Gamma(x_f, x2f) = (I/4) sum_k exp(-2|k|^2/sigma^2) T(k - u(x_f))
///                     exp(-i k . x2f) dk
///
/// evaluated by trapezoidal quadrature, with T the mask spectrum taken by
/// direct summation. The reference axis carries the 2f-2f inversion, so a
/// clear pixel at +a images at x2f = -a.
std::vector<cplx> gamma_exact(const ObjectMask& mask, const OracleConfig& cfg, double x_f_um,
                              const GridSpec& out_grid, double y_f_um = 0.0);

/// Same quadrature at a focal offset; alias of gamma_exact kept distinct so
/// callers can name the offset study.
std::vector<cplx> gamma_offset(const ObjectMask& mask, const OracleConfig& cfg, double x_f_um,
                               const GridSpec& out_grid, double y_f_um = 0.0);

/// The factorised prediction exp(-i u(x_f) x2f) * gamma_exact(0) the offset
/// result is expected to reduce to while the spectral weight is flat across
/// the mask bandwidth.
std::vector<cplx> gamma_offset_factored(const ObjectMask& mask, const OracleConfig& cfg,
                                        double x_f_um, const GridSpec& out_grid,
                                        double y_f_um = 0.0);

/// Spatial-domain route: |sum_j t(x_j) g(x + x_j) pitch^d| with
/// g(d) = exp(-sigma^2 |d|^2 / 8), the mirrored mask convolved with the
/// Gaussian spreading kernel, peak-normalised. Absolute scale is carried
/// separately by psf_prefactor; profile comparisons are shape comparisons.
std::vector<double> image_psf_convolution(const ObjectMask& mask, double sigma);

/// sigma^2 I / 16, the physical prefactor of the convolution route.
double psf_prefactor(double sigma, double mode_intensity);

/// Spreading kernel and its Gaussian standard deviation 2/sigma.
double psf_gaussian(double sigma, double dx_um, double dy_um = 0.0);
double psf_std(double sigma);

/// Literal finite-aperture correlation integral: gamma_exact summed (as a
/// complex field correlation, not an intensity covariance) over the focal
/// bins [x_lo, x_hi) (times [y_lo, y_hi) in 2-d) of the conjugate lattice of
/// cfg.quad, with trapezoidal weights in the focal coordinate. The physical
/// bucket detector instead correlates intensities (see the estimator); the
/// two are related but not identical, and widening the aperture makes this
/// one concentrate toward x2f = 0 as the phase factors average out.
std::vector<cplx> bucket_gamma_integral(const ObjectMask& mask, const OracleConfig& cfg, int x_lo,
                                        int x_hi, const GridSpec& out_grid, int y_lo = 0,
                                        int y_hi = 1);

}  // namespace ghostsim
