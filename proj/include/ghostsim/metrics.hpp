#pragma once

#include <vector>

#include "ghostsim/grid.hpp"
#include "ghostsim/optics.hpp"

namespace ghostsim {

/// Half-open index range [lo, hi) along the x axis of a 1-d profile.
struct IndexRange {
    int lo = 0;
    int hi = 0;
    int width() const { return hi - lo; }
};

/// (max - min) / (max + min) over the range. Throws when the range is empty,
/// out of bounds, or the sum is not positive.
double visibility(const std::vector<double>& values, IndexRange roi);

struct SnrResult {
    double snr = 0.0;  // (signal mean - background mean) / background sd
    double signal_mean = 0.0;
    double background_mean = 0.0;
    double background_sd = 0.0;  // snr is +inf when this vanishes
};

/// Signal-over-noise ratio of a profile: the mean inside signal_roi relative
/// to the mean and standard deviation of background_roi. Invariant under
/// affine rescaling of the profile; the regions must not overlap.
SnrResult snr(const std::vector<double>& values, IndexRange signal_roi,
              IndexRange background_roi);

/// |Z(k)| / |Z(0)| with Z(k) = sum_{j in window} v_j exp(-i k x_j), the
/// first-harmonic content of a 1-d profile within a window.
double harmonic_ratio(const std::vector<double>& values, const GridSpec& grid, IndexRange window,
                      double k);

/// Window for harmonic analysis of a slit grating: its bounding box widened
/// by margin_periods on each side, snapped outward to a whole number of
/// periods and clamped to the lattice.
IndexRange grating_window(const GridSpec& grid, const GratingSpec& spec, int margin_periods = 1);

struct FirstOrderResponse {
    double rfr = 0.0;           // image_ratio / object_ratio
    double image_ratio = 0.0;   // |I(k1)| / |I(0)| of the image profile
    double object_ratio = 0.0;  // same for the object profile
};

/// Transfer of the first grating harmonic from the object to the image:
/// harmonic_ratio(image) / harmonic_ratio(object) at k1, both over the same
/// window, which must span at least one full period 2 pi / k1. Identical
/// profiles give rfr = 1 exactly.
FirstOrderResponse first_order_response(const std::vector<double>& image,
                                        const std::vector<double>& object, const GridSpec& grid,
                                        IndexRange window, double k1);

/// Convenience form taking the object from a mask's |t| along the centre
/// row, with k1 = 2 pi / period_um.
FirstOrderResponse first_order_response(const std::vector<double>& image, const ObjectMask& mask,
                                        double period_um, IndexRange window);

/// One grating's worth of frequency-response data: csl_um is the slit width,
/// ffc the dimensionless first-order frequency l_c / period, rfr the
/// response.
struct ResponseRow {
    double csl_um = 0.0;
    double ffc = 0.0;
    double rfr = 0.0;
};

struct GaussianFit {
    double amplitude = 0.0;
    double width = 0.0;  // y = amplitude * exp(-(x/width)^2)
    double r2 = 0.0;     // coefficient of determination in log space
};

/// Least-squares fit of y = A exp(-(x/w)^2) by linear regression of ln y on
/// x^2. Requires positive y and at least two distinct x^2.
GaussianFit fit_gaussian_response(const std::vector<double>& xs, const std::vector<double>& ys);

/// Fit rfr = A exp(-(ffc/w)^2) over response rows; needs three or more rows
/// and at least two distinct ffc values.
GaussianFit fit_gaussian(const std::vector<ResponseRow>& rows);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Ordinary least squares y = slope * x + intercept.
LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace ghostsim
