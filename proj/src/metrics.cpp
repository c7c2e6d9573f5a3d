#include "ghostsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ghostsim {
namespace {

void check_range(const std::vector<double>& values, IndexRange r, const char* what) {
    if (r.lo < 0 || r.hi > int(values.size()) || r.lo >= r.hi)
        throw std::invalid_argument(std::string(what) + ": index range must be a non-empty "
                                    "slice of the profile");
}

}  // namespace

double visibility(const std::vector<double>& values, IndexRange roi) {
    check_range(values, roi, "visibility");
    double lo = values[std::size_t(roi.lo)];
    double hi = lo;
    for (int j = roi.lo + 1; j < roi.hi; ++j) {
        lo = std::min(lo, values[std::size_t(j)]);
        hi = std::max(hi, values[std::size_t(j)]);
    }
    const double sum = hi + lo;
    if (!(sum > 0.0)) throw std::invalid_argument("visibility: max + min must be positive");
    return (hi - lo) / sum;
}

SnrResult snr(const std::vector<double>& values, IndexRange signal_roi,
              IndexRange background_roi) {
    check_range(values, signal_roi, "snr");
    check_range(values, background_roi, "snr");
    if (background_roi.width() < 2)
        throw std::invalid_argument("snr: background range needs at least two samples");
    if (signal_roi.lo < background_roi.hi && background_roi.lo < signal_roi.hi)
        throw std::invalid_argument("snr: signal and background ranges must not overlap");
    SnrResult r;
    double sig = 0.0;
    for (int j = signal_roi.lo; j < signal_roi.hi; ++j) sig += values[std::size_t(j)];
    r.signal_mean = sig / signal_roi.width();
    double mean = 0.0;
    for (int j = background_roi.lo; j < background_roi.hi; ++j) mean += values[std::size_t(j)];
    mean /= background_roi.width();
    double var = 0.0;
    for (int j = background_roi.lo; j < background_roi.hi; ++j) {
        const double d = values[std::size_t(j)] - mean;
        var += d * d;
    }
    var /= (background_roi.width() - 1);
    r.background_mean = mean;
    r.background_sd = std::sqrt(var);
    r.snr = r.background_sd > 0.0 ? (r.signal_mean - mean) / r.background_sd
                                  : std::numeric_limits<double>::infinity();
    return r;
}

double harmonic_ratio(const std::vector<double>& values, const GridSpec& grid, IndexRange window,
                      double k) {
    if (!grid.is_1d()) throw std::invalid_argument("harmonic_ratio: profile must be 1-d");
    check_range(values, window, "harmonic_ratio");
    double re = 0.0, im = 0.0, dc = 0.0;
    for (int j = window.lo; j < window.hi; ++j) {
        const double v = values[std::size_t(j)];
        const double ph = -k * grid.coord_x(j);
        re += v * std::cos(ph);
        im += v * std::sin(ph);
        dc += v;
    }
    if (!(std::abs(dc) > 0.0))
        throw std::invalid_argument("harmonic_ratio: window mean must be non-zero");
    return std::hypot(re, im) / std::abs(dc);
}

IndexRange grating_window(const GridSpec& grid, const GratingSpec& spec, int margin_periods) {
    if (margin_periods < 0) throw std::invalid_argument("grating_window: margin must be >= 0");
    const double period = spec.period();
    const double half_extent = 0.5 * spec.extent();
    const double half_window =
        (std::ceil(half_extent / period) + margin_periods) * period;
    // Symmetric half-open pixel range about the lattice centre.
    int half_px = int(std::lround(half_window / grid.pitch));
    half_px = std::min(half_px, std::min(grid.centre_x(), grid.n_x - grid.centre_x()));
    if (half_px < 1) throw std::invalid_argument("grating_window: window collapsed to nothing");
    return IndexRange{grid.centre_x() - half_px, grid.centre_x() + half_px};
}

FirstOrderResponse first_order_response(const std::vector<double>& image,
                                        const std::vector<double>& object, const GridSpec& grid,
                                        IndexRange window, double k1) {
    if (!(k1 > 0.0)) throw std::invalid_argument("first_order_response: k1 must be positive");
    if (window.width() * grid.pitch < GridSpec::two_pi() / k1 * (1.0 - 1e-12))
        throw std::invalid_argument("first_order_response: window must span at least one "
                                    "period");
    FirstOrderResponse r;
    r.object_ratio = harmonic_ratio(object, grid, window, k1);
    if (!(r.object_ratio > 0.0))
        throw std::invalid_argument("first_order_response: object has no first harmonic in "
                                    "this window");
    r.image_ratio = harmonic_ratio(image, grid, window, k1);
    r.rfr = r.image_ratio / r.object_ratio;
    return r;
}

FirstOrderResponse first_order_response(const std::vector<double>& image, const ObjectMask& mask,
                                        double period_um, IndexRange window) {
    if (!(period_um > 0.0))
        throw std::invalid_argument("first_order_response: period must be positive");
    const GridSpec& g = mask.grid;
    std::vector<double> object(std::size_t(g.n_x));
    const int row = g.centre_y();
    for (int ix = 0; ix < g.n_x; ++ix)
        object[std::size_t(ix)] = std::abs(mask.t[std::size_t(g.idx(ix, row))]);
    return first_order_response(image, object, g, window, GridSpec::two_pi() / period_um);
}

GaussianFit fit_gaussian_response(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("fit_gaussian_response: need matching xs/ys, two or more");
    std::vector<double> t(xs.size()), z(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(ys[i] > 0.0))
            throw std::invalid_argument("fit_gaussian_response: responses must be positive");
        t[i] = xs[i] * xs[i];
        z[i] = std::log(ys[i]);
    }
    const LineFit line = fit_line(t, z);
    if (!(line.slope < 0.0))
        throw std::invalid_argument("fit_gaussian_response: response does not decay");
    GaussianFit fit;
    fit.amplitude = std::exp(line.intercept);
    fit.width = 1.0 / std::sqrt(-line.slope);
    fit.r2 = line.r2;
    return fit;
}

GaussianFit fit_gaussian(const std::vector<ResponseRow>& rows) {
    if (rows.size() < 3) throw std::invalid_argument("fit_gaussian: need at least three rows");
    std::vector<double> xs(rows.size()), ys(rows.size());
    bool distinct = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        xs[i] = rows[i].ffc;
        ys[i] = rows[i].rfr;
        if (i > 0 && xs[i] != xs[0]) distinct = true;
    }
    if (!distinct) throw std::invalid_argument("fit_gaussian: all rows share one ffc");
    return fit_gaussian_response(xs, ys);
}

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("fit_line: need matching xs/ys, two or more");
    const double n = double(xs.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("fit_line: xs must not be constant");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

}  // namespace ghostsim
