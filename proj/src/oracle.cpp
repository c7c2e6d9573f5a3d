#include "ghostsim/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ghostsim/dft.hpp"

namespace ghostsim {
namespace {

struct MaskSupport {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<cplx> t;
    double cell = 1.0;  // pitch^d over the transforming axes
};

MaskSupport collect_support(const ObjectMask& mask) {
    MaskSupport s;
    const GridSpec& g = mask.grid;
    s.cell = g.pitch;
    if (g.n_y > 1) s.cell *= g.pitch;
    for (int iy = 0; iy < g.n_y; ++iy) {
        for (int ix = 0; ix < g.n_x; ++ix) {
            const cplx v = mask.t[g.idx(ix, iy)];
            if (v == cplx(0.0, 0.0)) continue;
            s.x.push_back(g.coord_x(ix));
            s.y.push_back(g.coord_y(iy));
            s.t.push_back(v);
        }
    }
    return s;
}

// Mask spectrum by direct summation, independent of any fast-transform path.
cplx spectrum_at(const MaskSupport& s, double qx, double qy) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t j = 0; j < s.t.size(); ++j) {
        const double ph = -(qx * s.x[j] + qy * s.y[j]);
        const double c = std::cos(ph);
        const double sn = std::sin(ph);
        re += s.t[j].real() * c - s.t[j].imag() * sn;
        im += s.t[j].real() * sn + s.t[j].imag() * c;
    }
    return cplx(re, im) * s.cell;
}

double trap_weight(int i, int n) {
    if (n == 1) return 1.0;
    return (i == 0 || i == n - 1) ? 0.5 : 1.0;
}

void check_quadrature_axis(double reach, double dk, double sigma, const char* axis) {
    if (reach < 6.0 * sigma) {
        throw std::invalid_argument(std::string("quadrature grid must span at least 6 sigma ") +
                                    "either side of DC on axis " + axis);
    }
    if (dk > sigma / 8.0 + 1e-15 * sigma) {
        throw std::invalid_argument(std::string("quadrature spacing must not exceed sigma/8 ") +
                                    "on axis " + axis);
    }
}

}  // namespace

OracleConfig make_oracle_config(SourceParams source, ArmParams arm, GridSpec quad) {
    const double sx0 = std::abs(quad.freq_x(0));
    const double sx1 = std::abs(quad.freq_x(quad.n_x - 1));
    check_quadrature_axis(std::min(sx0, sx1), quad.dk_x(), source.sigma, "x");
    if (quad.n_y > 1) {
        const double sy0 = std::abs(quad.freq_y(0));
        const double sy1 = std::abs(quad.freq_y(quad.n_y - 1));
        check_quadrature_axis(std::min(sy0, sy1), quad.dk_y(), source.sigma, "y");
    }
    return OracleConfig{source, arm, quad};
}

std::vector<cplx> gamma_exact(const ObjectMask& mask, const OracleConfig& cfg, double x_f_um,
                              const GridSpec& out_grid, double y_f_um) {
    const GridSpec& q = cfg.quad;
    const MaskSupport sup = collect_support(mask);
    const double u0x = focal_coordinate_map(cfg.arm.lambda_um, cfg.arm.focal_um, x_f_um);
    const double u0y =
        (q.n_y > 1) ? focal_coordinate_map(cfg.arm.lambda_um, cfg.arm.focal_um, y_f_um) : 0.0;
    const double sigma = cfg.source.sigma;

    // Quadrature measure over the transforming axes.
    double dk_measure = q.dk_x();
    if (q.n_y > 1) dk_measure *= q.dk_y();
    const double scale = 0.25 * cfg.source.mode_intensity * dk_measure;

    // Per-node coefficient: spectral weight, trapezoid weight, mask spectrum.
    struct Node {
        double kx, ky;
        cplx coeff;
    };
    std::vector<Node> nodes;
    nodes.reserve(static_cast<std::size_t>(q.count()));
    for (int iy = 0; iy < q.n_y; ++iy) {
        const double ky = (q.n_y > 1) ? q.freq_y(iy) : 0.0;
        const double wy = trap_weight(iy, q.n_y);
        for (int ix = 0; ix < q.n_x; ++ix) {
            const double kx = q.freq_x(ix);
            const double w = std::exp(-2.0 * (kx * kx + ky * ky) / (sigma * sigma));
            if (w < 1e-300) continue;
            const cplx tk = spectrum_at(sup, kx - u0x, ky - u0y);
            nodes.push_back({kx, ky, tk * (w * wy * trap_weight(ix, q.n_x))});
        }
    }

    std::vector<cplx> out(static_cast<std::size_t>(out_grid.count()));
    for (int oy = 0; oy < out_grid.n_y; ++oy) {
        const double y = out_grid.coord_y(oy);
        for (int ox = 0; ox < out_grid.n_x; ++ox) {
            const double x = out_grid.coord_x(ox);
            double re = 0.0;
            double im = 0.0;
            for (const Node& nd : nodes) {
                const double ph = -(nd.kx * x + nd.ky * y);
                const double c = std::cos(ph);
                const double sn = std::sin(ph);
                re += nd.coeff.real() * c - nd.coeff.imag() * sn;
                im += nd.coeff.real() * sn + nd.coeff.imag() * c;
            }
            out[static_cast<std::size_t>(out_grid.idx(ox, oy))] = cplx(re, im) * scale;
        }
    }
    return out;
}

std::vector<cplx> gamma_offset(const ObjectMask& mask, const OracleConfig& cfg, double x_f_um,
                               const GridSpec& out_grid, double y_f_um) {
    return gamma_exact(mask, cfg, x_f_um, out_grid, y_f_um);
}

std::vector<cplx> gamma_offset_factored(const ObjectMask& mask, const OracleConfig& cfg,
                                        double x_f_um, const GridSpec& out_grid, double y_f_um) {
    std::vector<cplx> base = gamma_exact(mask, cfg, 0.0, out_grid, 0.0);
    const double u0x = focal_coordinate_map(cfg.arm.lambda_um, cfg.arm.focal_um, x_f_um);
    const double u0y =
        (out_grid.n_y > 1) ? focal_coordinate_map(cfg.arm.lambda_um, cfg.arm.focal_um, y_f_um)
                           : 0.0;
    for (int oy = 0; oy < out_grid.n_y; ++oy) {
        for (int ox = 0; ox < out_grid.n_x; ++ox) {
            const double ph = -(u0x * out_grid.coord_x(ox) + u0y * out_grid.coord_y(oy));
            base[static_cast<std::size_t>(out_grid.idx(ox, oy))] *= cplx(std::cos(ph), std::sin(ph));
        }
    }
    return base;
}

namespace {

// The spectral route samples the mask spectrum on the reciprocal lattice,
// which treats the mask as one period of a periodic object. The kernel here
// is periodised the same way (nearest images suffice: the spreading width
// 2/sigma is far below any valid lattice span) so the two routes describe
// the same object even when the mask fills the whole span.
double periodic_psf(double sigma, double dx, double span_x, double dy, double span_y) {
    double acc = 0.0;
    for (int rx = -1; rx <= 1; ++rx) {
        const double px = dx + rx * span_x;
        if (span_x == 0.0 && rx != 0) continue;
        for (int ry = -1; ry <= 1; ++ry) {
            if (span_y == 0.0 && ry != 0) continue;
            acc += psf_gaussian(sigma, px, dy + ry * span_y);
        }
    }
    return acc;
}

}  // namespace

std::vector<double> image_psf_convolution(const ObjectMask& mask, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    const GridSpec& g = mask.grid;
    const MaskSupport sup = collect_support(mask);
    const double span_x = g.n_x > 1 ? g.n_x * g.pitch : 0.0;
    const double span_y = g.n_y > 1 ? g.n_y * g.pitch : 0.0;
    std::vector<double> out(static_cast<std::size_t>(g.count()));
    double peak = 0.0;
    for (int oy = 0; oy < g.n_y; ++oy) {
        const double y = g.coord_y(oy);
        for (int ox = 0; ox < g.n_x; ++ox) {
            const double x = g.coord_x(ox);
            double re = 0.0;
            double im = 0.0;
            for (std::size_t j = 0; j < sup.t.size(); ++j) {
                const double gsn =
                    periodic_psf(sigma, x + sup.x[j], span_x, y + sup.y[j], span_y);
                re += sup.t[j].real() * gsn;
                im += sup.t[j].imag() * gsn;
            }
            const double v = std::abs(cplx(re, im)) * sup.cell;
            out[static_cast<std::size_t>(g.idx(ox, oy))] = v;
            peak = std::max(peak, v);
        }
    }
    if (!(peak > 0.0)) throw std::invalid_argument("mask is fully opaque; shape undefined");
    for (double& v : out) v /= peak;
    return out;
}

double psf_prefactor(double sigma, double mode_intensity) {
    return sigma * sigma * mode_intensity / 16.0;
}

double psf_gaussian(double sigma, double dx_um, double dy_um) {
    const double r2 = dx_um * dx_um + dy_um * dy_um;
    return std::exp(-sigma * sigma * r2 / 8.0);
}

double psf_std(double sigma) { return 2.0 / sigma; }

std::vector<cplx> bucket_gamma_integral(const ObjectMask& mask, const OracleConfig& cfg, int x_lo,
                                        int x_hi, const GridSpec& out_grid, int y_lo, int y_hi) {
    const GridSpec& q = cfg.quad;
    if (x_lo < 0 || x_hi > q.n_x || x_lo >= x_hi) {
        throw std::invalid_argument("aperture x range must be a non-empty slice of the focal grid");
    }
    if (y_lo < 0 || y_hi > q.n_y || y_lo >= y_hi) {
        throw std::invalid_argument("aperture y range must be a non-empty slice of the focal grid");
    }
    // Focal-plane coordinate of conjugate-lattice bin k: x_f = k lambda f / 2pi.
    const double to_xf = cfg.arm.lambda_um * cfg.arm.focal_um / GridSpec::two_pi();
    const double dxf = q.dk_x() * to_xf;
    const double dyf = (q.n_y > 1) ? q.dk_y() * to_xf : 1.0;

    std::vector<cplx> acc(static_cast<std::size_t>(out_grid.count()), cplx(0.0, 0.0));
    for (int iy = y_lo; iy < y_hi; ++iy) {
        const double y_f = (q.n_y > 1) ? q.freq_y(iy) * to_xf : 0.0;
        const double wy = (y_hi - y_lo == 1) ? 1.0
                                             : ((iy == y_lo || iy == y_hi - 1) ? 0.5 : 1.0);
        for (int ix = x_lo; ix < x_hi; ++ix) {
            const double x_f = q.freq_x(ix) * to_xf;
            const double wx = (x_hi - x_lo == 1) ? 1.0
                                                 : ((ix == x_lo || ix == x_hi - 1) ? 0.5 : 1.0);
            const std::vector<cplx> g = gamma_exact(mask, cfg, x_f, out_grid, y_f);
            const double w = wx * wy * dxf * ((q.n_y > 1) ? dyf : 1.0);
            for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += g[j] * w;
        }
    }
    return acc;
}

}  // namespace ghostsim
