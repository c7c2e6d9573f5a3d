#include "ghostsim/optics.hpp"

#include "ghostsim/dft.hpp"
#include "ghostsim/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace ghostsim {

ObjectMask make_mask(GridSpec grid, std::vector<cplx> t) {
    if (std::int64_t(t.size()) != grid.count())
        throw std::invalid_argument("make_mask: sample count does not match the grid");
    for (const cplx& v : t) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("make_mask: non-finite transmission sample");
        if (std::abs(v) > 1.0 + 1e-12)
            throw std::invalid_argument("make_mask: transmission magnitude exceeds 1");
    }
    return ObjectMask{grid, std::move(t)};
}

bool mask_is_binary(const ObjectMask& mask, double tol) {
    for (const cplx& v : mask.t) {
        if (std::abs(v.imag()) > tol) return false;
        const double r = v.real();
        if (std::abs(r) > tol && std::abs(r - 1.0) > tol) return false;
    }
    return true;
}

double mask_open_area(const ObjectMask& mask) {
    double area = 0.0;
    for (const cplx& v : mask.t) area += std::norm(v);
    const double cell = mask.grid.is_1d() ? mask.grid.pitch : mask.grid.pitch * mask.grid.pitch;
    return area * cell;
}

ArmParams make_arm(double lambda_um, double focal_um) {
    if (!(lambda_um > 0.0) || !std::isfinite(lambda_um))
        throw std::invalid_argument("make_arm: wavelength must be positive");
    if (!(focal_um > 0.0) || !std::isfinite(focal_um))
        throw std::invalid_argument("make_arm: focal length must be positive");
    return ArmParams{lambda_um, focal_um};
}

ObjectMask make_slit_grating(const GridSpec& grid, const GratingSpec& spec) {
    if (!(spec.width_um > 0.0))
        throw std::invalid_argument("make_slit_grating: slit width must be positive");
    if (!(spec.gap_um >= 0.0))
        throw std::invalid_argument("make_slit_grating: gap must be non-negative");
    if (spec.count < 1)
        throw std::invalid_argument("make_slit_grating: need at least one slit");
    const double span = grid.n_x * grid.pitch;
    if (spec.extent() > span)
        throw std::invalid_argument("make_slit_grating: grating extent " +
                                    std::to_string(spec.extent()) + " um exceeds the grid span " +
                                    std::to_string(span) + " um");

    const double left = -0.5 * spec.extent();
    const double half = 0.5 * grid.pitch;
    std::vector<double> row(std::size_t(grid.n_x), 0.0);
    for (int ix = 0; ix < grid.n_x; ++ix) {
        const double lo = grid.coord_x(ix) - half;
        const double hi = grid.coord_x(ix) + half;
        double covered = 0.0;
        for (int s = 0; s < spec.count; ++s) {
            const double s_lo = left + s * spec.period();
            const double s_hi = s_lo + spec.width_um;
            covered += std::max(0.0, std::min(hi, s_hi) - std::max(lo, s_lo));
        }
        // >= half-covered counts as clear; the 1e-9 slack keeps the tie rule
        // immune to rounding of the slit edges.
        row[std::size_t(ix)] = covered >= half - 1e-9 * grid.pitch ? 1.0 : 0.0;
    }

    std::vector<cplx> t(std::size_t(grid.count()));
    for (int iy = 0; iy < grid.n_y; ++iy)
        for (int ix = 0; ix < grid.n_x; ++ix)
            t[std::size_t(grid.idx(ix, iy))] = row[std::size_t(ix)];
    return ObjectMask{grid, std::move(t)};
}

ObjectMask complement(const ObjectMask& mask) {
    if (!mask_is_binary(mask))
        throw std::invalid_argument("complement: mask must be binary (0/1 transmission)");
    ObjectMask out{mask.grid, mask.t};
    for (cplx& v : out.t) v = cplx{v.real() > 0.5 ? 0.0 : 1.0, 0.0};
    return out;
}

ComplexField object_arm_field(const ComplexField& source, const ObjectMask& mask,
                              const ArmParams& arm) {
    make_arm(arm.lambda_um, arm.focal_um);  // reject degenerate geometry early
    if (source.grid != mask.grid)
        throw std::invalid_argument("object_arm_field: source field and mask live on "
                                    "different grids");
    if (!plane_is_spatial(source.plane) || source.plane == Plane::reference_2f)
        throw std::invalid_argument("object_arm_field: expects the shared source plane");
    ComplexField masked = source;
    masked.plane = Plane::object;
    for (std::int64_t i = 0; i < source.grid.count(); ++i)
        masked.samples[std::size_t(i)] *= mask.t[std::size_t(i)];
    ComplexField focal = dft_forward(masked);
    focal.plane = Plane::focal;
    return focal;
}

ComplexField reference_arm_field(const ComplexField& source) {
    if (source.plane != Plane::source && source.plane != Plane::reference_2f)
        throw std::invalid_argument("reference_arm_field: expects the shared source plane");
    ComplexField out = source;
    out.plane = Plane::reference_2f;
    return out;
}

void render_mask(const ObjectMask& mask, const std::string& path) {
    PgmImage img;
    img.width = mask.grid.n_x;
    img.height = mask.grid.n_y;
    img.pixels.resize(std::size_t(mask.grid.count()));
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        img.pixels[i] = std::uint8_t(std::lround(std::clamp(std::abs(mask.t[i]), 0.0, 1.0) * 255.0));
    write_pgm(path, img, "transmission magnitude, 255 = 1.0");
    std::ofstream meta(path + ".meta");
    if (!meta) throw std::runtime_error("render_mask: cannot open " + path + ".meta");
    meta << "n_x = " << mask.grid.n_x << "\n"
         << "n_y = " << mask.grid.n_y << "\n"
         << "pitch_um = " << format_sig9(mask.grid.pitch) << "\n";
}

ObjectMask load_mask(const std::string& path, double pitch_um_fallback) {
    const PgmImage img = read_pgm(path);
    double pitch = pitch_um_fallback;
    std::ifstream meta(path + ".meta");
    if (meta) {
        std::string key, eq;
        double val;
        while (meta >> key >> eq >> val)
            if (key == "pitch_um") pitch = val;
    }
    if (!(pitch > 0.0))
        throw std::runtime_error("load_mask: no pitch sidecar for " + path +
                                 " and no explicit pitch given");
    const GridSpec grid = make_grid(img.width, img.height, pitch);
    std::vector<cplx> t(std::size_t(grid.count()));
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = img.pixels[i] / 255.0;
    return make_mask(grid, std::move(t));
}

}  // namespace ghostsim
