#include "ghostsim/dft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <vector>

namespace ghostsim {

namespace {

// FFTW's planner mutates global state; executions on distinct plans are fine.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

struct DftPlan::Impl {
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    // Linear index maps folding the centre-origin shifts into the copies:
    // in_map[j'] is the caller index feeding raw slot j', out_map[m] is the
    // raw slot feeding caller index m.
    std::vector<std::int64_t> in_map;
    std::vector<std::int64_t> out_map;
    double fwd_scale = 1.0;
    double inv_scale = 1.0;
};

DftPlan::DftPlan(GridSpec grid) : grid_(grid) {
    if (grid.n_x <= 0 || grid.n_y <= 0 || !(grid.pitch > 0.0))
        throw std::invalid_argument("DftPlan: invalid grid");
    impl_ = new Impl;
    const std::int64_t n = grid.count();
    impl_->in = fftw_alloc_complex(std::size_t(n));
    impl_->out = fftw_alloc_complex(std::size_t(n));
    {
        // FFTW_ESTIMATE keeps planning deterministic and leaves the buffers
        // untouched.
        std::lock_guard<std::mutex> lock(planner_mutex());
        impl_->fwd = fftw_plan_dft_2d(grid.n_y, grid.n_x, impl_->in, impl_->out,
                                      FFTW_FORWARD, FFTW_ESTIMATE);
        impl_->bwd = fftw_plan_dft_2d(grid.n_y, grid.n_x, impl_->in, impl_->out,
                                      FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (!impl_->fwd || !impl_->bwd)
        throw std::runtime_error("DftPlan: fftw plan creation failed");

    impl_->in_map.resize(std::size_t(n));
    impl_->out_map.resize(std::size_t(n));
    const int cx = grid.centre_x(), cy = grid.centre_y();
    for (int iy = 0; iy < grid.n_y; ++iy) {
        const int sy = (iy + cy) % grid.n_y;
        const int dy = (iy - cy + grid.n_y) % grid.n_y;
        for (int ix = 0; ix < grid.n_x; ++ix) {
            const int sx = (ix + cx) % grid.n_x;
            const int dx = (ix - cx + grid.n_x) % grid.n_x;
            impl_->in_map[std::size_t(grid.idx(ix, iy))] = grid.idx(sx, sy);
            impl_->out_map[std::size_t(grid.idx(ix, iy))] = grid.idx(dx, dy);
        }
    }
    // Riemann weights only on axes that actually transform.
    if (grid.n_x > 1) {
        impl_->fwd_scale *= grid.pitch;
        impl_->inv_scale /= grid.n_x * grid.pitch;
    }
    if (grid.n_y > 1) {
        impl_->fwd_scale *= grid.pitch;
        impl_->inv_scale /= grid.n_y * grid.pitch;
    }
}

DftPlan::~DftPlan() {
    if (impl_) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (impl_->fwd) fftw_destroy_plan(impl_->fwd);
        if (impl_->bwd) fftw_destroy_plan(impl_->bwd);
        fftw_free(impl_->in);
        fftw_free(impl_->out);
        delete impl_;
    }
}

namespace {

void run(const GridSpec& grid, DftPlan::Impl* im, fftw_plan plan, const cplx* in, cplx* out,
         double scale) {
    const std::int64_t n = grid.count();
    for (std::int64_t i = 0; i < n; ++i) {
        const cplx v = in[im->in_map[std::size_t(i)]];
        im->in[i][0] = v.real();
        im->in[i][1] = v.imag();
    }
    fftw_execute(plan);
    for (std::int64_t i = 0; i < n; ++i) {
        const std::int64_t s = im->out_map[std::size_t(i)];
        out[i] = cplx{im->out[s][0] * scale, im->out[s][1] * scale};
    }
}

}  // namespace

void DftPlan::forward(const cplx* in, cplx* out) {
    run(grid_, impl_, impl_->fwd, in, out, impl_->fwd_scale);
}

void DftPlan::inverse(const cplx* in, cplx* out) {
    run(grid_, impl_, impl_->bwd, in, out, impl_->inv_scale);
}

void DftPlan::backward_raw(const cplx* in, cplx* out) {
    run(grid_, impl_, impl_->bwd, in, out, 1.0);
}

ComplexField dft_forward(const ComplexField& field) {
    if (!plane_is_spatial(field.plane))
        throw std::invalid_argument(std::string("dft_forward: expects a spatial plane, got ") +
                                    plane_name(field.plane));
    DftPlan plan(field.grid);
    ComplexField out = zero_field(field.grid, Plane::spectrum);
    plan.forward(field.samples.data(), out.samples.data());
    return out;
}

ComplexField dft_inverse(const ComplexField& field, Plane target) {
    if (field.plane != Plane::spectrum && field.plane != Plane::focal)
        throw std::invalid_argument(
            std::string("dft_inverse: expects spectrum or focal samples, got ") +
            plane_name(field.plane));
    if (!plane_is_spatial(target))
        throw std::invalid_argument("dft_inverse: target must be a spatial plane");
    DftPlan plan(field.grid);
    ComplexField out = zero_field(field.grid, target);
    plan.inverse(field.samples.data(), out.samples.data());
    return out;
}

double focal_coordinate_map(double lambda_um, double focal_um, double x_f_um) {
    if (!(lambda_um > 0.0) || !(focal_um > 0.0))
        throw std::invalid_argument("focal_coordinate_map: wavelength and focal length "
                                    "must be positive");
    return GridSpec::two_pi() * x_f_um / (lambda_um * focal_um);
}

}  // namespace ghostsim
