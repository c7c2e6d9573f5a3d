#pragma once

#include "ghostsim/grid.hpp"

namespace ghostsim {

/// Riemann-sum discrete Fourier pair on the centered lattice.
///
/// forward:  T(k_m) = pitch^d * sum_j t(x_j) exp(-i k_m . x_j)
/// inverse:  t(x_j) = (1/(2 pi))^d * dk^d * sum_m T(k_m) exp(+i k_m . x_j)
///
/// d counts axes with more than one sample; a singleton axis is passed
/// through untouched. With dk = 2 pi/(n pitch) the pair is an exact
/// round trip and satisfies
///     sum |t|^2 pitch^d = (1/(2 pi))^d sum |T|^2 dk^d.
///
/// Reusable plan bound to one lattice. Not safe for concurrent calls on a
/// single instance; give each worker thread its own plan. Plan creation is
/// internally serialised, so instances may be built from any thread.
class DftPlan {
public:
    explicit DftPlan(GridSpec grid);
    ~DftPlan();
    DftPlan(const DftPlan&) = delete;
    DftPlan& operator=(const DftPlan&) = delete;

    const GridSpec& grid() const { return grid_; }

    /// in and out are grid().count() samples, row-major, x fastest.
    void forward(const cplx* in, cplx* out);
    void inverse(const cplx* in, cplx* out);

    /// Plain conjugate mode sum, sum_m T(k_m) exp(+i k_m . x_j), with no
    /// normalisation. inverse() equals this divided by prod(n * pitch).
    void backward_raw(const cplx* in, cplx* out);

    struct Impl;  // opaque; public only so the backend can reach it

private:
    Impl* impl_;
    GridSpec grid_;
};

/// One-shot transforms; pre: a spatial-plane field in, spectrum out.
ComplexField dft_forward(const ComplexField& field);

/// Pre: a spectrum or focal-plane field; the samples return to the
/// requested spatial plane.
ComplexField dft_inverse(const ComplexField& field, Plane target = Plane::source);

/// Focal-plane transverse position -> conjugate source frequency for an
/// f-f arm: u = 2 pi x_f / (lambda f). Units rad/um.
double focal_coordinate_map(double lambda_um, double focal_um, double x_f_um);

}  // namespace ghostsim
