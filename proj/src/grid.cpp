#include "ghostsim/grid.hpp"

#include <cmath>

namespace ghostsim {

GridSpec make_grid(int n_x, int n_y, double pitch) {
    if (n_x <= 0 || n_y <= 0)
        throw std::invalid_argument("make_grid: sample counts must be positive, got " +
                                    std::to_string(n_x) + " x " + std::to_string(n_y));
    if (!(pitch > 0.0) || !std::isfinite(pitch))
        throw std::invalid_argument("make_grid: pitch must be a positive finite length");
    // 2^26 samples caps a field at 1 GiB of complex doubles.
    if (std::int64_t(n_x) * n_y > (std::int64_t(1) << 26))
        throw std::invalid_argument("make_grid: lattice exceeds the 2^26 sample limit");
    return GridSpec{n_x, n_y, pitch};
}

const char* plane_name(Plane p) {
    switch (p) {
        case Plane::source: return "source";
        case Plane::object: return "object";
        case Plane::focal: return "focal";
        case Plane::reference_2f: return "reference-2f";
        case Plane::spectrum: return "spectrum";
    }
    return "?";
}

ComplexField make_field(GridSpec grid, Plane plane, std::vector<cplx> samples) {
    if (std::int64_t(samples.size()) != grid.count())
        throw std::invalid_argument("make_field: sample count does not match the grid");
    for (const cplx& v : samples)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("make_field: non-finite sample");
    return ComplexField{grid, plane, std::move(samples)};
}

ComplexField zero_field(GridSpec grid, Plane plane) {
    return ComplexField{grid, plane, std::vector<cplx>(std::size_t(grid.count()), cplx{0.0, 0.0})};
}

}  // namespace ghostsim
