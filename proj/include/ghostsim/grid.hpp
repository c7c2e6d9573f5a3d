#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghostsim {

using cplx = std::complex<double>;

/// Centered sampling lattice shared by the spatial and conjugate planes.
///
/// Sample j along x sits at (j - n_x/2) * pitch, so DC lives at index n_x/2.
/// The conjugate lattice uses the same centering with spacing 2*pi/(n*pitch).
/// Lengths are micrometres, frequencies rad/um. A 1-d run is n_y == 1; a
/// singleton axis is carried through every transform untouched.
struct GridSpec {
    int n_x = 0;
    int n_y = 1;
    double pitch = 0.0;  // um per sample, identical on both axes

    std::int64_t count() const { return std::int64_t(n_x) * n_y; }
    bool is_1d() const { return n_y == 1; }

    int centre_x() const { return n_x / 2; }
    int centre_y() const { return n_y / 2; }

    double coord_x(int j) const { return (j - centre_x()) * pitch; }
    double coord_y(int i) const { return (i - centre_y()) * pitch; }

    double dk_x() const { return two_pi() / (n_x * pitch); }
    double dk_y() const { return two_pi() / (n_y * pitch); }

    double freq_x(int j) const { return (j - centre_x()) * dk_x(); }
    double freq_y(int i) const { return (i - centre_y()) * dk_y(); }

    /// Row-major storage, x fastest.
    std::int64_t idx(int ix, int iy) const { return std::int64_t(iy) * n_x + ix; }

    bool operator==(const GridSpec& o) const {
        return n_x == o.n_x && n_y == o.n_y && pitch == o.pitch;
    }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }

    static constexpr double two_pi() { return 6.283185307179586476925286766559; }
};

/// Validated constructor; rejects non-positive extents, non-positive pitch
/// and lattices too large to address safely.
GridSpec make_grid(int n_x, int n_y, double pitch);

enum class Plane {
    source,        // z = 0, common speckle plane
    object,        // masked copy of the source plane
    focal,         // f-f arm output, conjugate coordinates
    reference_2f,  // 2f-2f arm output, identity image of the source
    spectrum       // plain transform-domain data with no optical meaning
};

const char* plane_name(Plane p);

inline bool plane_is_spatial(Plane p) {
    return p == Plane::source || p == Plane::object || p == Plane::reference_2f;
}

/// Complex samples bound to a lattice and a propagation plane tag.
struct ComplexField {
    GridSpec grid;
    Plane plane = Plane::source;
    std::vector<cplx> samples;
};

/// Validates sample count against the grid and that every value is finite.
ComplexField make_field(GridSpec grid, Plane plane, std::vector<cplx> samples);

/// Zero-filled field on the given lattice.
ComplexField zero_field(GridSpec grid, Plane plane);

}  // namespace ghostsim
