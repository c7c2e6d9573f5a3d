#pragma once

#include "ghostsim/grid.hpp"

#include <string>

namespace ghostsim {

/// Complex transmission map, |t| <= 1 everywhere.
struct ObjectMask {
    GridSpec grid;
    std::vector<cplx> t;
};

ObjectMask make_mask(GridSpec grid, std::vector<cplx> t);

/// True when every sample is exactly opaque or exactly clear within tol.
bool mask_is_binary(const ObjectMask& mask, double tol = 1e-12);

/// Total clear area, sum |t|^2 * pitch^2 (pitch^1 for a 1-d grid).
double mask_open_area(const ObjectMask& mask);

/// f-f arm geometry; only used to label focal-plane coordinates.
struct ArmParams {
    double lambda_um = 0.0;
    double focal_um = 0.0;
};

ArmParams make_arm(double lambda_um, double focal_um);

/// `count` clear slits of width `width_um` separated by opaque gaps of
/// `gap_um`, so the period is width + gap.
struct GratingSpec {
    double width_um = 0.0;
    double gap_um = 0.0;
    int count = 0;

    double period() const { return width_um + gap_um; }
    double extent() const { return count * width_um + (count - 1) * gap_um; }
};

/// Grating centred on the grid, uniform along y. A pixel is clear when at
/// least half of its cell lies inside a slit; the symmetric tie rule keeps
/// symmetric gratings exactly even. Rejects gratings wider than the grid.
ObjectMask make_slit_grating(const GridSpec& grid, const GratingSpec& spec);

/// Binary inversion 1 - t; rejects non-binary masks.
ObjectMask complement(const ObjectMask& mask);

/// Field behind the object propagated through the f-f arm: the conjugate
/// transform of t * U0, sampled on the conjugate lattice and tagged focal.
ComplexField object_arm_field(const ComplexField& source, const ObjectMask& mask,
                              const ArmParams& arm);

/// 2f-2f arm: an identity image of the source plane (unit magnification,
/// inversion folded into the correlation bookkeeping downstream).
ComplexField reference_arm_field(const ComplexField& source);

/// Writes |t| as an 8-bit P5 graymap (255 = unit transmission) plus a
/// `<path>.meta` sidecar carrying the lattice pitch.
void render_mask(const ObjectMask& mask, const std::string& path);

/// Reads a P5 graymap as a real mask, value/maxval. Pitch comes from the
/// sidecar when present, else from pitch_um_fallback (> 0).
ObjectMask load_mask(const std::string& path, double pitch_um_fallback = 0.0);

}  // namespace ghostsim
