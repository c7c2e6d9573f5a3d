#pragma once

#include <string>
#include <vector>

#include "ghostsim/config.hpp"
#include "ghostsim/estimator.hpp"
#include "ghostsim/grid.hpp"
#include "ghostsim/optics.hpp"
#include "ghostsim/oracle.hpp"
#include "ghostsim/source.hpp"

namespace ghostsim {

/// Thrown for configuration problems (as opposed to runtime failures); the
/// CLI maps it to its own exit code.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Everything a run needs, parsed and validated from a Config.
///
/// Key schema (defaults in parentheses; see README for the full list):
///   grid.n_x, grid.n_y (1), grid.pitch_um
///   source.coherence_um (75) or source.sigma, source.intensity (1),
///   source.k_max (2 pi / lambda), source.law (gaussian)
///   arm.lambda_um (0.532), arm.focal_um (250000)
///   mask.kind in {open, point, grating, complement_grating, file} plus
///   mask.width_um/gap_um/count, mask.offset_um, mask.path
///   detector.kind (pixel), detector.pixel_ix/iy, detector.x_lo..y_hi
///   run.draws (10000), run.seed (1), run.threads (1)
///   oracle.x_f_um (0)
///   experiment.widths_um, experiment.open_area_um, experiment.counts,
///   experiment.seed_count
struct ExperimentSetup {
    GridSpec grid;
    SourceParams source;
    ArmParams arm;
    ObjectMask mask;
    GratingSpec grating;  // valid when the mask came from grating parameters
    bool has_grating = false;
    DetectorSpec detector;
    long long draws = 0;
    std::uint64_t seed = 0;
    int threads = 1;
    double oracle_x_f_um = 0.0;
};

ExperimentSetup build_setup(const Config& cfg);

/// Each runner writes its bundle into out_dir (created if needed) and
/// returns the paths written. Existing bundle files require overwrite.
/// Every bundle contains a manifest.txt whose config.* lines reproduce the
/// effective configuration.
std::vector<std::string> run_simulate(const Config& cfg, const std::string& out_dir,
                                      bool overwrite);
std::vector<std::string> run_oracle(const Config& cfg, const std::string& out_dir,
                                    bool overwrite);
std::vector<std::string> run_freq_response(const Config& cfg, const std::string& out_dir,
                                           bool overwrite);
std::vector<std::string> run_visibility(const Config& cfg, const std::string& out_dir,
                                        bool overwrite);
std::vector<std::string> run_complement(const Config& cfg, const std::string& out_dir,
                                        bool overwrite);
std::vector<std::string> run_mask_render(const Config& cfg, const std::string& out_dir,
                                         bool overwrite);
std::string mask_info(const Config& cfg);

/// Measured response values from a physical ghost-imaging experiment,
/// shipped for comparison plots only (never pass/fail targets). Returns a
/// quiet NaN for slit widths without a measurement.
double measured_response_reference(double csl_um);

}  // namespace ghostsim
