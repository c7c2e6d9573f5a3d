#include "ghostsim/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "ghostsim/dft.hpp"
#include "ghostsim/io.hpp"
#include "ghostsim/metrics.hpp"
#include "ghostsim/rng.hpp"
#include "ghostsim/version.hpp"

namespace fs = std::filesystem;

namespace ghostsim {
namespace {

const std::vector<std::string> kKnownKeys = {
    "grid.n_x",          "grid.n_y",
    "grid.pitch_um",     "source.coherence_um",
    "source.sigma",      "source.intensity",
    "source.k_max",      "source.law",
    "arm.lambda_um",     "arm.focal_um",
    "mask.kind",         "mask.width_um",
    "mask.gap_um",       "mask.count",
    "mask.offset_um",    "mask.path",
    "detector.kind",     "detector.pixel_ix",
    "detector.pixel_iy", "detector.x_lo",
    "detector.x_hi",     "detector.y_lo",
    "detector.y_hi",     "run.draws",
    "run.seed",          "run.threads",
    "oracle.x_f_um",     "experiment.widths_um",
    "experiment.open_area_um", "experiment.counts",
    "experiment.seed_count",
};

[[noreturn]] void config_fail(const std::string& msg) { throw ConfigError(msg); }

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

// ---- bundle plumbing ----

void prepare_dir(const std::string& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + out_dir);
}

void guard_overwrite(const std::vector<std::string>& paths, bool overwrite) {
    if (overwrite) return;
    for (const std::string& p : paths) {
        if (fs::exists(p))
            throw std::runtime_error("output file " + p +
                                     " already exists; pass --overwrite to replace it");
    }
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

/// Profile CSV: (x2f_um, value) in 1-d, (x2f_um, y2f_um, value) on 2-d maps.
void write_profile_csv(const std::string& path, const GridSpec& grid,
                       const std::vector<double>& values) {
    if (grid.is_1d()) {
        CsvWriter csv(path, {"x2f_um", "value"});
        for (int j = 0; j < grid.n_x; ++j)
            csv.row({grid.coord_x(j), values[std::size_t(j)]});
        return;
    }
    CsvWriter csv(path, {"x2f_um", "y2f_um", "value"});
    for (int iy = 0; iy < grid.n_y; ++iy)
        for (int ix = 0; ix < grid.n_x; ++ix)
            csv.row({grid.coord_x(ix), grid.coord_y(iy),
                     values[std::size_t(grid.idx(ix, iy))]});
}

struct HeatmapScale {
    double lo = 0.0;
    double hi = 0.0;
};

HeatmapScale write_heatmap(const std::string& path, const GridSpec& grid,
                           const std::vector<double>& values) {
    HeatmapScale s;
    s.lo = values[0];
    s.hi = values[0];
    for (double v : values) {
        s.lo = std::min(s.lo, v);
        s.hi = std::max(s.hi, v);
    }
    PgmImage img;
    img.width = grid.n_x;
    img.height = grid.n_y;
    img.pixels.resize(values.size());
    const double span = s.hi - s.lo;
    for (std::size_t j = 0; j < values.size(); ++j) {
        const double t = span > 0.0 ? (values[j] - s.lo) / span : 0.0;
        img.pixels[j] = std::uint8_t(std::lround(255.0 * t));
    }
    write_pgm(path, img, "linear scale min=" + format_sig9(s.lo) + " max=" + format_sig9(s.hi));
    return s;
}

/// The fully resolved configuration a manifest must carry to reproduce the
/// run: explicit values for every core key, whether defaulted or given.
/// Shortest decimal that parses back to the same double: manifest values must
/// survive a write/parse cycle bit-exactly, unlike CSV data columns.
std::string format_exact(double v) {
    std::ostringstream ss;
    ss << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return ss.str();
}

Config effective_config(const ExperimentSetup& s, const Config& cfg) {
    Config e;
    auto put_num = [&e](const std::string& key, double v) { e.set(key, format_exact(v)); };
    e.set("grid.n_x", std::to_string(s.grid.n_x));
    e.set("grid.n_y", std::to_string(s.grid.n_y));
    put_num("grid.pitch_um", s.grid.pitch);
    put_num("source.sigma", s.source.sigma);
    put_num("source.intensity", s.source.mode_intensity);
    put_num("source.k_max", s.source.k_max);
    e.set("source.law", s.source.law == AmplitudeLaw::circular_gaussian ? "gaussian"
                                                                        : "constant_modulus");
    put_num("arm.lambda_um", s.arm.lambda_um);
    put_num("arm.focal_um", s.arm.focal_um);
    e.set("mask.kind", cfg.get_string("mask.kind", "open"));
    for (const char* key : {"mask.width_um", "mask.gap_um", "mask.count", "mask.offset_um",
                            "mask.path", "experiment.widths_um", "experiment.open_area_um",
                            "experiment.counts", "experiment.seed_count"})
        if (cfg.has(key)) e.set(key, cfg.get_string(key));
    e.set("detector.kind",
          s.detector.kind == DetectorSpec::Kind::pixel ? "pixel" : "bucket");
    for (const char* key : {"detector.pixel_ix", "detector.pixel_iy", "detector.x_lo",
                            "detector.x_hi", "detector.y_lo", "detector.y_hi"})
        if (cfg.has(key)) e.set(key, cfg.get_string(key));
    e.set("run.draws", std::to_string(s.draws));
    e.set("run.seed", std::to_string(s.seed));
    e.set("run.threads", std::to_string(s.threads));
    put_num("oracle.x_f_um", s.oracle_x_f_um);
    return e;
}

void write_manifest(const std::string& path, const std::string& command, const Config& effective,
                    const std::vector<std::pair<std::string, std::string>>& extras,
                    double wall_seconds) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest " + path);
    out << "manifest.command = " << command << "\n";
    out << "manifest.version = " << kVersion << "\n";
    out << "manifest.generator = " << generator_name() << "\n";
    out << "manifest.wall_seconds = " << format_sig9(wall_seconds) << "\n";
    std::istringstream body(effective.serialize());
    std::string line;
    while (std::getline(body, line)) out << "config." << line << "\n";
    for (const auto& kv : extras) out << "result." << kv.first << " = " << kv.second << "\n";
    if (!out) throw std::runtime_error("write failed for manifest " + path);
}

// ---- setup parsing ----

ObjectMask build_mask(const Config& cfg, const GridSpec& grid, GratingSpec* grating,
                      bool* has_grating) {
    const std::string kind = cfg.get_string("mask.kind", "open");
    *has_grating = false;
    if (kind == "open") {
        return make_mask(grid, std::vector<cplx>(std::size_t(grid.count()), cplx(1.0, 0.0)));
    }
    if (kind == "point") {
        const double off = cfg.get_double("mask.offset_um", 0.0);
        std::vector<cplx> t(std::size_t(grid.count()), cplx(0.0, 0.0));
        const int ix = grid.centre_x() + int(std::lround(off / grid.pitch));
        if (ix < 0 || ix >= grid.n_x)
            config_fail("mask.offset_um places the point outside the lattice");
        t[std::size_t(grid.idx(ix, grid.centre_y()))] = cplx(1.0, 0.0);
        return make_mask(grid, std::move(t));
    }
    if (kind == "grating" || kind == "complement_grating") {
        GratingSpec spec;
        spec.width_um = cfg.get_double("mask.width_um");
        spec.gap_um = cfg.get_double("mask.gap_um");
        spec.count = int(cfg.get_int("mask.count"));
        *grating = spec;
        *has_grating = true;
        ObjectMask m = make_slit_grating(grid, spec);
        return kind == "grating" ? m : complement(m);
    }
    if (kind == "file") {
        ObjectMask m = load_mask(cfg.get_string("mask.path"), grid.pitch);
        if (!(m.grid == grid))
            config_fail("mask file lattice does not match grid.* configuration");
        return m;
    }
    config_fail("mask.kind must be open, point, grating, complement_grating or file");
}

DetectorSpec build_detector(const Config& cfg) {
    const std::string kind = cfg.get_string("detector.kind", "pixel");
    if (kind == "pixel") {
        return DetectorSpec::pixel(int(cfg.get_int("detector.pixel_ix", -1)),
                                   int(cfg.get_int("detector.pixel_iy", -1)));
    }
    if (kind == "bucket") {
        return DetectorSpec::bucket(
            int(cfg.get_int("detector.x_lo", -1)), int(cfg.get_int("detector.x_hi", -1)),
            int(cfg.get_int("detector.y_lo", -1)), int(cfg.get_int("detector.y_hi", -1)));
    }
    config_fail("detector.kind must be pixel or bucket");
}

OracleConfig oracle_config(const ExperimentSetup& s) {
    return make_oracle_config(s.source, s.arm, s.grid);
}

std::vector<double> magnitudes(const std::vector<cplx>& v) {
    std::vector<double> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) out[j] = std::abs(v[j]);
    return out;
}

std::vector<double> normalized_peak(std::vector<double> v) {
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::abs(x));
    if (!(peak > 0.0)) throw std::runtime_error("profile is identically zero");
    for (double& x : v) x /= peak;
    return v;
}

/// Pixel bounding box of a centred grating, mirrored axis included (the
/// grating is symmetric, so the box is its own mirror).
IndexRange grating_bbox(const GridSpec& grid, const GratingSpec& spec) {
    const int half = int(std::ceil(0.5 * spec.extent() / grid.pitch));
    IndexRange r{grid.centre_x() - half, grid.centre_x() + half + 1};
    r.lo = std::max(r.lo, 0);
    r.hi = std::min(r.hi, grid.n_x);
    return r;
}

}  // namespace

double measured_response_reference(double csl_um) {
    // Measured values from a physical ghost-imaging experiment; comparison
    // data only.
    if (csl_um == 300.0) return 0.64;
    if (csl_um == 150.0) return 0.449;
    if (csl_um == 100.0) return 0.388;
    if (csl_um == 75.0) return 0.0;
    return std::numeric_limits<double>::quiet_NaN();
}

ExperimentSetup build_setup(const Config& cfg) {
    ExperimentSetup s;
    try {
        cfg.require_known_keys(kKnownKeys);
        s.grid = make_grid(int(cfg.get_int("grid.n_x")), int(cfg.get_int("grid.n_y", 1)),
                           cfg.get_double("grid.pitch_um"));
        s.arm = make_arm(cfg.get_double("arm.lambda_um", 0.532),
                         cfg.get_double("arm.focal_um", 250000.0));

        if (cfg.has("source.sigma") && cfg.has("source.coherence_um"))
            config_fail("set source.sigma or source.coherence_um, not both");
        const double sigma = cfg.has("source.sigma")
                                 ? cfg.get_double("source.sigma")
                                 : sigma_from_coherence_length(
                                       cfg.get_double("source.coherence_um", 75.0));
        const double k_max =
            cfg.get_double("source.k_max", GridSpec::two_pi() / s.arm.lambda_um);
        const std::string law = cfg.get_string("source.law", "gaussian");
        if (law != "gaussian" && law != "constant_modulus")
            config_fail("source.law must be gaussian or constant_modulus");
        s.source = make_source_params(sigma, cfg.get_double("source.intensity", 1.0), k_max,
                                      law == "gaussian" ? AmplitudeLaw::circular_gaussian
                                                        : AmplitudeLaw::constant_modulus);

        s.mask = build_mask(cfg, s.grid, &s.grating, &s.has_grating);
        s.detector = build_detector(cfg);
        s.draws = cfg.get_int("run.draws", 10000);
        if (s.draws < 2) config_fail("run.draws must be at least 2 (ensemble covariances "
                                     "need two or more draws)");
        s.seed = cfg.get_uint64("run.seed", 1);
        s.threads = int(cfg.get_int("run.threads", 1));
        if (s.threads < 1) config_fail("run.threads must be positive");
        s.oracle_x_f_um = cfg.get_double("oracle.x_f_um", 0.0);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return s;
}

std::vector<std::string> run_simulate(const Config& cfg, const std::string& out_dir,
                                      bool overwrite) {
    Timer timer;
    const ExperimentSetup s = build_setup(cfg);
    prepare_dir(out_dir);
    std::vector<std::string> paths = {join(out_dir, "reconstruction.csv"),
                                      join(out_dir, "heatmap.pgm"),
                                      join(out_dir, "manifest.txt")};
    const bool pixel_kind = s.detector.kind == DetectorSpec::Kind::pixel;
    if (pixel_kind) paths.insert(paths.begin() + 1, join(out_dir, "gamma_abs.csv"));
    guard_overwrite(paths, overwrite);

    const CorrelationResult r =
        run_ensemble(s.source, s.mask, s.arm, s.detector, s.draws, s.seed, s.threads);
    const std::vector<double> image = reconstruct_image(r);
    write_profile_csv(join(out_dir, "reconstruction.csv"), s.grid, image);
    if (pixel_kind)
        write_profile_csv(join(out_dir, "gamma_abs.csv"), s.grid, magnitudes(r.gamma));
    const HeatmapScale hs = write_heatmap(join(out_dir, "heatmap.pgm"), s.grid, image);

    write_manifest(join(out_dir, "manifest.txt"), "simulate", effective_config(s, cfg),
                   {{"mean_detector", format_sig9(r.mean_detector)},
                    {"heatmap_min", format_sig9(hs.lo)},
                    {"heatmap_max", format_sig9(hs.hi)}},
                   timer.seconds());
    return paths;
}

std::vector<std::string> run_oracle(const Config& cfg, const std::string& out_dir,
                                    bool overwrite) {
    Timer timer;
    const ExperimentSetup s = build_setup(cfg);
    prepare_dir(out_dir);
    const std::vector<std::string> paths = {
        join(out_dir, "image.csv"), join(out_dir, "gamma_abs.csv"), join(out_dir, "psf.csv"),
        join(out_dir, "heatmap.pgm"), join(out_dir, "manifest.txt")};
    guard_overwrite(paths, overwrite);

    const OracleConfig ocfg = oracle_config(s);
    const std::vector<cplx> gamma = gamma_exact(s.mask, ocfg, s.oracle_x_f_um, s.grid);
    const std::vector<double> gabs = magnitudes(gamma);
    const std::vector<double> image = normalized_peak(gabs);
    write_profile_csv(join(out_dir, "image.csv"), s.grid, image);
    write_profile_csv(join(out_dir, "gamma_abs.csv"), s.grid, gabs);
    {
        CsvWriter csv(join(out_dir, "psf.csv"), {"x2f_um", "value"});
        for (int j = 0; j < s.grid.n_x; ++j) {
            const double x = s.grid.coord_x(j);
            csv.row({x, psf_gaussian(s.source.sigma, x)});
        }
    }
    const HeatmapScale hs = write_heatmap(join(out_dir, "heatmap.pgm"), s.grid, image);

    write_manifest(join(out_dir, "manifest.txt"), "oracle", effective_config(s, cfg),
                   {{"psf_std_um", format_sig9(psf_std(s.source.sigma))},
                    {"psf_prefactor", format_sig9(psf_prefactor(s.source.sigma,
                                                                s.source.mode_intensity))},
                    {"heatmap_min", format_sig9(hs.lo)},
                    {"heatmap_max", format_sig9(hs.hi)}},
                   timer.seconds());
    return paths;
}

std::vector<std::string> run_freq_response(const Config& cfg, const std::string& out_dir,
                                           bool overwrite) {
    Timer timer;
    const ExperimentSetup base = build_setup(cfg);
    if (!base.grid.is_1d()) throw ConfigError("freq-response runs on a 1-d grid");
    prepare_dir(out_dir);
    const std::vector<std::string> paths = {join(out_dir, "response.csv"),
                                            join(out_dir, "response_fit.csv"),
                                            join(out_dir, "manifest.txt")};
    guard_overwrite(paths, overwrite);

    std::vector<double> widths = {300.0, 150.0, 100.0, 75.0};
    if (cfg.has("experiment.widths_um")) widths = cfg.get_double_list("experiment.widths_um");
    const double open_area = cfg.get_double("experiment.open_area_um", 600.0);
    const double l_c = 2.0 * std::sqrt(2.0) / base.source.sigma;

    struct Leg {
        double csl, ffc, rfr_oracle, rfr_sim, rfr_sim_se, reference;
    };
    std::vector<Leg> legs;
    for (double w : widths) {
        if (!(w > 0.0)) throw ConfigError("experiment.widths_um entries must be positive");
        GratingSpec spec;
        spec.width_um = w;
        spec.gap_um = 3.0 * w;
        spec.count = std::max(1, int(std::lround(open_area / w)));
        const double period = spec.period();
        const ObjectMask mask = make_slit_grating(base.grid, spec);
        const IndexRange window = grating_window(base.grid, spec, 1);

        // Closed-form route: the correlation profile is real and
        // non-negative for a binary grating, so its real part is the image.
        const OracleConfig ocfg = make_oracle_config(base.source, base.arm, base.grid);
        const std::vector<cplx> g0 = gamma_exact(mask, ocfg, 0.0, base.grid);
        std::vector<double> oracle_img(g0.size());
        for (std::size_t j = 0; j < g0.size(); ++j) oracle_img[j] = g0[j].real();
        const double rfr_oracle =
            first_order_response(oracle_img, mask, period, window).rfr;

        // Sampled route, with a batch-based standard error.
        const CorrelationResult r = run_ensemble(base.source, mask, base.arm,
                                                 DetectorSpec::centre_pixel(), base.draws,
                                                 base.seed, base.threads);
        std::vector<double> sim_img(r.gamma.size());
        for (std::size_t j = 0; j < r.gamma.size(); ++j) sim_img[j] = r.gamma[j].real();
        const double rfr_sim = first_order_response(sim_img, mask, period, window).rfr;
        std::vector<double> batch_rfr;
        for (const CorrelationResult::BatchSums& bs : r.batches) {
            std::vector<double> img(bs.gamma.size());
            for (std::size_t j = 0; j < bs.gamma.size(); ++j)
                img[j] = bs.gamma[j].real() / double(bs.draws);
            batch_rfr.push_back(first_order_response(img, mask, period, window).rfr);
        }
        double mean = 0.0;
        for (double v : batch_rfr) mean += v;
        mean /= double(batch_rfr.size());
        double var = 0.0;
        for (double v : batch_rfr) var += (v - mean) * (v - mean);
        var /= double(batch_rfr.size() - 1);
        const double se = std::sqrt(var / double(batch_rfr.size()));

        legs.push_back({w, l_c / period, rfr_oracle, rfr_sim, se,
                        measured_response_reference(w)});
    }
    std::sort(legs.begin(), legs.end(), [](const Leg& a, const Leg& b) { return a.ffc < b.ffc; });

    {
        CsvWriter csv(join(out_dir, "response.csv"),
                      {"csl_um", "ffc", "rfr_oracle", "rfr_simulated", "rfr_paper_reference"});
        for (const Leg& l : legs) csv.row({l.csl, l.ffc, l.rfr_oracle, l.rfr_sim, l.reference});
    }

    std::vector<ResponseRow> rows;
    for (const Leg& l : legs) rows.push_back({l.csl, l.ffc, l.rfr_oracle});
    const GaussianFit fit = fit_gaussian(rows);
    {
        CsvWriter csv(join(out_dir, "response_fit.csv"), {"ffc", "rfr_fit"});
        const double ffc_max = legs.back().ffc * 1.1;
        const int samples = 64;
        for (int i = 0; i < samples; ++i) {
            const double x = ffc_max * double(i) / double(samples - 1);
            csv.row({x, fit.amplitude * std::exp(-(x / fit.width) * (x / fit.width))});
        }
    }

    std::vector<std::pair<std::string, std::string>> extras = {
        {"fit_amplitude", format_sig9(fit.amplitude)},
        {"fit_width", format_sig9(fit.width)},
        {"fit_r2", format_sig9(fit.r2)},
    };
    for (const Leg& l : legs)
        extras.push_back({"rfr_se_" + std::to_string(int(l.csl)), format_sig9(l.rfr_sim_se)});
    write_manifest(join(out_dir, "manifest.txt"), "experiment.freq-response",
                   effective_config(base, cfg), extras, timer.seconds());
    return paths;
}

std::vector<std::string> run_visibility(const Config& cfg, const std::string& out_dir,
                                        bool overwrite) {
    Timer timer;
    ExperimentSetup base = build_setup(cfg);
    if (!base.grid.is_1d()) throw ConfigError("visibility runs on a 1-d grid");
    prepare_dir(out_dir);
    const std::vector<std::string> paths = {join(out_dir, "visibility.csv"),
                                            join(out_dir, "manifest.txt")};
    guard_overwrite(paths, overwrite);

    const double width = cfg.get_double("mask.width_um", 200.0);
    const double gap = cfg.get_double("mask.gap_um", 400.0);
    std::vector<long long> counts = {2, 4, 6};
    if (cfg.has("experiment.counts")) counts = cfg.get_int_list("experiment.counts");
    const int seed_count = int(cfg.get_int("experiment.seed_count", 10));
    if (seed_count < 1) throw ConfigError("experiment.seed_count must be positive");

    // seed index s, count index c -> visibility
    std::vector<std::vector<double>> vis(std::size_t(seed_count),
                                         std::vector<double>(counts.size(), 0.0));
    CsvWriter csv(join(out_dir, "visibility.csv"), {"slit_count", "seed", "visibility"});
    for (std::size_t ci = 0; ci < counts.size(); ++ci) {
        GratingSpec spec;
        spec.width_um = width;
        spec.gap_um = gap;
        spec.count = int(counts[ci]);
        const ObjectMask mask = make_slit_grating(base.grid, spec);
        const IndexRange roi = grating_window(base.grid, spec, 1);
        for (int si = 0; si < seed_count; ++si) {
            const std::uint64_t seed = base.seed + std::uint64_t(si);
            const CorrelationResult r =
                run_ensemble(base.source, mask, base.arm, DetectorSpec::bucket_full(),
                             base.draws, seed, base.threads);
            const double v = visibility(g2_image(r), roi);
            vis[std::size_t(si)][ci] = v;
            csv.row({double(counts[ci]), double(seed), v});
        }
    }
    csv.close();

    int pass = 0;
    for (int si = 0; si < seed_count; ++si) {
        bool ordered = true;
        for (std::size_t ci = 1; ci < counts.size(); ++ci)
            ordered = ordered && vis[std::size_t(si)][ci - 1] > vis[std::size_t(si)][ci];
        if (ordered) ++pass;
    }
    write_manifest(join(out_dir, "manifest.txt"), "experiment.visibility",
                   effective_config(base, cfg),
                   {{"ordering_pass_count", std::to_string(pass)},
                    {"seed_count", std::to_string(seed_count)},
                    {"ordering_verdict", pass * 10 >= seed_count * 9 ? "pass" : "fail"}},
                   timer.seconds());
    return paths;
}

std::vector<std::string> run_complement(const Config& cfg, const std::string& out_dir,
                                        bool overwrite) {
    Timer timer;
    ExperimentSetup base = build_setup(cfg);
    if (!base.grid.is_1d()) throw ConfigError("complement runs on a 1-d grid");
    if (!base.has_grating)
        throw ConfigError("complement needs mask.kind = grating with width/gap/count");
    prepare_dir(out_dir);
    const std::vector<std::string> paths = {join(out_dir, "complement.csv"),
                                            join(out_dir, "object_fluctuation.csv"),
                                            join(out_dir, "complement_fluctuation.csv"),
                                            join(out_dir, "manifest.txt")};
    guard_overwrite(paths, overwrite);

    const ObjectMask obj = make_slit_grating(base.grid, base.grating);
    const ObjectMask comp = complement(obj);

    const IndexRange signal = grating_bbox(base.grid, base.grating);
    const int clearance = int(std::ceil(8.0 * psf_std(base.source.sigma) / base.grid.pitch));
    IndexRange background{signal.hi + clearance, base.grid.n_x - base.grid.n_x / 32};
    if (background.width() < 16)
        throw ConfigError("grid too small to hold a background region clear of the object");

    auto run_one = [&](const ObjectMask& m, const std::string& profile_path) {
        const CorrelationResult r = run_ensemble(base.source, m, base.arm,
                                                 DetectorSpec::bucket_full(), base.draws,
                                                 base.seed, base.threads);
        write_profile_csv(profile_path, base.grid, r.g_fluct);
        return snr(r.g_fluct, signal, background);
    };
    const SnrResult s_obj = run_one(obj, join(out_dir, "object_fluctuation.csv"));
    const SnrResult s_comp = run_one(comp, join(out_dir, "complement_fluctuation.csv"));
    const double ratio = std::abs(s_obj.snr) / std::abs(s_comp.snr);

    {
        CsvWriter csv(join(out_dir, "complement.csv"),
                      {"object_snr", "complement_snr", "snr_ratio"});
        csv.row({s_obj.snr, s_comp.snr, ratio});
    }
    write_manifest(join(out_dir, "manifest.txt"), "experiment.complement",
                   effective_config(base, cfg),
                   {{"object_snr", format_sig9(s_obj.snr)},
                    {"complement_snr", format_sig9(s_comp.snr)},
                    {"snr_ratio", format_sig9(ratio)}},
                   timer.seconds());
    return paths;
}

std::vector<std::string> run_mask_render(const Config& cfg, const std::string& out_dir,
                                         bool overwrite) {
    const ExperimentSetup s = build_setup(cfg);
    prepare_dir(out_dir);
    const std::string path = join(out_dir, "mask.pgm");
    guard_overwrite({path, path + ".meta"}, overwrite);
    render_mask(s.mask, path);
    return {path, path + ".meta"};
}

std::string mask_info(const Config& cfg) {
    const ExperimentSetup s = build_setup(cfg);
    std::ostringstream os;
    os << "lattice: " << s.grid.n_x << " x " << s.grid.n_y << " at " << format_sig9(s.grid.pitch)
       << " um\n";
    os << "span: " << format_sig9(s.grid.n_x * s.grid.pitch) << " um\n";
    os << "binary: " << (mask_is_binary(s.mask) ? "yes" : "no") << "\n";
    os << "open area: " << format_sig9(mask_open_area(s.mask)) << " um^"
       << (s.grid.is_1d() ? 1 : 2) << "\n";
    if (s.has_grating) {
        os << "grating: width " << format_sig9(s.grating.width_um) << " um, gap "
           << format_sig9(s.grating.gap_um) << " um, count " << s.grating.count << ", period "
           << format_sig9(s.grating.period()) << " um, extent "
           << format_sig9(s.grating.extent()) << " um\n";
    }
    return os.str();
}

}  // namespace ghostsim
