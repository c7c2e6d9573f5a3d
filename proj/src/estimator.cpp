#include "ghostsim/estimator.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "ghostsim/dft.hpp"
#include "ghostsim/rng.hpp"

namespace ghostsim {
namespace {

struct ResolvedDetector {
    DetectorSpec::Kind kind;
    int pix = 0;                      // flat index, pixel kind
    int x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
};

ResolvedDetector resolve(const DetectorSpec& d, const GridSpec& g) {
    ResolvedDetector r;
    r.kind = d.kind;
    if (d.kind == DetectorSpec::Kind::pixel) {
        const int ix = d.pixel_ix < 0 ? g.centre_x() : d.pixel_ix;
        const int iy = d.pixel_iy < 0 ? g.centre_y() : d.pixel_iy;
        if (ix >= g.n_x || iy >= g.n_y)
            throw std::invalid_argument("detector pixel index outside the lattice");
        r.pix = int(g.idx(ix, iy));
        return r;
    }
    r.x_lo = d.x_lo < 0 ? 0 : d.x_lo;
    r.x_hi = d.x_hi < 0 ? g.n_x : d.x_hi;
    r.y_lo = d.y_lo < 0 ? 0 : d.y_lo;
    r.y_hi = d.y_hi < 0 ? g.n_y : d.y_hi;
    if (r.x_lo >= r.x_hi || r.x_hi > g.n_x || r.y_lo >= r.y_hi || r.y_hi > g.n_y)
        throw std::invalid_argument("bucket aperture must be a non-empty slice of the lattice");
    return r;
}

// Kahan-compensated accumulators for one chunk.
struct ChunkSums {
    long long draws = 0;
    double d = 0.0, d_c = 0.0;
    std::vector<double> gr, gr_c, gi, gi_c;  // pixel kind only
    std::vector<double> di, di_c, i2, i2_c;

    void init(std::size_t n, bool with_gamma) {
        di.assign(n, 0.0);
        di_c.assign(n, 0.0);
        i2.assign(n, 0.0);
        i2_c.assign(n, 0.0);
        if (with_gamma) {
            gr.assign(n, 0.0);
            gr_c.assign(n, 0.0);
            gi.assign(n, 0.0);
            gi_c.assign(n, 0.0);
        }
    }
};

inline void kahan_add(double v, double& sum, double& comp) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
}

}  // namespace

DetectorSpec DetectorSpec::centre_pixel() { return DetectorSpec{}; }

DetectorSpec DetectorSpec::pixel(int ix, int iy) {
    DetectorSpec d;
    d.kind = Kind::pixel;
    d.pixel_ix = ix;
    d.pixel_iy = iy;
    return d;
}

DetectorSpec DetectorSpec::bucket_full() {
    DetectorSpec d;
    d.kind = Kind::bucket;
    return d;
}

DetectorSpec DetectorSpec::bucket(int x_lo, int x_hi, int y_lo, int y_hi) {
    DetectorSpec d;
    d.kind = Kind::bucket;
    d.x_lo = x_lo;
    d.x_hi = x_hi;
    d.y_lo = y_lo;
    d.y_hi = y_hi;
    return d;
}

CorrelationResult run_ensemble(const SourceParams& source, const ObjectMask& mask,
                               const ArmParams& arm, const DetectorSpec& detector, long long draws,
                               std::uint64_t master_seed, int threads) {
    (void)arm;  // geometry enters through the lattice; kept for provenance
    if (draws < 2)
        throw std::invalid_argument("run_ensemble: draws must be at least 2 so fluctuation "
                                    "covariances are defined");
    const GridSpec grid = mask.grid;
    const std::size_t n = std::size_t(grid.count());
    const ResolvedDetector det = resolve(detector, grid);
    const bool pixel_kind = det.kind == DetectorSpec::Kind::pixel;

    if (threads < 1) threads = 1;
    if (threads > kEnsembleChunks) threads = kEnsembleChunks;

    // Reference axis inversion: x2f entry j reads the source sample at
    // -coord(j); on the centred lattice that is index (n - j) mod n.
    std::vector<int> mirror(n);
    for (int iy = 0; iy < grid.n_y; ++iy) {
        const int my = (grid.n_y - iy) % grid.n_y;
        for (int ix = 0; ix < grid.n_x; ++ix) {
            const int mx = (grid.n_x - ix) % grid.n_x;
            mirror[std::size_t(grid.idx(ix, iy))] = int(grid.idx(mx, my));
        }
    }

    const std::vector<double> weights = source_weights(source, grid);

    std::vector<ChunkSums> chunks(kEnsembleChunks);
    std::atomic<int> next_chunk{0};

    auto worker = [&]() {
        DftPlan plan(grid);
        std::vector<cplx> amps, scratch(n), u0(n), uf(n);
        SpeckleDraw draw;
        draw.grid = grid;
        for (;;) {
            const int c = next_chunk.fetch_add(1);
            if (c >= kEnsembleChunks) break;
            const long long lo = draws * c / kEnsembleChunks;
            const long long hi = draws * (c + 1) / kEnsembleChunks;
            ChunkSums& cs = chunks[std::size_t(c)];
            cs.init(n, pixel_kind);
            cs.draws = hi - lo;
            for (long long m = lo; m < hi; ++m) {
                draw.seed = derive_subseed(master_seed, std::uint64_t(m));
                draw_speckle_amplitudes(source, grid, draw.seed, draw.amplitudes);
                synthesize_source_field(draw, weights, plan, scratch.data(), u0.data());
                for (std::size_t j = 0; j < n; ++j) scratch[j] = mask.t[j] * u0[j];
                plan.forward(scratch.data(), uf.data());

                double d_val;
                cplx u_det(0.0, 0.0);
                if (pixel_kind) {
                    u_det = uf[std::size_t(det.pix)];
                    d_val = std::norm(u_det);
                } else {
                    d_val = 0.0;
                    for (int iy = det.y_lo; iy < det.y_hi; ++iy)
                        for (int ix = det.x_lo; ix < det.x_hi; ++ix)
                            d_val += std::norm(uf[std::size_t(grid.idx(ix, iy))]);
                }
                kahan_add(d_val, cs.d, cs.d_c);
                for (std::size_t j = 0; j < n; ++j) {
                    const cplx v = u0[std::size_t(mirror[j])];
                    const double inten = std::norm(v);
                    kahan_add(inten, cs.i2[j], cs.i2_c[j]);
                    kahan_add(d_val * inten, cs.di[j], cs.di_c[j]);
                    if (pixel_kind) {
                        const cplx g = u_det * std::conj(v);
                        kahan_add(g.real(), cs.gr[j], cs.gr_c[j]);
                        kahan_add(g.imag(), cs.gi[j], cs.gi_c[j]);
                    }
                }
            }
        }
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(std::size_t(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    // Fixed-order merge: chunks 8b .. 8b+7 form batch b.
    CorrelationResult res;
    res.grid = grid;
    res.detector = detector;
    res.draws = draws;
    res.master_seed = master_seed;
    res.threads = threads;
    res.batches.resize(kEnsembleBatches);
    const int per_batch = kEnsembleChunks / kEnsembleBatches;
    for (int b = 0; b < kEnsembleBatches; ++b) {
        CorrelationResult::BatchSums& bs = res.batches[std::size_t(b)];
        bs.di.assign(n, 0.0);
        bs.i2.assign(n, 0.0);
        if (pixel_kind) bs.gamma.assign(n, cplx(0.0, 0.0));
        for (int c = b * per_batch; c < (b + 1) * per_batch; ++c) {
            const ChunkSums& cs = chunks[std::size_t(c)];
            bs.draws += cs.draws;
            bs.d += cs.d;
            for (std::size_t j = 0; j < n; ++j) {
                bs.di[j] += cs.di[j];
                bs.i2[j] += cs.i2[j];
                if (pixel_kind) bs.gamma[j] += cplx(cs.gr[j], cs.gi[j]);
            }
        }
    }

    double sum_d = 0.0;
    std::vector<double> sum_di(n, 0.0), sum_i2(n, 0.0);
    std::vector<cplx> sum_g(pixel_kind ? n : 0, cplx(0.0, 0.0));
    for (const CorrelationResult::BatchSums& bs : res.batches) {
        sum_d += bs.d;
        for (std::size_t j = 0; j < n; ++j) {
            sum_di[j] += bs.di[j];
            sum_i2[j] += bs.i2[j];
            if (pixel_kind) sum_g[j] += bs.gamma[j];
        }
    }
    const double inv_m = 1.0 / double(draws);
    res.mean_detector = sum_d * inv_m;
    res.mean_reference.resize(n);
    res.g_fluct.resize(n);
    if (pixel_kind) res.gamma.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        res.mean_reference[j] = sum_i2[j] * inv_m;
        res.g_fluct[j] = sum_di[j] * inv_m - res.mean_detector * res.mean_reference[j];
        if (pixel_kind) res.gamma[j] = sum_g[j] * inv_m;
    }
    return res;
}

std::vector<double> reconstruct_image(const CorrelationResult& r) {
    std::vector<double> img(r.g_fluct.size());
    double peak = 0.0;
    for (std::size_t j = 0; j < img.size(); ++j) {
        img[j] = r.g_fluct[j] > 0.0 ? r.g_fluct[j] : 0.0;
        if (img[j] > peak) peak = img[j];
    }
    if (!(peak > 0.0))
        throw std::runtime_error("reconstruct_image: fluctuation image is identically "
                                 "non-positive");
    for (double& v : img) v /= peak;
    return img;
}

std::vector<double> reconstruct_gamma_squared(const CorrelationResult& r) {
    if (r.gamma.empty())
        throw std::invalid_argument("reconstruct_gamma_squared: needs a pixel-kind run");
    std::vector<double> img(r.gamma.size());
    for (std::size_t j = 0; j < img.size(); ++j) img[j] = std::norm(r.gamma[j]);
    return img;
}

std::vector<double> g2_image(const CorrelationResult& r) {
    if (!(r.mean_detector > 0.0))
        throw std::runtime_error("g2_image: detector mean is not positive");
    std::vector<double> g2(r.g_fluct.size());
    for (std::size_t j = 0; j < g2.size(); ++j) {
        const double denom = r.mean_detector * r.mean_reference[j];
        if (!(denom > 0.0)) throw std::runtime_error("g2_image: reference mean is not positive");
        g2[j] = 1.0 + r.g_fluct[j] / denom;
    }
    return g2;
}

double gaussian_moment_check(const CorrelationResult& r) {
    if (r.gamma.empty())
        throw std::invalid_argument("gaussian_moment_check: needs a pixel-kind run");
    if (r.draws < 20)
        throw std::invalid_argument("gaussian_moment_check: needs at least 20 draws so every "
                                    "batch holds two or more");
    const std::size_t n = r.g_fluct.size();
    const int nb = int(r.batches.size());
    double worst = 0.0;
    std::vector<double> diffs(static_cast<std::size_t>(nb));
    for (std::size_t j = 0; j < n; ++j) {
        // Full-run discrepancy, standard error from the batch estimates.
        const double full = r.g_fluct[j] - std::norm(r.gamma[j]);
        for (int b = 0; b < nb; ++b) {
            const CorrelationResult::BatchSums& bs = r.batches[std::size_t(b)];
            const double inv = 1.0 / double(bs.draws);
            const double g = bs.di[j] * inv - (bs.d * inv) * (bs.i2[j] * inv);
            diffs[std::size_t(b)] = g - std::norm(bs.gamma[j] * inv);
        }
        double mean = 0.0;
        for (double v : diffs) mean += v;
        mean /= nb;
        double var = 0.0;
        for (double v : diffs) var += (v - mean) * (v - mean);
        var /= (nb - 1);
        const double se = std::sqrt(var / nb);
        double stat;
        if (se > 0.0) {
            stat = std::abs(full) / se;
        } else {
            stat = full == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        }
        if (stat > worst) worst = stat;
    }
    return worst;
}

}  // namespace ghostsim
