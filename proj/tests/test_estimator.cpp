#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "ghostsim/estimator.hpp"
#include "ghostsim/grid.hpp"
#include "ghostsim/metrics.hpp"
#include "ghostsim/oracle.hpp"
#include "ghostsim/optics.hpp"
#include "ghostsim/source.hpp"

using namespace ghostsim;

namespace {

SourceParams params75() {
    return make_source_params(sigma_from_coherence_length(75.0), 1.0, 2.0);
}

ArmParams arm_default() { return make_arm(0.532, 2.5e5); }

ObjectMask open_mask(const GridSpec& g) {
    return make_mask(g, std::vector<cplx>(static_cast<std::size_t>(g.count()), cplx(1.0, 0.0)));
}

ObjectMask two_slit(const GridSpec& g) {
    return make_slit_grating(g, GratingSpec{300.0, 900.0, 2});
}

// Per-batch estimate of the fluctuation correlation at reference index j.
double batch_g(const CorrelationResult::BatchSums& b, std::size_t j) {
    const double m = static_cast<double>(b.draws);
    return b.di[j] / m - (b.d / m) * (b.i2[j] / m);
}

// Standard error of g_fluct[j] from the ten batch estimates.
double batch_se(const CorrelationResult& r, std::size_t j) {
    const std::size_t nb = r.batches.size();
    double mean = 0.0;
    for (const auto& b : r.batches) mean += batch_g(b, j);
    mean /= static_cast<double>(nb);
    double var = 0.0;
    for (const auto& b : r.batches) {
        const double d = batch_g(b, j) - mean;
        var += d * d;
    }
    var /= static_cast<double>(nb - 1);
    return std::sqrt(var / static_cast<double>(nb));
}

std::vector<double> peak_normalised_abs(const std::vector<cplx>& v) {
    std::vector<double> out(v.size());
    double peak = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        out[j] = std::abs(v[j]);
        peak = std::max(peak, out[j]);
    }
    for (double& x : out) x /= peak;
    return out;
}

}  // namespace

TEST_CASE("open mask with a centre pixel gives a flat fluctuation image") {
    const GridSpec g = make_grid(64, 1, 12.5);
    const CorrelationResult r = run_ensemble(params75(), open_mask(g), arm_default(),
                                             DetectorSpec::centre_pixel(), 20000, 11);

    // Only the zero mode survives the full-span aperture, so both the field
    // correlation and the fluctuation correlation are independent of x2f.
    double gbar = 0.0;
    for (double v : r.g_fluct) gbar += v;
    gbar /= static_cast<double>(r.g_fluct.size());
    CHECK(gbar > 0.0);
    for (std::size_t j = 0; j < r.g_fluct.size(); ++j) {
        const double se = batch_se(r, j);
        CHECK(std::abs(r.g_fluct[j] - gbar) <= 8.0 * se);
    }

    double abs_mean = 0.0;
    for (const cplx& c : r.gamma) abs_mean += std::abs(c);
    abs_mean /= static_cast<double>(r.gamma.size());
    for (const cplx& c : r.gamma) {
        CHECK(std::abs(c) == doctest::Approx(abs_mean).epsilon(0.15));
        CHECK(c.real() > 0.0);  // the surviving mode carries zero phase
    }

    const std::vector<double> img = reconstruct_image(r);
    CHECK(*std::max_element(img.begin(), img.end()) == doctest::Approx(1.0));
    CHECK(*std::min_element(img.begin(), img.end()) > 0.5);
}

TEST_CASE("slit displaced toward +x reconstructs at -x") {
    const GridSpec g = make_grid(256, 1, 12.5);
    const int c = g.centre_x();
    std::vector<cplx> t(static_cast<std::size_t>(g.count()), cplx(0.0, 0.0));
    for (int j = c + 30; j < c + 50; ++j) t[static_cast<std::size_t>(j)] = 1.0;  // +375..+625 um
    const ObjectMask mask = make_mask(g, t);

    const CorrelationResult r = run_ensemble(params75(), mask, arm_default(),
                                             DetectorSpec::centre_pixel(), 20000, 21);
    const std::vector<double> img = reconstruct_gamma_squared(r);

    std::size_t peak = 0;
    for (std::size_t j = 0; j < img.size(); ++j)
        if (img[j] > img[peak]) peak = j;

    // Mirrored slit centre sits at index c - 40; allow a blur margin of the
    // transfer width (~4 px) plus estimation noise.
    CHECK(static_cast<int>(peak) > c - 55);
    CHECK(static_cast<int>(peak) < c - 25);
    // The un-mirrored location must hold no comparable mass.
    double upright = 0.0;
    for (int j = c + 25; j < c + 55; ++j) upright = std::max(upright, img[static_cast<std::size_t>(j)]);
    CHECK(upright < 0.2 * img[peak]);
}

TEST_CASE("ensemble runs are reproducible and thread-count independent") {
    const GridSpec g = make_grid(128, 1, 12.5);
    const ObjectMask mask = two_slit(g);
    const auto run = [&](std::uint64_t seed, int threads) {
        return run_ensemble(params75(), mask, arm_default(), DetectorSpec::centre_pixel(), 4000,
                            seed, threads);
    };

    const CorrelationResult a = run(5, 1);
    const CorrelationResult b = run(5, 1);
    const CorrelationResult p = run(5, 4);

    REQUIRE(a.gamma.size() == b.gamma.size());
    REQUIRE(a.gamma.size() == p.gamma.size());
    for (std::size_t j = 0; j < a.gamma.size(); ++j) {
        CHECK(a.gamma[j] == b.gamma[j]);
        CHECK(a.g_fluct[j] == b.g_fluct[j]);
        // chunk merge order is fixed, so thread count must not move a bit
        CHECK(a.gamma[j] == p.gamma[j]);
        CHECK(a.g_fluct[j] == p.g_fluct[j]);
    }
    CHECK(a.mean_detector == b.mean_detector);
    CHECK(a.mean_detector == p.mean_detector);
    CHECK(p.threads == 4);

    const CorrelationResult other = run(6, 1);
    bool differs = false;
    for (std::size_t j = 0; j < a.gamma.size(); ++j)
        if (a.gamma[j] != other.gamma[j]) differs = true;
    CHECK(differs);
}

TEST_CASE("moment check separates the thermal law from constant modulus") {
    SUBCASE("thermal two-slit run stays below the alarm level") {
        const GridSpec g = make_grid(256, 1, 12.5);
        const CorrelationResult r = run_ensemble(params75(), two_slit(g), arm_default(),
                                                 DetectorSpec::centre_pixel(), 20000, 3);
        CHECK(gaussian_moment_check(r) <= 5.0);
    }

    SUBCASE("constant modulus through an open mask trips the check") {
        // sigma of two lattice spacings keeps several modes live, but the
        // full-span aperture passes only the zero mode, so the detector value
        // has no fluctuation at all under a constant-modulus law while the
        // field correlation stays finite: the factorisation fails maximally.
        const GridSpec g = make_grid(64, 1, 50.0);
        const double sigma = 2.0 * g.dk_x();
        const SourceParams flat =
            make_source_params(sigma, 1.0, 2.0, AmplitudeLaw::constant_modulus);
        const SourceParams gauss =
            make_source_params(sigma, 1.0, 2.0, AmplitudeLaw::circular_gaussian);

        const CorrelationResult bad = run_ensemble(flat, open_mask(g), arm_default(),
                                                   DetectorSpec::centre_pixel(), 100000, 2);
        CHECK(gaussian_moment_check(bad) > 5.0);

        const CorrelationResult ok = run_ensemble(gauss, open_mask(g), arm_default(),
                                                  DetectorSpec::centre_pixel(), 100000, 2);
        CHECK(gaussian_moment_check(ok) <= 5.0);
    }

    SUBCASE("draw-count preconditions") {
        const GridSpec g = make_grid(32, 1, 12.5);
        const CorrelationResult tiny = run_ensemble(params75(), open_mask(g), arm_default(),
                                                    DetectorSpec::centre_pixel(), 20, 9);
        CHECK(std::isfinite(gaussian_moment_check(tiny)));
        const CorrelationResult fewer = run_ensemble(params75(), open_mask(g), arm_default(),
                                                     DetectorSpec::centre_pixel(), 19, 9);
        CHECK_THROWS_AS(gaussian_moment_check(fewer), std::invalid_argument);
    }
}

TEST_CASE("estimation error shrinks like one over the square root of draws") {
    const GridSpec g = make_grid(128, 1, 12.5);
    const ObjectMask mask = two_slit(g);
    const OracleConfig cfg =
        make_oracle_config(params75(), arm_default(), g);
    const std::vector<double> exact = peak_normalised_abs(gamma_exact(mask, cfg, 0.0, g));

    std::vector<double> log_m, log_err;
    for (long long draws : {1000LL, 10000LL, 100000LL}) {
        const CorrelationResult r = run_ensemble(params75(), mask, arm_default(),
                                                 DetectorSpec::centre_pixel(), draws, 17);
        const std::vector<double> sim = peak_normalised_abs(r.gamma);
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < sim.size(); ++j) {
            const double d = sim[j] - exact[j];
            num += d * d;
            den += exact[j] * exact[j];
        }
        log_m.push_back(std::log10(static_cast<double>(draws)));
        log_err.push_back(std::log10(std::sqrt(num / den)));
    }
    const LineFit fit = fit_line(log_m, log_err);
    CHECK(fit.slope > -0.65);
    CHECK(fit.slope < -0.35);
}

TEST_CASE("background-to-peak ratio rises with slit count under a bucket detector") {
    const GridSpec g = make_grid(1024, 1, 12.5);
    double prev = 0.0;
    for (int count : {2, 4, 6}) {
        const GratingSpec spec{200.0, 400.0, count};
        const ObjectMask mask = make_slit_grating(g, spec);
        const IndexRange window = grating_window(g, spec, 1);

        std::vector<double> ratios;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const CorrelationResult r = run_ensemble(params75(), mask, arm_default(),
                                                     DetectorSpec::bucket_full(), 4000, seed);
            const std::vector<double> img = reconstruct_image(r);
            double bg = 0.0;
            int nbg = 0;
            for (int j = 0; j < g.n_x; ++j) {
                if (j >= window.lo && j < window.hi) continue;
                bg += img[static_cast<std::size_t>(j)];
                ++nbg;
            }
            ratios.push_back(bg / nbg);  // image peak is 1 by construction
        }
        std::nth_element(ratios.begin(), ratios.begin() + 5, ratios.end());
        const double median = ratios[5];
        CHECK(median >= prev);
        prev = median;
    }
}

TEST_CASE("estimator input validation") {
    const GridSpec g = make_grid(64, 1, 12.5);
    const ObjectMask mask = open_mask(g);

    CHECK_THROWS_AS(run_ensemble(params75(), mask, arm_default(), DetectorSpec::centre_pixel(),
                                 1, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_ensemble(params75(), mask, arm_default(), DetectorSpec::pixel(64), 100,
                                 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_ensemble(params75(), mask, arm_default(), DetectorSpec::bucket(10, 10),
                                 100, 1),
                    std::invalid_argument);

    const CorrelationResult bucket = run_ensemble(params75(), mask, arm_default(),
                                                  DetectorSpec::bucket_full(), 200, 2);
    CHECK(bucket.gamma.empty());
    CHECK_THROWS_AS(reconstruct_gamma_squared(bucket), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_moment_check(bucket), std::invalid_argument);
    const std::vector<double> g2 = g2_image(bucket);
    CHECK(g2.size() == static_cast<std::size_t>(g.count()));
    for (double v : g2) CHECK(std::isfinite(v));

    // an opaque object produces no detector fluctuation at all
    const ObjectMask dark = make_mask(g, std::vector<cplx>(static_cast<std::size_t>(g.count()),
                                                           cplx(0.0, 0.0)));
    const CorrelationResult none = run_ensemble(params75(), dark, arm_default(),
                                                DetectorSpec::centre_pixel(), 50, 4);
    CHECK_THROWS_AS(reconstruct_image(none), std::runtime_error);
}
