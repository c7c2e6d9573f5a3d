#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ghostsim/dft.hpp"
#include "ghostsim/grid.hpp"

using namespace ghostsim;

namespace {

std::vector<cplx> random_field(const GridSpec& g, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<cplx> v(std::size_t(g.count()));
    for (cplx& s : v) s = cplx(n(rng), n(rng));
    return v;
}

// Direct O(N^2) evaluation of the same convention the plan implements:
//   forward  T(k_m) = sum_j t(x_j) exp(-i k_m . x_j) * pitch^d
//   inverse  t(x_j) = (1/2pi)^d sum_m T(k_m) exp(+i k_m . x_j) * dk^d
//   backward_raw     sum_m T(k_m) exp(+i k_m . x_j)
std::vector<cplx> brute_forward(const GridSpec& g, const std::vector<cplx>& in) {
    std::vector<cplx> out(in.size());
    double cell = 1.0;
    if (g.n_x > 1) cell *= g.pitch;
    if (g.n_y > 1) cell *= g.pitch;
    for (int my = 0; my < g.n_y; ++my)
        for (int mx = 0; mx < g.n_x; ++mx) {
            cplx acc = 0.0;
            for (int jy = 0; jy < g.n_y; ++jy)
                for (int jx = 0; jx < g.n_x; ++jx) {
                    const double ph =
                        -(g.freq_x(mx) * g.coord_x(jx) + g.freq_y(my) * g.coord_y(jy));
                    acc += in[std::size_t(g.idx(jx, jy))] * cplx(std::cos(ph), std::sin(ph));
                }
            out[std::size_t(g.idx(mx, my))] = acc * cell;
        }
    return out;
}

std::vector<cplx> brute_backward_raw(const GridSpec& g, const std::vector<cplx>& in) {
    std::vector<cplx> out(in.size());
    for (int jy = 0; jy < g.n_y; ++jy)
        for (int jx = 0; jx < g.n_x; ++jx) {
            cplx acc = 0.0;
            for (int my = 0; my < g.n_y; ++my)
                for (int mx = 0; mx < g.n_x; ++mx) {
                    const double ph =
                        g.freq_x(mx) * g.coord_x(jx) + g.freq_y(my) * g.coord_y(jy);
                    acc += in[std::size_t(g.idx(mx, my))] * cplx(std::cos(ph), std::sin(ph));
                }
            out[std::size_t(g.idx(jx, jy))] = acc;
        }
    return out;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double worst = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
    return worst;
}

}  // namespace

TEST_CASE("forward transform matches the direct mode sum") {
    for (const GridSpec g : {make_grid(32, 1, 12.5), make_grid(8, 8, 5.0)}) {
        DftPlan plan(g);
        const std::vector<cplx> in = random_field(g, 11u + unsigned(g.n_y));
        std::vector<cplx> fast(in.size());
        plan.forward(in.data(), fast.data());
        const std::vector<cplx> slow = brute_forward(g, in);
        CHECK(max_abs_diff(fast, slow) < 1e-9);
    }
}

TEST_CASE("backward_raw is the plain unnormalised conjugate mode sum") {
    const GridSpec g = make_grid(32, 1, 7.0);
    DftPlan plan(g);
    const std::vector<cplx> in = random_field(g, 5u);
    std::vector<cplx> fast(in.size());
    plan.backward_raw(in.data(), fast.data());
    CHECK(max_abs_diff(fast, brute_backward_raw(g, in)) < 1e-9);
}

TEST_CASE("inverse undoes forward to near machine precision") {
    for (const GridSpec g : {make_grid(64, 1, 12.5), make_grid(16, 8, 4.0)}) {
        DftPlan plan(g);
        const std::vector<cplx> in = random_field(g, 99u);
        std::vector<cplx> spec(in.size()), back(in.size());
        plan.forward(in.data(), spec.data());
        plan.inverse(spec.data(), back.data());
        CHECK(max_abs_diff(back, in) < 1e-12);
    }
}

TEST_CASE("energy bookkeeping between the two planes") {
    // sum |t|^2 pitch^d == (1/2pi)^d sum |T|^2 dk^d
    for (const GridSpec g : {make_grid(4096, 1, 12.5), make_grid(64, 64, 5.0)}) {
        DftPlan plan(g);
        const std::vector<cplx> in = random_field(g, 3u);
        std::vector<cplx> spec(in.size());
        plan.forward(in.data(), spec.data());

        double cell = 1.0, kcell = 1.0;
        if (g.n_x > 1) { cell *= g.pitch; kcell *= g.dk_x() / GridSpec::two_pi(); }
        if (g.n_y > 1) { cell *= g.pitch; kcell *= g.dk_y() / GridSpec::two_pi(); }
        double space = 0.0, freq = 0.0;
        for (const cplx& v : in) space += std::norm(v);
        for (const cplx& v : spec) freq += std::norm(v);
        space *= cell;
        freq *= kcell;
        CHECK(std::abs(space - freq) / space < 1e-10);
    }
}

TEST_CASE("a pure lattice mode lands in exactly one forward bin") {
    const GridSpec g = make_grid(64, 1, 12.5);
    const int bin = g.centre_x() + 5;
    const double k0 = g.freq_x(bin);
    std::vector<cplx> in(std::size_t(g.count()));
    for (int j = 0; j < g.n_x; ++j) {
        const double ph = k0 * g.coord_x(j);
        in[std::size_t(j)] = cplx(std::cos(ph), std::sin(ph));
    }
    DftPlan plan(g);
    std::vector<cplx> spec(in.size());
    plan.forward(in.data(), spec.data());
    for (int m = 0; m < g.n_x; ++m) {
        const double expect = (m == bin) ? g.n_x * g.pitch : 0.0;
        CHECK(std::abs(spec[std::size_t(m)] - cplx(expect, 0.0)) < 1e-9 * g.n_x * g.pitch);
    }
}

TEST_CASE("singleton y axis carries through untouched") {
    const GridSpec g1 = make_grid(32, 1, 12.5);
    // Same data viewed as 32 x 1: forward must equal the 1-d transform, with
    // no extra pitch factor from the inert axis.
    DftPlan plan(g1);
    const std::vector<cplx> in = random_field(g1, 42u);
    std::vector<cplx> spec(in.size());
    plan.forward(in.data(), spec.data());
    const std::vector<cplx> slow = brute_forward(g1, in);
    CHECK(max_abs_diff(spec, slow) < 1e-9);
}

TEST_CASE("focal-plane coordinate map u = 2 pi x_f / (lambda f)") {
    CHECK(focal_coordinate_map(0.5, 2.5e5, 1000.0) ==
          doctest::Approx(0.05026548245743669).epsilon(1e-15));
    CHECK(focal_coordinate_map(0.5, 2.5e5, 0.0) == 0.0);
    CHECK(focal_coordinate_map(0.5, 2.5e5, -1000.0) ==
          doctest::Approx(-0.05026548245743669).epsilon(1e-15));
    CHECK_THROWS(focal_coordinate_map(0.0, 2.5e5, 1.0));
    CHECK_THROWS(focal_coordinate_map(0.5, 0.0, 1.0));
}

TEST_CASE("one-shot field transforms preserve the lattice and retag the plane") {
    const GridSpec g = make_grid(16, 1, 3.0);
    ComplexField f = make_field(g, Plane::source, random_field(g, 8u));
    const ComplexField spec = dft_forward(f);
    CHECK(spec.plane == Plane::spectrum);
    CHECK(spec.grid == g);
    const ComplexField back = dft_inverse(spec);
    CHECK(max_abs_diff(back.samples, f.samples) < 1e-12);
}
