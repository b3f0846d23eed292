#include "doctest.h"

#include <cmath>
#include <vector>

#include "gscr/bounds.hpp"
#include "gscr/fixtures.hpp"
#include "oracles.hpp"

using namespace gscr;

namespace {
const NoiseParams kWeak{1.2, 1.0, 1.0, 0.2};
const NoiseParams kStrong{1.8, 1.0, 1.0, 0.8};
const char* kFixturePath = "data/fixtures/s_integrals.txt";

NoiseParams params_of(const FixtureRow& r) {
    return NoiseParams{r.alpha, r.gamma_g, r.gamma_s, r.rho};
}
}  // namespace

TEST_CASE("s1_exact trivial values and fixture agreement") {
    CHECK(s1_exact(0.0, kWeak) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(s1_exact(4.0, kWeak) == doctest::Approx(0.2 * std::exp(-1.0)).epsilon(1e-12));
    for (const auto& r : load_fixture_table(kFixturePath)) {
        CHECK(s1_exact(r.ds_norm, params_of(r)) == doctest::Approx(r.i1).epsilon(1e-8));
    }
}

TEST_CASE("sandwich: component and Z bounds enclose the oracle on the fixture grid") {
    const auto rows = load_fixture_table(kFixturePath);
    REQUIRE(rows.size() == 14);
    BoundSet weak(kWeak), strong(kStrong);
    for (const auto& r : rows) {
        BoundSet& b = (r.alpha == kWeak.alpha) ? weak : strong;
        const double s2u = b.s2_up(r.ds_norm);
        const double s2l = b.s2_lo(r.ds_norm);
        const double s3u = b.s3_up(r.ds_norm);
        const double s3l = b.s3_lo(r.ds_norm);
        const double zu = b.z_up(r.ds_norm);
        const double zl = b.z_lo(r.ds_norm);
        INFO("alpha=", r.alpha, " rho=", r.rho, " d=", r.ds_norm);
        CHECK(s2l <= r.i2 * (1.0 + 1e-9));
        CHECK(s2u >= r.i2 * (1.0 - 1e-9));
        CHECK(s3l <= r.i3 * (1.0 + 1e-9));
        CHECK(s3u >= r.i3 * (1.0 - 1e-9));
        CHECK(zl <= r.z * (1.0 + 1e-9));
        CHECK(zu >= r.z * (1.0 - 1e-9));
        CHECK(s2l <= s2u);
        CHECK(s3l <= s3u);
        CHECK(zl <= zu);
    }
}

TEST_CASE("asymptotic tightness of the bound gaps") {
    const auto rows = load_fixture_table(kFixturePath);
    BoundSet weak(kWeak), strong(kStrong);
    for (const NoiseParams& p : {kWeak, kStrong}) {
        BoundSet& b = (p.alpha == kWeak.alpha) ? weak : strong;
        double prev_gap = HUGE_VAL;
        double prev_s2_gap = HUGE_VAL;
        for (const auto& r : rows) {
            if (r.alpha != p.alpha || r.ds_norm < 4.0) continue;
            const double gap = (b.z_up(r.ds_norm) - b.z_lo(r.ds_norm)) / r.z;
            CHECK(gap < prev_gap);
            prev_gap = gap;
            const double s2gap = (b.s2_up(r.ds_norm) - b.s2_lo(r.ds_norm)) / r.i2;
            CHECK(s2gap <= prev_s2_gap);
            prev_s2_gap = s2gap;
        }
        // s2 relative gap at the largest separation is small
        CHECK(prev_s2_gap < 0.05);
    }
}

TEST_CASE("degenerate mixing weights") {
    NoiseParams gauss{1.2, 1.0, 1.0, 1.0};
    NoiseParams impulsive{1.2, 1.0, 1.0, 0.0};
    BoundSet bg(gauss), bi(impulsive);
    for (double d : {1.0, 4.0, 8.0}) {
        CHECK(bg.s2_up(d) == 0.0);
        CHECK(s2_lower(d, gauss) == 0.0);
        CHECK(bg.s3_up(d) == 0.0);
        // rho = 1: z_upper collapses to the exact Gaussian value
        const double ref = std::exp(-d * d / 16.0);
        CHECK(bg.z_up(d) == doctest::Approx(ref).epsilon(1e-10));
        CHECK(bi.s2_up(d) == 0.0);
        CHECK(s2_lower(d, impulsive) == 0.0);
    }
}

TEST_CASE("trivial bounds enclose the oracle and blow up at moderate separations") {
    const auto rows = load_fixture_table(kFixturePath);
    BoundSet weak(kWeak), strong(kStrong);
    for (const auto& r : rows) {
        if (r.ds_norm < 1.0) continue;  // improper integral blows up near zero separation
        BoundSet& b = (r.alpha == kWeak.alpha) ? weak : strong;
        const auto [lo, hi] = trivial_bounds(r.ds_norm, params_of(r));
        CHECK(hi >= r.i2 * (1.0 - 1e-9));
        CHECK(lo <= r.i2 * (1.0 + 1e-9));
        // at small-to-moderate separations the triangle-inequality bound is
        // far looser than the PLA one (the "orders of magnitude" regime)
        if (r.ds_norm <= 4.0) {
            CHECK(hi >= b.s2_up(r.ds_norm));
            CHECK(hi / r.i2 > 2.0);
        }
        const auto [lo3, hi3] = trivial_s3_bounds(r.ds_norm, params_of(r));
        CHECK(hi3 >= r.i3 * (1.0 - 1e-9));
        CHECK(lo3 <= r.i3 * (1.0 + 1e-9));
    }
}

TEST_CASE("refinement by subdivision tightens the S2 and S3 bounds") {
    for (const NoiseParams& p : {kWeak, kStrong}) {
        const double d = 4.0;
        const Division base_s2 = build_division(DivisionTarget::j1j2, p, d);
        Division fine_s2 = base_s2;
        for (std::size_t i = 0; i + 1 < base_s2.breakpoints.size(); ++i)
            fine_s2.breakpoints.push_back(
                0.5 * (base_s2.breakpoints[i] + base_s2.breakpoints[i + 1]));
        std::sort(fine_s2.breakpoints.begin(), fine_s2.breakpoints.end());
        CHECK(s2_upper(d, p, fine_s2) <= s2_upper(d, p, base_s2) * (1.0 + 1e-10));

        const Division base_s3 = build_division(DivisionTarget::j3, p, d);
        Division fine_s3 = base_s3;
        for (std::size_t i = 0; i + 1 < base_s3.breakpoints.size(); ++i)
            fine_s3.breakpoints.push_back(
                0.5 * (base_s3.breakpoints[i] + base_s3.breakpoints[i + 1]));
        std::sort(fine_s3.breakpoints.begin(), fine_s3.breakpoints.end());
        CHECK(s3_upper(d, p, fine_s3) <= s3_upper(d, p, base_s3) * (1.0 + 1e-10));
        CHECK(s3_lower(d, p, fine_s3) >= s3_lower(d, p, base_s3) * (1.0 - 1e-10));
    }
}

TEST_CASE("G_p primitives differentiate back to their integrands") {
    const double c = kWeak.tail_scale();
    const double beta = 0.25 * kWeak.alpha;
    detail::GpEval gp{c, beta};
    for (double x : {-6.0, -1.3, 0.4, 2.0, 9.0}) {
        const double h = 1e-5;
        auto d0 = (gp.g0(x + h) - gp.g0(x - h)) / (2.0 * h);
        auto d1 = (gp.g1(x + h) - gp.g1(x - h)) / (2.0 * h);
        auto d2 = (gp.g2(x + h) - gp.g2(x - h)) / (2.0 * h);
        const double kernel = std::pow(c + x * x, -beta);
        CHECK(d0 == doctest::Approx(kernel).epsilon(1e-7));
        CHECK(d1 == doctest::Approx(x * kernel).epsilon(1e-7));
        CHECK(d2 == doctest::Approx(x * x * kernel).epsilon(1e-7));
    }
}

TEST_CASE("free-function bounds agree with the cached engine") {
    BoundSet b(kWeak);
    for (double d : {2.0, 6.0}) {
        DivisionPair divs{build_division(DivisionTarget::j1j2, kWeak, d),
                          build_division(DivisionTarget::j3, kWeak, d, 0, 0,
                                         8.0 * std::max(d, 1.0) /
                                             std::max(6.0 * std::sqrt(8.0),
                                                      d + 6.0 * std::sqrt(1.2)))};
        // the engine may extend ranges further than these divisions, so the
        // two paths agree only up to that range slack
        CHECK(z_upper(d, kWeak, divs) == doctest::Approx(b.z_up(d)).epsilon(5e-3));
        CHECK(z_lower(d, kWeak, divs) == doctest::Approx(b.z_lo(d)).epsilon(3e-2));
        CHECK(z_upper(d, kWeak, divs) >= z_lower(d, kWeak, divs));
    }
}

TEST_CASE("z_lower branch structure") {
    // rho = 0: the tail-only branch dominates
    NoiseParams imp{1.2, 1.0, 1.0, 0.0};
    BoundSet b(imp);
    int branch = -1;
    b.z_lo(8.0, &branch);
    CHECK(branch == 0);
    // clamp at zero separation
    BoundSet bw(kWeak);
    CHECK(bw.z_up(0.0) == 1.0);
}

TEST_CASE("cutoff-rate bounds enclose the oracle ordering") {
    BoundSet b(kWeak);
    const double A = 1.0;
    std::vector<Vec2> qpsk{{A, A}, {A, -A}, {-A, A}, {-A, -A}};
    std::vector<double> uni(4, 0.25);
    const double lo = b.cr_lower(qpsk, uni);
    const double hi = b.cr_upper(qpsk, uni);
    CHECK(lo <= hi);
    CHECK(lo >= 0.0);
    CHECK(hi <= 2.0 + 1e-12);

    // coincident points: both bounds zero
    std::vector<Vec2> same(4, Vec2{0.3, 0.3});
    CHECK(b.cr_lower(same, uni) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(b.cr_upper(same, uni) == doctest::Approx(0.0).epsilon(1e-12));

    // huge separations: both bounds approach log2 M
    NoiseParams gauss{1.2, 1.0, 1.0, 1.0};
    BoundSet bg(gauss);
    const double L = 1000.0;
    std::vector<Vec2> far{{L, L}, {L, -L}, {-L, L}, {-L, -L}};
    CHECK(bg.cr_lower(far, uni) == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("surrogate dominates the oracle and the fixture Z values") {
    const auto rows = load_fixture_table(kFixturePath);
    for (const NoiseParams& p : {kWeak, kStrong}) {
        BoundSet b(p);
        const double ds_max = 40.0;
        const SurrogateCoeffs sc = build_surrogate(b, ds_max);
        sc.validate();
        CHECK(sc.value(0.0) > 0.0);
        CHECK(sc.value(0.0) <= 1.0001);
        for (const auto& r : rows) {
            if (r.alpha != p.alpha || r.ds_norm > ds_max) continue;
            CHECK(sc.value(r.ds_norm) >= r.z * (1.0 - 1e-9));
            // the surrogate is itself a bound at least as loose as z_upper
            CHECK(sc.value(r.ds_norm) >= b.z_up(r.ds_norm) * (1.0 - 1e-7));
        }
    }
}

TEST_CASE("surrogate degenerates for the pure Gaussian configuration") {
    NoiseParams gauss{1.2, 1.0, 1.0, 1.0};
    BoundSet b(gauss);
    const SurrogateCoeffs sc = build_surrogate(b, 30.0);
    CHECK(sc.gauss_amp == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(sc.rho1) < 1e-9);
    CHECK(sc.rho0 < 1e-6);
    for (double d : {0.5, 2.0, 10.0}) {
        CHECK(sc.value(d) == doctest::Approx(std::exp(-d * d / 16.0)).epsilon(1e-6));
    }
}

TEST_CASE("lipschitz estimate: closed form, homogeneity, grid refinement") {
    SurrogateCoeffs sc;
    sc.gauss_amp = 0.37;
    sc.gauss_scale = 16.0;
    sc.rho1 = 0.0;
    sc.rho0 = 0.5;
    sc.ds_max = 30.0;
    std::vector<double> uni(16, 1.0 / 16.0);

    // pure Gaussian part: sup |kappa'(d)| d = 4 A /(scale * e) at d = sqrt(scale)
    double sup_grid = 0.0;
    for (int i = 1; i <= 512; ++i) {
        const double d = sc.ds_max * i / 512.0;
        sup_grid = std::max(sup_grid, std::abs(surrogate_kappa_slope(sc, d)) * d);
    }
    const double closed = 4.0 * sc.gauss_amp / (sc.gauss_scale * M_E);
    CHECK(sup_grid == doctest::Approx(closed).epsilon(0.01));

    const double l1 = lipschitz_bound(sc, uni);
    SurrogateCoeffs sc2 = sc;
    sc2.gauss_amp *= 2.0;
    // the sup term scales linearly in gauss_amp; the z_tilde(0) term saturates
    double pairs = 0.0;
    for (std::size_t k = 0; k < uni.size(); ++k)
        for (std::size_t l = k + 1; l < uni.size(); ++l) pairs += uni[k] * uni[l];
    const double sup2 = (lipschitz_bound(sc2, uni) / pairs) - sc2.value(0.0);
    const double sup1 = (l1 / pairs) - sc.value(0.0);
    CHECK(sup2 == doctest::Approx(2.0 * sup1).epsilon(1e-9));

    CHECK(lipschitz_bound(sc, uni, 2048) == doctest::Approx(l1).epsilon(0.01));
}
