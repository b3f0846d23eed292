#ifndef GSCR_BOUNDS_HPP
#define GSCR_BOUNDS_HPP

// Closed-form lower and upper bounds for the S-term integrals, the
// Bhattacharyya parameter and the cutoff rate, plus the linearized
// surrogate the shaping optimizer descends.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gscr/noise.hpp"
#include "gscr/pla.hpp"
#include "gscr/quadrature.hpp"
#include "gscr/special_functions.hpp"
#include "gscr/vec2.hpp"

namespace gscr {

struct BoundReport {
    double ds_norm = 0.0;
    double i1_exact = 0.0;
    double s2_lower = 0.0, s2_upper = 0.0;
    double s3_lower = 0.0, s3_upper = 0.0;
    double z_lower = 0.0, z_upper = 0.0;
    int z_lower_branch = 0;  // 0: tail-only branch, 1: weighted-Jensen branch
    std::optional<double> i2_oracle, i3_oracle, z_oracle;
};

struct DivisionPair {
    Division s2;
    Division s3;
};

// int S1 = 4 pi gg^2 rho k3 exp(-d^2/(16 gg^2))
inline double s1_exact(double ds_norm, const NoiseParams& p) {
    const NormConstants k = norm_constants(p);
    const double gg2 = p.gamma_g * p.gamma_g;
    return 4.0 * M_PI * gg2 * p.rho * k.k3 * std::exp(-ds_norm * ds_norm / (16.0 * gg2));
}

namespace detail {

inline double delta1(const NoiseParams& p, const NormConstants& k) {
    return 2.0 * std::sqrt(p.rho * (1.0 - p.rho) * k.k3 * k.k4) *
           std::pow(p.tail_scale(), 0.25 * (p.alpha + 2.0));
}

inline double delta2(const NoiseParams& p, const NormConstants& k) {
    return (1.0 - p.rho) * k.k4 * std::pow(p.tail_scale(), 0.5 * (p.alpha + 2.0)) *
           beta_fn(0.5, 0.5 * (p.alpha + 1.0));
}

// G_p(x) = int_0^x t^p (c + t^2)^{-alpha/4} dt. G1 is elementary; G0 and G2
// go through the hypergeometric closed form.
struct GpEval {
    double c;
    double beta;  // alpha/4

    double g0(double x) const {
        if (x == 0.0) return 0.0;
        return x * std::pow(c, -beta) * gauss_2f1(beta, 0.5, 1.5, -x * x / c);
    }
    double g1(double x) const {
        return (std::pow(c + x * x, 1.0 - beta) - std::pow(c, 1.0 - beta)) /
               (2.0 * (1.0 - beta));
    }
    double g2(double x) const {
        if (x == 0.0) return 0.0;
        return x * x * x / 3.0 * std::pow(c, -beta) * gauss_2f1(beta, 1.5, 2.5, -x * x / c);
    }
};

// per-interval Gaussian moments over the shifted range [a+D, b+D]:
//   int r^c exp(-r^2/(8 gg^2)) dr for c = 0, 1
inline double gauss_moment0(double ra, double rb, double gg2) {
    const double root = std::sqrt(8.0 * gg2);
    return std::sqrt(2.0 * M_PI * gg2) * (std::erf(rb / root) - std::erf(ra / root));
}
inline double gauss_moment1(double ra, double rb, double gg2) {
    return 4.0 * gg2 * (std::exp(-ra * ra / (8.0 * gg2)) - std::exp(-rb * rb / (8.0 * gg2)));
}

}  // namespace detail

// PLA upper bound for int S2: each interval contributes the exact Gaussian
// integral of its dominating line, evaluated over the range shifted by the
// separation so the result is linear in ds_norm; the truncated tails are
// covered by a Gaussian majorant so the result stays a true upper bound.
inline double s2_upper(double ds_norm, const NoiseParams& p, const Division& div) {
    const NormConstants k = norm_constants(p);
    if (p.rho == 0.0 || p.rho == 1.0) return 0.0;
    const double gg2 = p.gamma_g * p.gamma_g;
    const double pref = detail::delta1(p, k) * std::sqrt(M_PI) / 2.0;
    const CurveHandle g = make_j1j2_handle(p);
    const double D = ds_norm;

    double total = 0.0;
    for (std::size_t h = 0; h + 1 < div.breakpoints.size(); ++h) {
        const double a = div.breakpoints[h], b = div.breakpoints[h + 1];
        const LinearPiece piece = upper_piece(g, a, b);
        const double m1 = detail::gauss_moment1(a + D, b + D, gg2);
        const double m0 = detail::gauss_moment0(a + D, b + D, gg2);
        total += piece.p * m1 + (piece.q - piece.p * D) * m0;
    }
    // tail majorant: J1 J2 is even and decreasing beyond the division range
    const double R = div.hi();
    const double edge = g.value(R);
    const double root = std::sqrt(8.0 * gg2);
    const double tail = edge * std::sqrt(2.0 * M_PI * gg2) *
                        (std::erfc((R + D) / root) + std::erfc((R - D) / root));
    return pref * (total + tail);
}

// closed-form Jensen lower bound
// L(S2) = 8 pi gg^2 sqrt(rho(1-rho) k3 k4) (1 + (8 gg^2 + d^2)/c)^{-(alpha+2)/4}
inline double s2_lower(double ds_norm, const NoiseParams& p) {
    const NormConstants k = norm_constants(p);
    const double gg2 = p.gamma_g * p.gamma_g;
    return 8.0 * M_PI * gg2 * std::sqrt(p.rho * (1.0 - p.rho) * k.k3 * k.k4) *
           std::pow(1.0 + (8.0 * gg2 + ds_norm * ds_norm) / p.tail_scale(),
                    -0.25 * (p.alpha + 2.0));
}

namespace detail {

// assemble the per-interval product-of-lines integral against the shifted
// algebraic kernel (c + (x-D)^2)^{-alpha/4}
inline double s3_piece_sum(double D, const NoiseParams& p, const Division& div,
                           PieceSide side) {
    const GpEval gp{p.tail_scale(), 0.25 * p.alpha};
    const CurveHandle prof = make_algebraic_handle(p.tail_scale(), 0.25 * (p.alpha + 2.0));
    const CurveHandle j3 = make_j3_handle(p, D);

    double total = 0.0;
    for (std::size_t h = 0; h + 1 < div.breakpoints.size(); ++h) {
        const double a = div.breakpoints[h], b = div.breakpoints[h + 1];
        LinearPiece p1, p2;
        if (side == PieceSide::upper) {
            p1 = upper_piece(prof, a, b);
            p2 = upper_piece(j3, a, b);
        } else {
            p1 = lower_piece(prof, a, b);
            p2 = lower_piece(j3, a, b);
            // a negative line invalidates the product minorant; the zero
            // line is always a valid floor for a positive integrand
            if (std::min(p1.eval(a), p1.eval(b)) < 0.0) p1 = {0.0, 0.0, a, b, side};
            if (std::min(p2.eval(a), p2.eval(b)) < 0.0) p2 = {0.0, 0.0, a, b, side};
        }
        const double A2 = p1.p * p2.p;
        const double A1 = p1.p * (p2.p * D + p2.q) + p2.p * (p1.p * D + p1.q);
        const double A0 = (p1.p * D + p1.q) * (p2.p * D + p2.q);
        const double ta = a - D, tb = b - D;
        total += A2 * (gp.g2(tb) - gp.g2(ta)) + A1 * (gp.g1(tb) - gp.g1(ta)) +
                 A0 * (gp.g0(tb) - gp.g0(ta));
    }
    return total;
}

// Q_nu(T) = int_T^inf (c + t^2)^{-nu} dt in closed form, nu > 1/2
inline double algebraic_tail_integral(double T, double c, double nu) {
    const double whole = 0.5 * std::sqrt(M_PI) * std::exp(std::lgamma(nu - 0.5) -
                                                          std::lgamma(nu)) *
                         std::pow(c, 0.5 - nu);
    if (T <= 0.0) return whole + std::abs(T) * std::pow(c, -nu);  // crude for T < 0
    const double head = T * std::pow(c, -nu) * gauss_2f1(nu, 0.5, 1.5, -T * T / c);
    return whole - head;
}

// Tight closed-form majorant of the S3 integrand mass beyond [-R, R].
// Right of R (with R past the peak of z and past 2 ds_norm): J3 <= J3(R),
// the unshifted factor is swapped onto the shifted one at the worst-case
// ratio kappa_R, leaving the elementary tail of (c+(x-D)^2)^{-(alpha+1)/2}.
// Left of -R the hypergeometric factor is below one and the shifted factor
// is below the unshifted one.
inline double s3_tail_majorant(double D, const NoiseParams& p, const Division& div) {
    const double R = div.hi();
    if (R < std::max(2.0 * D, D + std::sqrt(p.tail_scale())) || R <= 0.0) return HUGE_VAL;
    const double c = p.tail_scale();
    const double nu = 0.5 * (p.alpha + 1.0);
    const CurveHandle j3 = make_j3_handle(p, D);
    const double kappa =
        std::pow((c + R * R) / (c + (R - D) * (R - D)), 0.25 * p.alpha);
    const double right = std::max(1.0, j3.value(R)) * kappa * algebraic_tail_integral(R, c, nu);
    const double left = algebraic_tail_integral(-div.lo(), c, nu);
    return right + left;
}

}  // namespace detail

inline double s3_upper(double ds_norm, const NoiseParams& p, const Division& div) {
    if (p.rho == 1.0) return 0.0;
    const NormConstants k = norm_constants(p);
    const double body = detail::s3_piece_sum(ds_norm, p, div, PieceSide::upper);
    const double tail = detail::s3_tail_majorant(ds_norm, p, div);
    return detail::delta2(p, k) * (body + tail);
}

// Mirror construction with minorant lines; dropping the tails only lowers a
// positive integral, so no tail term appears.
inline double s3_lower(double ds_norm, const NoiseParams& p, const Division& div) {
    if (p.rho == 1.0) return 0.0;
    const NormConstants k = norm_constants(p);
    const double body = detail::s3_piece_sum(ds_norm, p, div, PieceSide::lower);
    return std::max(0.0, detail::delta2(p, k) * body);
}

// Triangle-inequality comparison bounds for int S2 (improper integral after
// dropping the +1). Two orders of magnitude off at times; comparison only.
inline std::pair<double, double> trivial_bounds(double ds_norm, const NoiseParams& p) {
    if (p.rho == 0.0 || p.rho == 1.0) return {0.0, 0.0};
    const NormConstants k = norm_constants(p);
    const double pref = 2.0 * M_PI * std::sqrt(p.rho * (1.0 - p.rho) * k.k3 * k.k4);
    const double gg2 = p.gamma_g * p.gamma_g;
    const double c = p.tail_scale();
    const double e = 0.25 * (p.alpha + 2.0);
    const double D = ds_norm;

    auto upper_integrand = [&](double r) {
        const double q = std::abs(r * r - D * D) / c;
        return r * std::exp(-r * r / (8.0 * gg2)) * std::pow(q, -e);
    };
    const double rmax = std::sqrt(8.0 * gg2) * 7.0 + D + 10.0;
    double up = 0.0;
    if (D > 1e-12) {
        up += integrate_tanh_sinh(upper_integrand, 0.0, D, 1e-9).value;
        up += integrate_tanh_sinh(upper_integrand, D, rmax, 1e-9).value;
    } else {
        up += integrate_tanh_sinh(upper_integrand, 0.0, rmax, 1e-9).value;
    }
    auto lower_integrand = [&](double r) {
        const double q = 1.0 + (r + D) * (r + D) / c;
        return r * std::exp(-r * r / (8.0 * gg2)) * std::pow(q, -e);
    };
    const double lo = integrate_gk(lower_integrand, 0.0, rmax, 1e-14, 1e-10).value;
    return {pref * lo, pref * up};
}

// Same construction applied to int S3; used by the sweep comparisons.
inline std::pair<double, double> trivial_s3_bounds(double ds_norm, const NoiseParams& p) {
    if (p.rho == 1.0) return {0.0, 0.0};
    const NormConstants k = norm_constants(p);
    const double pref = 2.0 * M_PI * (1.0 - p.rho) * k.k4;
    const double c = p.tail_scale();
    const double e = 0.25 * (p.alpha + 2.0);
    const double D = ds_norm;

    auto upper_integrand = [&](double r) {
        const double q1 = 1.0 + r * r / c;
        const double q2 = std::abs(r * r - D * D) / c;
        return r * std::pow(q1, -e) * std::pow(q2, -e);
    };
    const double rmax = 1e6 + 4.0 * D;
    double up = 0.0;
    if (D > 1e-12) {
        up += integrate_tanh_sinh(upper_integrand, 0.0, D, 1e-9).value;
        up += integrate_tanh_sinh(upper_integrand, D, 8.0 * D + 40.0, 1e-9).value;
        up += integrate_gk(upper_integrand, 8.0 * D + 40.0, rmax, 1e-14, 1e-9).value;
    } else {
        up += integrate_tanh_sinh(upper_integrand, 0.0, 40.0, 1e-9).value;
        up += integrate_gk(upper_integrand, 40.0, rmax, 1e-14, 1e-9).value;
    }
    auto lower_integrand = [&](double r) {
        const double q1 = 1.0 + r * r / c;
        const double q2 = 1.0 + (r + D) * (r + D) / c;
        return r * std::pow(q1, -e) * std::pow(q2, -e);
    };
    const double lo = integrate_gk(lower_integrand, 0.0, rmax, 1e-14, 1e-9).value;
    return {pref * lo, pref * up};
}

// Z(k,l) <= int S1 + sqrt(2) S2 + S3, clamped to the Bhattacharyya range.
inline double z_upper(double ds_norm, const NoiseParams& p, const DivisionPair& divs) {
    const double v = s1_exact(ds_norm, p) + std::sqrt(2.0) * s2_upper(ds_norm, p, divs.s2) +
                     s3_upper(ds_norm, p, divs.s3);
    return std::min(v, 1.0);
}

// Z(k,l) >= max( int S3 , weighted-Jensen combination with w3 = (rho+eps)^-1 )
inline double z_lower(double ds_norm, const NoiseParams& p, const DivisionPair& divs,
                      double eps = 1e-3, int* branch = nullptr) {
    if (!(eps > 0.0)) throw std::invalid_argument("z_lower: eps must be > 0");
    const double s3lo = s3_lower(ds_norm, p, divs.s3);
    const double w3 = 1.0 / (p.rho + eps);
    const double jensen = (s1_exact(ds_norm, p) + s2_lower(ds_norm, p) + std::sqrt(w3) * s3lo) /
                          std::sqrt(2.0 + w3);
    if (branch) *branch = (s3lo >= jensen) ? 0 : 1;
    return std::min(1.0, std::max(s3lo, jensen));
}

// ---------------------------------------------------------------------------
// Cached bound engine: owns the divisions per separation, extends the
// division range until the analytic tail majorant is below 1e-6 of the
// bound, and provides the constellation-level CR bounds.

class BoundSet {
  public:
    explicit BoundSet(const NoiseParams& p, PlaConfig s2_cfg = {}, PlaConfig s3_cfg = {},
                      double jensen_eps = 1e-3)
        : params_(p), s2_cfg_(s2_cfg), s3_cfg_(s3_cfg), eps_(jensen_eps) {
        params_.validate();
        if (s2_cfg_.k_main <= 0 || s2_cfg_.k_tail <= 0)
            pla_target_defaults(DivisionTarget::j1j2, s2_cfg_.k_main, s2_cfg_.k_tail);
        if (s3_cfg_.k_main <= 0 || s3_cfg_.k_tail <= 0)
            pla_target_defaults(DivisionTarget::j3, s3_cfg_.k_main, s3_cfg_.k_tail);
    }

    const NoiseParams& params() const { return params_; }

    double s1(double d) const { return s1_exact(d, params_); }
    double s2_up(double d) {
        if (params_.rho == 0.0 || params_.rho == 1.0) return 0.0;
        return memo(s2_up_cache_, d,
                    [&] { return gscr::s2_upper(d, params_, s2_division(d)); });
    }
    double s2_lo(double d) const { return s2_lower(d, params_); }
    double s3_up(double d) {
        if (params_.rho == 1.0) return 0.0;
        return memo(s3_up_cache_, d,
                    [&] { return gscr::s3_upper(d, params_, s3_division(d)); });
    }
    double s3_lo(double d) {
        if (params_.rho == 1.0) return 0.0;
        return memo(s3_lo_cache_, d,
                    [&] { return gscr::s3_lower(d, params_, s3_division(d)); });
    }
    double z_up(double d) {
        return std::min(1.0, s1(d) + std::sqrt(2.0) * s2_up(d) + s3_up(d));
    }
    double z_lo(double d, int* branch = nullptr) {
        if (d == 0.0) {  // coincident densities: Z is exactly one
            if (branch) *branch = 1;
            return 1.0;
        }
        const double s3lo = s3_lo(d);
        const double w3 = 1.0 / (params_.rho + eps_);
        const double jensen =
            (s1(d) + s2_lo(d) + std::sqrt(w3) * s3lo) / std::sqrt(2.0 + w3);
        if (branch) *branch = (s3lo >= jensen) ? 0 : 1;
        return std::min(1.0, std::max(s3lo, jensen));
    }

    // plain-Jensen variant (all weights equal) used as a sweep baseline
    double z_lo_plain_jensen(double d) {
        const double v = (s1(d) + s2_lo(d) + s3_lo(d)) / std::sqrt(3.0);
        return std::min(1.0, v);
    }

    BoundReport report(double d) {
        BoundReport r;
        r.ds_norm = d;
        r.i1_exact = s1(d);
        r.s2_lower = s2_lo(d);
        r.s2_upper = s2_up(d);
        r.s3_lower = s3_lo(d);
        r.s3_upper = s3_up(d);
        r.z_upper = z_up(d);
        r.z_lower = z_lo(d, &r.z_lower_branch);
        return r;
    }

    double cr_lower(const std::vector<Vec2>& pts, const std::vector<double>& probs) {
        return cr_from_z(pts, probs, /*use_upper=*/true);
    }
    double cr_upper(const std::vector<Vec2>& pts, const std::vector<double>& probs) {
        return cr_from_z(pts, probs, /*use_upper=*/false);
    }

    const Division& s2_division(double d) {
        auto it = s2_cache_.find(d);
        if (it != s2_cache_.end()) return it->second;
        return s2_cache_.emplace(d, build_s2_division(d)).first->second;
    }

    const Division& s3_division(double d) {
        auto it = s3_cache_.find(d);
        if (it != s3_cache_.end()) return it->second;
        return s3_cache_.emplace(d, build_s3_division(d)).first->second;
    }

  private:
    Division build_s2_division(double d) const {
        double mult = s2_cfg_.range_mult;
        for (int i = 0; i < 10; ++i) {
            Division div = build_division(DivisionTarget::j1j2, params_, d, s2_cfg_.k_main,
                                          s2_cfg_.k_tail, mult, s2_cfg_.tail_ratio);
            // tail fraction of the Gaussian mass beyond the range
            const double gg2 = params_.gamma_g * params_.gamma_g;
            const double root = std::sqrt(8.0 * gg2);
            const double R = div.hi();
            const double tail_frac =
                std::erfc((R - d) / root) + std::erfc((R + d) / root);
            if (tail_frac < 1e-7) return div;
            mult *= 1.5;
        }
        throw tolerance_error("BoundSet: could not shrink the S2 tail below target", 0.0);
    }

    // The S3 integrand keeps Theta(R^-alpha) mass in its tail, so unlike the
    // Gaussian S2 case the truncated part cannot be made negligible at sane
    // ranges. The range grows until the closed-form tail majorant itself is
    // a small fraction of the body; the majorant is tight there (its own
    // slack shrinks as (R-D)/R -> 1), keeping the bound both valid and sharp.
    Division build_s3_division(double d) const {
        double mult = std::max(s3_cfg_.range_mult,
                               8.0 * std::max(d, 1.0) /
                                   std::max(6.0 * std::sqrt(8.0) * params_.gamma_g,
                                            d + 6.0 * params_.gamma_s *
                                                    std::sqrt(params_.alpha)));
        for (int i = 0; i < 20; ++i) {
            Division div = build_division(DivisionTarget::j3, params_, d, s3_cfg_.k_main,
                                          s3_cfg_.k_tail, mult, s3_cfg_.tail_ratio);
            const double tail = detail::s3_tail_majorant(d, params_, div);
            const double body =
                std::abs(detail::s3_piece_sum(d, params_, div, PieceSide::upper));
            if (std::isfinite(tail) && tail <= 5e-3 * body) return div;
            mult *= 1.6;
        }
        throw tolerance_error("BoundSet: could not shrink the S3 tail below target", 0.0);
    }

    double cr_from_z(const std::vector<Vec2>& pts, const std::vector<double>& probs,
                     bool use_upper) {
        if (pts.size() != probs.size() || pts.empty())
            throw std::invalid_argument("BoundSet: points/probs size mismatch");
        std::map<double, double> zcache;
        double inner = 0.0;
        for (double q : probs) inner += q * q;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                if (probs[i] == 0.0 && probs[j] == 0.0) continue;
                const double d = (pts[i] - pts[j]).norm();
                auto it = zcache.find(d);
                double z;
                if (it != zcache.end()) {
                    z = it->second;
                } else {
                    z = use_upper ? z_up(d) : z_lo(d);
                    zcache.emplace(d, z);
                }
                inner += 2.0 * probs[i] * probs[j] * z;
            }
        }
        inner = std::min(inner, 1.0);
        return -std::log2(inner);
    }

    template <class F>
    static double memo(std::map<double, double>& cache, double d, F&& compute) {
        auto it = cache.find(d);
        if (it != cache.end()) return it->second;
        const double v = compute();
        cache.emplace(d, v);
        return v;
    }

    NoiseParams params_;
    PlaConfig s2_cfg_, s3_cfg_;
    double eps_;
    std::map<double, Division> s2_cache_;
    std::map<double, Division> s3_cache_;
    std::map<double, double> s2_up_cache_, s3_up_cache_, s3_lo_cache_;
};

// ---------------------------------------------------------------------------
// linearized surrogate for the shaping optimizer

struct SurrogateCoeffs {
    double rho1 = 0.0;        // slope of the linear tail part
    double rho0 = 0.0;        // intercept of the linear tail part
    double gauss_amp = 0.0;   // 4 rho k3 pi gg^2
    double gauss_scale = 0.0; // 16 gg^2
    double ds_max = 0.0;      // validity range

    double value_unclamped(double d) const {
        return gauss_amp * std::exp(-d * d / gauss_scale) + rho1 * d + rho0;
    }
    // The optimizer works on the raw majorant: its excess above one at small
    // separations is exactly what penalizes close pairs and deactivates
    // points at low GSNR. Only the coincident case is pinned to the exact
    // Bhattacharyya value.
    double value(double d) const {
        if (d == 0.0) return std::min(1.0, value_unclamped(0.0));
        return value_unclamped(d);
    }

    void validate() const {
        if (!(rho0 > 0.0)) throw std::invalid_argument("SurrogateCoeffs: rho0 must be > 0");
        const double z0 = std::min(1.0, gauss_amp + rho0);
        if (!(z0 > 0.0 && z0 <= 1.0001))
            throw std::invalid_argument("SurrogateCoeffs: z_tilde(0) out of (0, 1.0001]");
    }
};

// Fit the tightest (minimum average) line rho1 d + rho0 dominating the
// non-Gaussian part of the clamped upper bound min(1, z_upper(d)) - s1(d)
// over [0, ds_max]. The optimal line touches two support points of the
// sample's upper hull; a final lift makes domination exact on the grid.
inline SurrogateCoeffs build_surrogate(BoundSet& bounds, double ds_max, int grid_n = 128) {
    if (!(ds_max > 0.0)) throw std::invalid_argument("build_surrogate: ds_max must be > 0");
    const NoiseParams& p = bounds.params();
    const NormConstants k = norm_constants(p);
    SurrogateCoeffs out;
    out.gauss_amp = 4.0 * p.rho * k.k3 * M_PI * p.gamma_g * p.gamma_g;
    out.gauss_scale = 16.0 * p.gamma_g * p.gamma_g;
    out.ds_max = ds_max;

    std::vector<double> ds(grid_n + 1), h(grid_n + 1);
    for (int i = 0; i <= grid_n; ++i) {
        // denser sampling at small separations where the target bends
        const double t = static_cast<double>(i) / grid_n;
        ds[i] = ds_max * t * t * (3.0 - 2.0 * t);
        const double zu = (i == 0) ? 1.0 : bounds.z_up(ds[i]);
        h[i] = zu - out.gauss_amp * std::exp(-ds[i] * ds[i] / out.gauss_scale);
    }

    double best0 = 0.0, best1 = 0.0, best_obj = HUGE_VAL;
    auto consider = [&](double r1, double r0) {
        double obj = 0.0;
        for (int i = 0; i <= grid_n; ++i) {
            const double v = r0 + r1 * ds[i];
            if (v < h[i] - 1e-11) return;
            obj += v - h[i];
        }
        if (obj < best_obj) {
            best_obj = obj;
            best0 = r0;
            best1 = r1;
        }
    };
    // horizontal line through the peak
    double hmax = h[0];
    for (double v : h) hmax = std::max(hmax, v);
    consider(0.0, hmax);
    // two-point support candidates
    for (int i = 0; i <= grid_n; ++i) {
        for (int j = i + 1; j <= grid_n; ++j) {
            if (ds[j] - ds[i] < 1e-9 * ds_max) continue;
            const double r1 = (h[j] - h[i]) / (ds[j] - ds[i]);
            const double r0 = h[i] - r1 * ds[i];
            consider(r1, r0);
        }
    }
    // exact domination on the grid
    double lift = 0.0;
    for (int i = 0; i <= grid_n; ++i)
        lift = std::max(lift, h[i] - (best0 + best1 * ds[i]));
    out.rho1 = best1;
    out.rho0 = std::max(best0 + lift, 1e-12);
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// numerical sup-based Lipschitz estimate for the surrogate gradient field

inline double surrogate_kappa(const SurrogateCoeffs& sc, double d) {
    // gradient of z_tilde w.r.t. one endpoint is kappa(d) * (s_k - s_l)
    const double gauss = -2.0 * sc.gauss_amp / sc.gauss_scale *
                         std::exp(-d * d / sc.gauss_scale);
    return gauss + ((d > 0.0) ? sc.rho1 / d : 0.0);
}

inline double surrogate_kappa_slope(const SurrogateCoeffs& sc, double d) {
    const double gauss = 4.0 * sc.gauss_amp * d / (sc.gauss_scale * sc.gauss_scale) *
                         std::exp(-d * d / sc.gauss_scale);
    return gauss - ((d > 0.0) ? sc.rho1 / (d * d) : 0.0);
}

// L-bar = sum_{k<l} p_k p_l ( max(z_tilde(0), |grad kappa_gauss(0)|)
//                             + sup_d |kappa'(d)| d )
// with the sup taken on a 512-point grid over (0, ds_max]; the kink of the
// rho1 term at zero is excluded and covered by the analytic Gaussian part.
inline double lipschitz_bound(const SurrogateCoeffs& sc, const std::vector<double>& probs,
                              int grid_n = 512) {
    double sup = 0.0;
    for (int i = 1; i <= grid_n; ++i) {
        const double d = sc.ds_max * i / grid_n;
        sup = std::max(sup, std::abs(surrogate_kappa_slope(sc, d)) * d);
    }
    const double base = std::max(sc.value(0.0), 0.0) + sup;
    std::vector<double> terms;
    terms.reserve(probs.size() * probs.size() / 2);
    for (std::size_t k = 0; k < probs.size(); ++k)
        for (std::size_t l = k + 1; l < probs.size(); ++l) terms.push_back(probs[k] * probs[l]);
    std::sort(terms.begin(), terms.end());
    double pairs = 0.0;
    for (double t : terms) pairs += t;
    const double lbar = pairs * base;
    return std::max(lbar, 1e-12);
}

}  // namespace gscr

#endif  // GSCR_BOUNDS_HPP
