#ifndef GSCR_QUAD_ORACLE_HPP
#define GSCR_QUAD_ORACLE_HPP

// Ground-truth numerical integration for the quantities the closed-form
// bounds approximate: the S-term integrals, the Bhattacharyya parameter and
// the exact cutoff rate. Plane integrals run in polar coordinates centered
// at ds/2 with a log-transformed adaptive radial rule and a trapezoid
// angular rule that doubles until convergence.

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "gscr/noise.hpp"
#include "gscr/quadrature.hpp"
#include "gscr/vec2.hpp"

namespace gscr {

struct QuadSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-9;
    double trunc_radius = 0.0;  // 0: derive from the analytic tail-mass bound
    int max_subdivisions = 6000;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
            throw std::invalid_argument("QuadSpec: tolerances must be positive");
        if (max_subdivisions < 8)
            throw std::invalid_argument("QuadSpec: max_subdivisions too small");
    }
};

struct SIntegrals {
    double i1 = 0.0;
    double i2 = 0.0;
    double i3 = 0.0;
    double err_est = 0.0;
};

namespace detail {

// Integrand family for one (ds, params) operating point, in the original
// (unrotated) frame so that rotation invariance is a real property of the
// output rather than of the implementation.
struct PlaneFields {
    NoiseParams p;
    Vec2 ds;
    NormConstants k;
    double c;      // 2 alpha gamma_s^2
    double e4;     // (alpha+2)/4
    double gg2;    // gamma_g^2

    explicit PlaneFields(const NoiseParams& params, Vec2 d)
        : p(params), ds(d), k(norm_constants(params)), c(params.tail_scale()),
          e4(0.25 * (params.alpha + 2.0)), gg2(params.gamma_g * params.gamma_g) {}

    double gauss_half(Vec2 n) const { return std::exp(-n.norm2() / (8.0 * gg2)); }
    double tail_quarter(Vec2 n) const { return std::pow(1.0 + n.norm2() / c, -e4); }

    double s1(Vec2 n) const { return p.rho * k.k3 * gauss_half(n) * gauss_half(n - ds); }
    double s2(Vec2 n) const {
        return std::sqrt(p.rho * (1.0 - p.rho) * k.k3 * k.k4) * gauss_half(n) *
               tail_quarter(n - ds);
    }
    double s3(Vec2 n) const {
        return (1.0 - p.rho) * k.k4 * tail_quarter(n) * tail_quarter(n - ds);
    }
    double z_integrand(Vec2 n) const {
        return std::sqrt(pdf_2d(n, p) * pdf_2d(n - ds, p));
    }
};

// Tail-mass majorants beyond midpoint-radius R. u = R - D/2 is the least
// distance to either density center.
inline double gauss_tail_mass(double R, double half_sep, double gg2) {
    // int_R^inf 2 pi r exp(-(r-m)^2/(8 gg^2)) dr, m = half_sep
    const double s2 = 8.0 * gg2;
    const double u = R - half_sep;
    if (u <= 0.0) return HUGE_VAL;
    const double root = std::sqrt(s2);
    return 2.0 * M_PI * (0.5 * s2 * std::exp(-u * u / s2) +
                         half_sep * 0.5 * std::sqrt(M_PI) * root * std::erfc(u / root));
}

inline double power_tail_mass(double R, double half_sep, double c, double alpha) {
    // int_R^inf 2 pi r (1 + (r-m)^2/c)^{-(alpha+2)/2} dr
    const double u = R - half_sep;
    if (u <= 0.0) return HUGE_VAL;
    const double first = (c / alpha) * std::pow(1.0 + u * u / c, -0.5 * alpha);
    const double second =
        half_sep * std::pow(c, 0.5 * (alpha + 2.0)) * std::pow(u, -(alpha + 1.0)) / (alpha + 1.0);
    return 2.0 * M_PI * (first + second);
}

enum class FieldKind { s1, s2, s3, z };

inline double tail_majorant(FieldKind kind, const PlaneFields& F, double R) {
    const double m = 0.5 * F.ds.norm();
    switch (kind) {
        case FieldKind::s1:
            return F.p.rho * F.k.k3 * gauss_tail_mass(R, m, F.gg2);
        case FieldKind::s2:
            return std::sqrt(F.p.rho * (1.0 - F.p.rho) * F.k.k3 * F.k.k4) *
                   gauss_tail_mass(R, m, F.gg2);
        case FieldKind::s3:
            return (1.0 - F.p.rho) * F.k.k4 * power_tail_mass(R, m, F.c, F.p.alpha);
        case FieldKind::z:
            return F.p.rho * F.k.k3 * gauss_tail_mass(R, m, F.gg2) +
                   (1.0 - F.p.rho) * F.k.k4 * power_tail_mass(R, m, F.c, F.p.alpha);
    }
    return HUGE_VAL;
}

inline double pick_trunc_radius(FieldKind kind, const PlaneFields& F, const QuadSpec& spec) {
    if (spec.trunc_radius > 0.0) return spec.trunc_radius;
    double R = 0.5 * F.ds.norm() + 20.0 * F.p.gamma_g +
               20.0 * F.p.gamma_s * std::sqrt(F.p.alpha) + 10.0;
    const double goal = 0.1 * spec.abs_tol;
    for (int i = 0; i < 120 && tail_majorant(kind, F, R) > goal; ++i) R *= 1.6;
    return R;
}

template <class G>
double integrate_plane(G&& g, FieldKind kind, const PlaneFields& F, const QuadSpec& spec,
                       double* err_out) {
    const double Rt = pick_trunc_radius(kind, F, spec);
    const Vec2 mid = 0.5 * F.ds;
    const double vmax = std::log1p(Rt);

    auto radial_sum = [&](int n_ang) {
        // theta offset keeps nodes off the symmetry axes
        std::vector<double> cs(n_ang), sn(n_ang);
        for (int i = 0; i < n_ang; ++i) {
            const double th = 2.0 * M_PI * (i + 0.5) / n_ang;
            cs[i] = std::cos(th);
            sn[i] = std::sin(th);
        }
        auto profile = [&](double v) {
            const double r = std::expm1(v);
            double acc = 0.0;
            for (int i = 0; i < n_ang; ++i) acc += g(Vec2{mid.x + r * cs[i], mid.y + r * sn[i]});
            return acc * (2.0 * M_PI / n_ang) * r * (r + 1.0);
        };
        return integrate_gk(profile, 0.0, vmax, 0.5 * spec.abs_tol, 0.1 * spec.rel_tol,
                            spec.max_subdivisions);
    };

    int n_ang = 128;
    QuadResult cur = radial_sum(n_ang);
    double prev_val = cur.value;
    double ang_err = HUGE_VAL;
    for (int doublings = 0; doublings < 5; ++doublings) {
        n_ang *= 2;
        cur = radial_sum(n_ang);
        ang_err = std::abs(cur.value - prev_val);
        prev_val = cur.value;
        if (ang_err <= std::max(spec.abs_tol, 0.25 * spec.rel_tol * std::abs(cur.value))) break;
    }
    const double tail = tail_majorant(kind, F, Rt);
    const double err = ang_err + cur.error + tail;
    if (err_out) *err_out = err;
    if (!cur.converged ||
        err > std::max(spec.abs_tol, spec.rel_tol * std::abs(cur.value)) * 20.0)
        throw tolerance_error("quad_oracle: plane integral tolerance not met", err);
    // the truncated tail is accounted for in err via its analytic majorant
    return cur.value;
}

}  // namespace detail

inline SIntegrals s_integrals(Vec2 ds, const NoiseParams& p, const QuadSpec& spec = {}) {
    p.validate();
    spec.validate();
    const detail::PlaneFields F(p, ds);
    SIntegrals out;
    double e1 = 0.0, e2 = 0.0, e3 = 0.0;
    out.i1 = detail::integrate_plane([&](Vec2 n) { return F.s1(n); }, detail::FieldKind::s1, F,
                                     spec, &e1);
    out.i2 = detail::integrate_plane([&](Vec2 n) { return F.s2(n); }, detail::FieldKind::s2, F,
                                     spec, &e2);
    out.i3 = detail::integrate_plane([&](Vec2 n) { return F.s3(n); }, detail::FieldKind::s3, F,
                                     spec, &e3);
    out.err_est = std::max({e1, e2, e3});
    return out;
}

// Z(k,l) = int sqrt(f(y) f(y - ds)) dy, in (0, 1]; equals 1 at ds = 0.
inline double bhattacharyya(Vec2 ds, const NoiseParams& p, const QuadSpec& spec = {},
                            double* err_out = nullptr) {
    p.validate();
    spec.validate();
    if (ds.norm2() == 0.0) {
        if (err_out) *err_out = 0.0;
        return 1.0;
    }
    const detail::PlaneFields F(p, ds);
    const double z = detail::integrate_plane([&](Vec2 n) { return F.z_integrand(n); },
                                             detail::FieldKind::z, F, spec, err_out);
    return std::min(z, 1.0);
}

// Exact cutoff rate in bits per symbol for a discrete constellation.
// Z values are cached per pairwise distance; the GS densities are radial so
// Z depends on the pair only through the separation norm.
inline double cutoff_rate_exact(const std::vector<Vec2>& points, const std::vector<double>& probs,
                                const NoiseParams& p, const QuadSpec& spec = {}) {
    if (points.size() != probs.size() || points.empty())
        throw std::invalid_argument("cutoff_rate_exact: points/probs size mismatch");
    double psum = 0.0;
    for (double q : probs) {
        if (q < -1e-12 || q > 1.0 + 1e-12)
            throw std::invalid_argument("cutoff_rate_exact: probabilities out of range");
        psum += q;
    }
    if (std::abs(psum - 1.0) > 1e-9)
        throw std::invalid_argument("cutoff_rate_exact: probabilities must sum to 1");

    std::map<double, double> z_cache;
    double inner = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) inner += probs[i] * probs[i];
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (probs[i] == 0.0 && probs[j] == 0.0) continue;
            const double d = (points[i] - points[j]).norm();
            auto it = z_cache.find(d);
            double z;
            if (it != z_cache.end()) {
                z = it->second;
            } else {
                z = bhattacharyya((points[i] - points[j]), p, spec);
                z_cache.emplace(d, z);
            }
            inner += 2.0 * probs[i] * probs[j] * z;
        }
    }
    return -std::log2(inner);
}

}  // namespace gscr

#endif  // GSCR_QUAD_ORACLE_HPP
