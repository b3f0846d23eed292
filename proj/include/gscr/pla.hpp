#ifndef GSCR_PLA_HPP
#define GSCR_PLA_HPP

// Piecewise-linear approximation machinery: bounding-line families over
// intervals of definite convexity, closed-form inflection solvers for the
// J1*J2 and J3 targets, and division-sequence construction with numeric
// convexity certification.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "gscr/noise.hpp"
#include "gscr/special_functions.hpp"

namespace gscr {

class convexity_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Scalar target with derivative handles. slope/curvature may be empty, in
// which case central differences of value are used where needed.
struct CurveHandle {
    std::function<double(double)> value;
    std::function<double(double)> slope;
    std::function<double(double)> curvature;

    double slope_at(double x) const {
        if (slope) return slope(x);
        const double h = 1e-6 * (std::abs(x) + 1.0);
        return (value(x + h) - value(x - h)) / (2.0 * h);
    }
};

enum class PieceSide { upper, lower };
enum class PieceKind { chord, tangent };

struct LinearPiece {
    double p = 0.0;  // slope
    double q = 0.0;  // intercept
    double lo = 0.0;
    double hi = 0.0;
    PieceSide side = PieceSide::upper;
    PieceKind kind = PieceKind::chord;

    double eval(double x) const { return p * x + q; }
};

namespace detail {

inline constexpr int kConvexityGrid = 33;

// second differences can only be trusted above the evaluation noise of the
// special-function kernels (~1e-10 relative, amplified by cancellation)
inline constexpr double kCurvatureNoiseBand = 5e-9;

// Sign of the second difference over a 33-point grid: +1 convex, -1 concave.
// Numerically flat intervals count as convex (chord and tangent coincide to
// within the noise there). When the interval genuinely mixes signs, throws;
// if flip_out is given, it receives a point between the grid nodes where the
// significant second differences change sign.
inline int convexity_sign(const CurveHandle& g, double a, double b,
                          double* flip_out = nullptr) {
    const double h = (b - a) / (kConvexityGrid - 1);
    double vals[kConvexityGrid];
    double scale = 0.0;
    for (int i = 0; i < kConvexityGrid; ++i) {
        vals[i] = g.value(a + i * h);
        scale = std::max(scale, std::abs(vals[i]));
    }
    const double zero_band = kCurvatureNoiseBand * scale + 1e-300;
    double pos = 0.0, neg = 0.0;
    double d2s[kConvexityGrid];
    for (int i = 1; i + 1 < kConvexityGrid; ++i) {
        d2s[i] = vals[i - 1] - 2.0 * vals[i] + vals[i + 1];
        pos = std::max(pos, d2s[i]);
        neg = std::min(neg, d2s[i]);
    }
    if (-neg <= zero_band) return +1;  // includes the numerically flat case
    if (pos <= zero_band) return -1;
    if (flip_out) {
        // first pair of significant, opposite-sign second differences
        int prev = 0;
        double prev_x = a;
        for (int i = 1; i + 1 < kConvexityGrid; ++i) {
            if (std::abs(d2s[i]) <= zero_band) continue;
            const int s = d2s[i] > 0.0 ? +1 : -1;
            if (prev != 0 && s != prev) {
                *flip_out = 0.5 * (prev_x + (a + i * h));
                break;
            }
            prev = s;
            prev_x = a + i * h;
        }
    }
    throw convexity_error("pla: interval mixes convex and concave regions");
}

// Sign of the second differences over precomputed grid values; same contract
// as convexity_sign but without re-evaluating the target.
inline int convexity_sign_from(const double* vals) {
    double scale = 0.0;
    for (int i = 0; i < kConvexityGrid; ++i) scale = std::max(scale, std::abs(vals[i]));
    const double zero_band = kCurvatureNoiseBand * scale + 1e-300;
    double pos = 0.0, neg = 0.0;
    for (int i = 1; i + 1 < kConvexityGrid; ++i) {
        const double d2 = vals[i - 1] - 2.0 * vals[i] + vals[i + 1];
        pos = std::max(pos, d2);
        neg = std::min(neg, d2);
    }
    if (-neg <= zero_band) return +1;
    if (pos <= zero_band) return -1;
    throw convexity_error("pla: interval mixes convex and concave regions");
}

// Verify the piece on the 33-point grid and repair noise-level violations by
// shifting the intercept. Curvature below the certification noise band can
// hide a deviation of up to ~128x the band on a flat-classified interval, so
// the repair threshold sits a safe factor above that; anything larger means
// a genuine misclassification.
inline void check_domination_from(LinearPiece& piece, const double* vals, double a, double h) {
    double worst = 0.0, scale = 0.0;
    for (int i = 0; i < kConvexityGrid; ++i) {
        const double x = a + i * h;
        const double gap = (piece.side == PieceSide::upper) ? vals[i] - piece.eval(x)
                                                            : piece.eval(x) - vals[i];
        worst = std::max(worst, gap);
        scale = std::max(scale, std::abs(vals[i]));
    }
    if (worst <= 0.0) return;
    if (worst > 400.0 * kCurvatureNoiseBand * (scale + 1e-30))
        throw convexity_error("pla: piece fails to dominate its target on the check grid");
    piece.q += (piece.side == PieceSide::upper) ? worst : -worst;
}

}  // namespace detail

namespace detail {

inline LinearPiece build_piece(const CurveHandle& g, double a, double b, PieceSide side) {
    if (!(a < b)) throw std::invalid_argument("pla piece: requires a < b");
    const double h = (b - a) / (kConvexityGrid - 1);
    double vals[kConvexityGrid];
    for (int i = 0; i < kConvexityGrid; ++i) vals[i] = g.value(a + i * h);

    LinearPiece out;
    out.lo = a;
    out.hi = b;
    out.side = side;
    const int sign = convexity_sign_from(vals);
    const bool chord = (side == PieceSide::upper) ? (sign > 0) : (sign < 0);
    if (chord) {
        const double ga = vals[0], gb = vals[kConvexityGrid - 1];
        out.p = (gb - ga) / (b - a);
        out.q = (b * ga - a * gb) / (b - a);
        out.kind = PieceKind::chord;
    } else {
        const double m = 0.5 * (a + b);
        const double gm = vals[(kConvexityGrid - 1) / 2], sm = g.slope_at(m);
        out.p = sm;
        out.q = gm - m * sm;
        out.kind = PieceKind::tangent;
    }
    check_domination_from(out, vals, a, h);
    return out;
}

}  // namespace detail

// Minimal linear dominator: chord on convex intervals, midpoint tangent on
// concave ones.
inline LinearPiece upper_piece(const CurveHandle& g, double a, double b) {
    return detail::build_piece(g, a, b, PieceSide::upper);
}

// Mirror rule: chord below concave intervals, midpoint tangent below convex.
inline LinearPiece lower_piece(const CurveHandle& g, double a, double b) {
    return detail::build_piece(g, a, b, PieceSide::lower);
}

// ---------------------------------------------------------------------------
// target function handles

// (c + x^2)^{-beta} with closed-form derivatives; J1 is beta = alpha/4 and
// the J4 slice profile is beta = (alpha+2)/4.
inline CurveHandle make_algebraic_handle(double c, double beta) {
    auto value = [c, beta](double x) { return std::pow(c + x * x, -beta); };
    auto slope = [c, beta](double x) {
        return -2.0 * beta * x * std::pow(c + x * x, -beta - 1.0);
    };
    auto curvature = [c, beta](double x) {
        const double u = c + x * x;
        return -2.0 * beta * std::pow(u, -beta - 2.0) * (u - 2.0 * (beta + 1.0) * x * x);
    };
    return {value, slope, curvature};
}

// J2(x) = U(1/2, 1 - alpha/4; (c + x^2)/(8 gamma_g^2))
inline CurveHandle make_j2_handle(const NoiseParams& p) {
    const double c = p.tail_scale();
    const double b = 1.0 - 0.25 * p.alpha;
    const double s = 8.0 * p.gamma_g * p.gamma_g;
    auto zeta = [c, s](double x) { return (c + x * x) / s; };
    auto value = [=](double x) { return tricomi_u(0.5, b, zeta(x)); };
    auto slope = [=](double x) {
        return tricomi_u_dz(0.5, b, zeta(x)) * (2.0 * x / s);
    };
    auto curvature = [=](double x) {
        const double z = zeta(x);
        return tricomi_u_d2z(0.5, b, z) * (2.0 * x / s) * (2.0 * x / s) +
               tricomi_u_dz(0.5, b, z) * (2.0 / s);
    };
    return {value, slope, curvature};
}

inline CurveHandle make_j1_handle(const NoiseParams& p) {
    return make_algebraic_handle(p.tail_scale(), 0.25 * p.alpha);
}

inline CurveHandle make_j1j2_handle(const NoiseParams& p) {
    CurveHandle j1 = make_j1_handle(p);
    CurveHandle j2 = make_j2_handle(p);
    auto value = [=](double x) { return j1.value(x) * j2.value(x); };
    auto slope = [=](double x) {
        return j1.slope(x) * j2.value(x) + j1.value(x) * j2.slope(x);
    };
    auto curvature = [=](double x) {
        return j1.curvature(x) * j2.value(x) + 2.0 * j1.slope(x) * j2.slope(x) +
               j1.value(x) * j2.curvature(x);
    };
    return {value, slope, curvature};
}

// J3(x) = 2F1((alpha+2)/4, 1/2; (alpha+2)/2; z(x)),
// z(x) = (2 x D - D^2)/(c + x^2)
inline CurveHandle make_j3_handle(const NoiseParams& p, double ds_norm) {
    const double c = p.tail_scale();
    const double D = ds_norm;
    const double a = 0.25 * (p.alpha + 2.0);
    const double b = 0.5;
    const double cc = 0.5 * (p.alpha + 2.0);
    if (D == 0.0) {
        return {[](double) { return 1.0; }, [](double) { return 0.0; },
                [](double) { return 0.0; }};
    }
    auto zf = [c, D](double x) { return (2.0 * x * D - D * D) / (c + x * x); };
    auto zp = [c, D](double x) {
        const double u = c + x * x;
        return 2.0 * D * (c - x * x + D * x) / (u * u);
    };
    auto zpp = [c, D](double x) {
        const double u = c + x * x;
        return 2.0 * D * (2.0 * x * x * x - 3.0 * D * x * x - 6.0 * c * x + D * c) / (u * u * u);
    };
    auto value = [=](double x) { return gauss_2f1(a, b, cc, zf(x)); };
    auto slope = [=](double x) {
        const double z = zf(x);
        const double dF = a * b / cc * gauss_2f1(a + 1.0, b + 1.0, cc + 1.0, z);
        return dF * zp(x);
    };
    auto curvature = [=](double x) {
        const double z = zf(x);
        const double dF = a * b / cc * gauss_2f1(a + 1.0, b + 1.0, cc + 1.0, z);
        const double d2F = a * (a + 1.0) * b * (b + 1.0) / (cc * (cc + 1.0)) *
                           gauss_2f1(a + 2.0, b + 2.0, cc + 2.0, z);
        const double zpv = zp(x);
        return d2F * zpv * zpv + dF * zpp(x);
    };
    return {value, slope, curvature};
}

// ---------------------------------------------------------------------------
// inflection solvers

// zeros of J1'': x = +-sqrt(4 alpha gamma_s^2 / (alpha + 2))
inline double j1_inflection(const NoiseParams& p) {
    p.validate();
    return std::sqrt(4.0 * p.alpha * p.gamma_s * p.gamma_s / (p.alpha + 2.0));
}

// inflection of the J4 slice profile (c+x^2)^{-(alpha+2)/4}
inline double j4_profile_inflection(const NoiseParams& p) {
    return std::sqrt(4.0 * p.alpha * p.gamma_s * p.gamma_s / (p.alpha + 4.0));
}

// Property-1 corrected zero of (J1 J2)'' plus one Newton polish on the
// analytic curvature of the product. Returns the positive root.
inline double j1j2_inflection(const NoiseParams& p) {
    p.validate();
    const double x0 = j1_inflection(p);
    const CurveHandle j1 = make_j1_handle(p);
    const CurveHandle j2 = make_j2_handle(p);
    const CurveHandle prod = make_j1j2_handle(p);

    // third derivative of J1 from its closed-form curvature
    const double h3 = 1e-5 * (std::abs(x0) + 1.0);
    const double j1_d3 = (j1.curvature(x0 + h3) - j1.curvature(x0 - h3)) / (2.0 * h3);
    const double denom = j1_d3 * j2.value(x0);
    if (std::abs(denom) < 1e-14)
        throw std::runtime_error("j1j2_inflection: degenerate third-derivative denominator");

    const double numer = 2.0 * j1.slope(x0) * j2.slope(x0) - j1.value(x0) * j2.curvature(x0);
    const double x_star = x0 - numer / denom;

    auto residual = [&](double x) { return std::abs(prod.curvature(x)); };
    double best = x_star;
    // one Newton step on the product curvature
    {
        const double h = 1e-5 * (std::abs(x_star) + 1.0);
        const double d3 = (prod.curvature(x_star + h) - prod.curvature(x_star - h)) / (2.0 * h);
        if (std::abs(d3) > 1e-14) {
            const double polished = x_star - prod.curvature(x_star) / d3;
            if (polished > 0.0 && residual(polished) < residual(best)) best = polished;
        }
    }
    if (residual(best) <= residual(x0)) return best;
    // fall back to a bracketed bisection around x0
    double lo = 0.25 * x0, hi = 4.0 * x0;
    double flo = prod.curvature(lo);
    for (int i = 1; i <= 64; ++i) {
        const double x = lo + (hi - lo) * i / 64.0;
        const double fx = prod.curvature(x);
        if ((flo < 0.0) != (fx < 0.0)) {
            double xa = lo + (hi - lo) * (i - 1) / 64.0, xb = x;
            for (int it = 0; it < 80; ++it) {
                const double m = 0.5 * (xa + xb);
                if ((prod.curvature(m) < 0.0) == (flo < 0.0))
                    xa = m;
                else
                    xb = m;
            }
            return 0.5 * (xa + xb);
        }
        flo = fx;
    }
    return best;
}

namespace detail {

// real roots of c0 + c1 x + c2 x^2 + c3 x^3 (c3 != 0), Cardano
inline std::vector<double> solve_cubic(double c0, double c1, double c2, double c3) {
    const double a = c2 / c3, b = c1 / c3, c = c0 / c3;
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double shift = -a / 3.0;
    std::vector<double> roots;
    const double disc = 0.25 * q * q + p * p * p / 27.0;
    if (disc > 1e-300) {
        const double s = std::sqrt(disc);
        const double u = std::cbrt(-0.5 * q + s);
        const double v = std::cbrt(-0.5 * q - s);
        roots.push_back(u + v + shift);
    } else if (disc < -1e-300) {
        const double r = std::sqrt(-p * p * p / 27.0);
        const double phi = std::acos(std::clamp(-0.5 * q / r, -1.0, 1.0));
        const double m = 2.0 * std::sqrt(-p / 3.0);
        for (int k = 0; k < 3; ++k)
            roots.push_back(m * std::cos((phi + 2.0 * M_PI * k) / 3.0) + shift);
    } else {
        const double u = std::cbrt(-0.5 * q);
        roots.push_back(2.0 * u + shift);
        roots.push_back(-u + shift);
    }
    return roots;
}

// real roots of a quartic via Ferrari's resolvent
inline std::vector<double> solve_quartic(double c0, double c1, double c2, double c3, double c4) {
    const double a = c3 / c4, b = c2 / c4, c = c1 / c4, d = c0 / c4;
    // depressed quartic y^4 + p y^2 + q y + r, x = y - a/4
    const double a2 = a * a;
    const double p = b - 3.0 * a2 / 8.0;
    const double q = c - a * b / 2.0 + a2 * a / 8.0;
    const double r = d - a * c / 4.0 + a2 * b / 16.0 - 3.0 * a2 * a2 / 256.0;
    const double shift = -a / 4.0;
    std::vector<double> roots;
    if (std::abs(q) < 1e-13) {
        // biquadratic
        const double disc = p * p - 4.0 * r;
        if (disc >= 0.0) {
            for (double t : {(-p + std::sqrt(disc)) / 2.0, (-p - std::sqrt(disc)) / 2.0}) {
                if (t >= 0.0) {
                    roots.push_back(std::sqrt(t) + shift);
                    roots.push_back(-std::sqrt(t) + shift);
                }
            }
        }
        return roots;
    }
    // resolvent cubic: m^3 + p m^2 + (p^2/4 - r) m - q^2/8 = 0
    const auto ms = solve_cubic(-q * q / 8.0, p * p / 4.0 - r, p, 1.0);
    double m = 0.0;
    for (double cand : ms) m = std::max(m, cand);
    if (m <= 1e-300) return roots;
    const double s = std::sqrt(2.0 * m);
    // y^2 +- s y + (p/2 + m -+ q/(2s)) = 0
    for (int sign : {+1, -1}) {
        const double B = sign * s;
        const double C = 0.5 * p + m - sign * q / (2.0 * s);
        const double disc = B * B - 4.0 * C;
        if (disc >= 0.0) {
            roots.push_back((-B + std::sqrt(disc)) / 2.0 + shift);
            roots.push_back((-B - std::sqrt(disc)) / 2.0 + shift);
        }
    }
    return roots;
}

}  // namespace detail

// Approximate zeros of J3'': the |z| < 1 branch truncates the series ratio
// to a constant and solves a cubic; the |z| >= 1 branch uses the asymptotic
// ratio and solves a quartic. Roots are kept only inside their branch's
// feasible range and returned sorted (in the unscaled x variable).
inline std::vector<double> j3_inflection(const NoiseParams& p, double ds_norm) {
    p.validate();
    if (!(ds_norm >= 0.0)) throw std::invalid_argument("j3_inflection: ds_norm must be >= 0");
    std::vector<double> out;
    if (ds_norm == 0.0) return out;  // J3 constant: no inflection
    const double D = ds_norm;
    const double s = p.tail_scale() / (D * D);
    const double a = 0.25 * (p.alpha + 2.0);
    const double b = 0.5;
    const double cc = 0.5 * (p.alpha + 2.0);
    auto z_of_u = [s](double u) { return (2.0 * u - 1.0) / (s + u * u); };

    // |z| < 1: cubic from the leading series ratio (a+1)(b+1)/(c+1)
    const double lam = (a + 1.0) * (b + 1.0) / (cc + 1.0);
    const auto cubic = detail::solve_cubic(-s * s * (2.0 * lam + 1.0), 6.0 * s * s - 4.0 * lam * s,
                                           2.0 * s - 2.0 * lam * (1.0 - 2.0 * s),
                                           4.0 * lam + 4.0 * s);
    for (double u : cubic)
        if (std::abs(z_of_u(u)) < 1.0) out.push_back(u * D);

    // |z| >= 1: quartic from the asymptotic ratio -(a+1)/z
    const double beta = 2.0 * (a + 1.0);
    const auto quartic = detail::solve_quartic(
        beta * s * s + s, (2.0 * beta - 8.0) * s, beta * (1.0 - 2.0 * s) - 3.0 + 12.0 * s,
        8.0 - 2.0 * beta, beta - 4.0);
    for (double u : quartic)
        if (std::abs(z_of_u(u)) >= 1.0) out.push_back(u * D);

    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// divisions

struct Division {
    std::vector<double> breakpoints;  // strictly increasing
    int k_main = 0;
    int k_tail = 0;

    double lo() const { return breakpoints.front(); }
    double hi() const { return breakpoints.back(); }
    std::size_t intervals() const { return breakpoints.size() - 1; }
};

enum class DivisionTarget { j1j2, j3, j4_product };

struct PlaConfig {
    int k_main = 0;       // 0: use the target default
    int k_tail = 0;
    double range_mult = 1.0;
    double tail_ratio = 1.5;
};

inline void pla_target_defaults(DivisionTarget t, int& k_main, int& k_tail) {
    // interval totals 45 (S2 target) and 60 (S3 targets)
    if (t == DivisionTarget::j1j2) {
        k_main = 15;
        k_tail = 30;
    } else {
        k_main = 20;
        k_tail = 40;
    }
}

namespace detail {

inline std::vector<CurveHandle> target_handles(DivisionTarget t, const NoiseParams& p,
                                               double ds_norm) {
    switch (t) {
        case DivisionTarget::j1j2:
            return {make_j1j2_handle(p)};
        case DivisionTarget::j3:
            return {make_algebraic_handle(p.tail_scale(), 0.25 * (p.alpha + 2.0)),
                    make_j3_handle(p, ds_norm)};
        case DivisionTarget::j4_product:
            return {make_algebraic_handle(p.tail_scale(), 0.25 * (p.alpha + 2.0))};
    }
    return {};
}

inline std::vector<double> target_anchors(DivisionTarget t, const NoiseParams& p,
                                          double ds_norm) {
    std::vector<double> a;
    switch (t) {
        case DivisionTarget::j1j2: {
            const double x = j1j2_inflection(p);
            a = {-x, x};
            break;
        }
        case DivisionTarget::j3: {
            const double x4 = j4_profile_inflection(p);
            a = {-x4, x4};
            for (double r : j3_inflection(p, ds_norm)) a.push_back(r);
            if (ds_norm > 0.0) a.push_back(ds_norm);  // kernel center of the shifted factor
            break;
        }
        case DivisionTarget::j4_product: {
            const double x4 = j4_profile_inflection(p);
            a = {-x4, x4};
            break;
        }
    }
    std::sort(a.begin(), a.end());
    return a;
}

}  // namespace detail

// Breakpoints covering [-R, R] with R = range_mult * max(6*sqrt(8)*gamma_g,
// ds_norm + 6 gamma_s sqrt(alpha)). Inflection anchors become breakpoints,
// the mainlobe between the outermost anchors is uniform, and the tails grow
// geometrically. Every interval is certified to have definite convexity for
// every target function; failures insert the located inflection, bisecting
// up to depth 6.
inline Division build_division(DivisionTarget target, const NoiseParams& p, double ds_norm,
                               int k_main = 0, int k_tail = 0, double range_mult = 1.0,
                               double tail_ratio = 1.5) {
    p.validate();
    if (k_main <= 0 || k_tail <= 0) {
        int dm, dt;
        pla_target_defaults(target, dm, dt);
        if (k_main <= 0) k_main = dm;
        if (k_tail <= 0) k_tail = dt;
    }
    if (k_main < 1 || k_tail < 1)
        throw std::invalid_argument("build_division: interval counts must be >= 1");
    const double R = range_mult * std::max(6.0 * std::sqrt(8.0) * p.gamma_g,
                                           ds_norm + 6.0 * p.gamma_s * std::sqrt(p.alpha));

    std::vector<double> anchors = detail::target_anchors(target, p, ds_norm);
    anchors.erase(std::remove_if(anchors.begin(), anchors.end(),
                                 [R](double x) { return !(x > -R && x < R); }),
                  anchors.end());
    if (anchors.empty()) anchors = {-0.5 * R, 0.5 * R};
    if (anchors.size() == 1) anchors.push_back(anchors.front() + 1e-3 * R);

    std::vector<double> pts;
    auto push_uniform = [&](double a, double b, int n) {
        if (!(b - a > 1e-9) || n < 1) return;
        for (int i = 0; i <= n; ++i) pts.push_back(a + (b - a) * i / n);
    };
    // Position-geometric tail: |x_k| = |from| r^k with r sized to land on
    // |to| after n steps (capped at tail_ratio). Constant relative interval
    // width is what keeps the local PLA slack uniform on the power-law
    // targets once the range is extended for the rigorous tail majorant.
    auto push_tail = [&](double from, double to, int n) {
        const double sgn = (to > from) ? 1.0 : -1.0;
        const double a1 = std::abs(to);
        const double a0 = std::clamp(std::abs(from), 1e-3 * a1, a1);
        if (n < 1 || !(a1 > a0 * (1.0 + 1e-12)) || (from != 0.0 && to * from < 0.0)) {
            pts.push_back(to);
            return;
        }
        const double r = std::min(tail_ratio, std::pow(a1 / a0, 1.0 / n));
        double x = a0;
        for (int i = 0; i + 1 < n; ++i) {
            x *= r;
            pts.push_back(sgn * x);
        }
        pts.push_back(to);
    };

    // core grid: the region where the targets genuinely curve
    double core_lo = anchors.front(), core_hi = anchors.back();
    if (target == DivisionTarget::j3) {
        const double curve_w = 4.0 * std::sqrt(p.tail_scale());
        core_lo = -curve_w;
        core_hi = curve_w;
    }
    push_uniform(core_lo, core_hi, k_main);
    for (double x : anchors) pts.push_back(x);

    const int per_side = std::max(1, k_tail / 2);
    push_tail(core_hi, R, per_side);
    // The S2 integration kernel exp(-(x+D)^2 / 8 gg^2) sits at -ds_norm. Once
    // it is well separated from the mainlobe, a plain geometric left tail
    // leaves intervals several sigma wide exactly where the Gaussian mass
    // is; spend most of that budget on a uniform block across the window.
    const double kernel_w = 8.0 * p.gamma_g;
    if (target == DivisionTarget::j1j2 && ds_norm > kernel_w + std::abs(core_lo) &&
        per_side >= 5) {
        const double win_hi = -ds_norm + kernel_w;
        const double win_lo = std::max(-R, -ds_norm - kernel_w);
        const int n_uniform = std::max(3, (per_side * 3) / 5);
        const int n_inner = std::max(1, (per_side - n_uniform) / 2);
        const int n_outer = std::max(1, per_side - n_uniform - n_inner);
        push_tail(core_lo, win_hi, n_inner);
        push_uniform(win_lo, win_hi, n_uniform);
        if (win_lo > -R) push_tail(win_lo, -R, n_outer);
    } else {
        push_tail(core_lo, -R, per_side);
    }

    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [R](double a, double b) { return std::abs(a - b) < 1e-12 * R; }),
              pts.end());

    // certification pass: every interval must have definite convexity for
    // every target function; mixed intervals get the located flip inserted
    const auto handles = detail::target_handles(target, p, ds_norm);
    for (int depth = 0;; ++depth) {
        std::vector<double> inserts;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            for (const auto& h : handles) {
                double flip = 0.5 * (pts[i] + pts[i + 1]);
                try {
                    (void)detail::convexity_sign(h, pts[i], pts[i + 1], &flip);
                } catch (const convexity_error&) {
                    inserts.push_back(flip);
                    break;
                }
            }
        }
        if (inserts.empty()) break;
        if (depth >= 6)
            throw convexity_error("build_division: certification failed at maximum depth");
        for (double x : inserts) pts.push_back(x);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end(),
                              [R](double a, double b) { return std::abs(a - b) < 1e-12 * R; }),
                  pts.end());
    }

    Division div;
    div.breakpoints = std::move(pts);
    div.k_main = k_main;
    div.k_tail = k_tail;
    return div;
}

// Debug dump: the breakpoint list followed by the piece table (both sides)
// for a target function.
inline std::string dump_division(const Division& div, const CurveHandle& g) {
    std::string out = "# breakpoints";
    for (double b : div.breakpoints) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), " %.12g", b);
        out += buf;
    }
    out += "\n# lo hi side kind p q\n";
    for (std::size_t i = 0; i + 1 < div.breakpoints.size(); ++i) {
        const double a = div.breakpoints[i], b = div.breakpoints[i + 1];
        for (const LinearPiece piece : {upper_piece(g, a, b), lower_piece(g, a, b)}) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%.12g %.12g %s %s %.12g %.12g\n", a, b,
                          piece.side == PieceSide::upper ? "upper" : "lower",
                          piece.kind == PieceKind::chord ? "chord" : "tangent", piece.p,
                          piece.q);
            out += buf;
        }
    }
    return out;
}

}  // namespace gscr

#endif  // GSCR_PLA_HPP
