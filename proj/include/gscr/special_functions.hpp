#ifndef GSCR_SPECIAL_FUNCTIONS_HPP
#define GSCR_SPECIAL_FUNCTIONS_HPP

// Special functions needed by the bound formulas: Gamma/Beta/erf wrappers,
// the Tricomi confluent hypergeometric function U(a,b,z) for z > 0, and the
// Gauss hypergeometric 2F1 for real arguments z <= 1.

#include <cmath>
#include <stdexcept>
#include <string>

#include "gscr/quadrature.hpp"

namespace gscr {

struct AccuracySpec {
    double rel_tol = 1e-10;
    int max_terms = 500;
    int bisection_depth = 60;

    void validate() const {
        if (!(rel_tol > 0.0 && rel_tol < 1e-3))
            throw std::invalid_argument("AccuracySpec: rel_tol must lie in (0, 1e-3)");
        if (max_terms < 32) throw std::invalid_argument("AccuracySpec: max_terms must be >= 32");
        if (bisection_depth < 1)
            throw std::invalid_argument("AccuracySpec: bisection_depth must be >= 1");
    }
};

class convergence_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline double gamma_fn(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma_fn: requires x > 0");
    return std::tgamma(x);
}

inline double lgamma_fn(double x) {
    if (!(x > 0.0)) throw std::domain_error("lgamma_fn: requires x > 0");
    return std::lgamma(x);
}

inline double beta_fn(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("beta_fn: requires a, b > 0");
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

inline double erf_fn(double x) { return std::erf(x); }
inline double erfc_fn(double x) { return std::erfc(x); }

namespace detail {

inline bool near_integer(double x, double eps) { return std::abs(x - std::round(x)) < eps; }

// Plain hypergeometric power series; valid for |z| < 1, fast for |z| <~ 0.7.
inline double hyp2f1_series(double a, double b, double c, double z, const AccuracySpec& acc) {
    // stop when the geometric tail estimate term/(1-|z|) drops below tolerance
    const double tail_factor = 1.0 / std::max(1e-2, 1.0 - std::abs(z));
    double term = 1.0, sum = 1.0;
    int quiet = 0;
    for (int n = 0; n < acc.max_terms; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        sum += term;
        if (std::abs(term) * tail_factor <= 0.2 * acc.rel_tol * std::abs(sum)) {
            if (++quiet >= 2) return sum;
        } else {
            quiet = 0;
        }
    }
    throw convergence_error("gauss_2f1: series did not converge within max_terms");
}

// Euler integral representation, requires c > b > 0 (or c > a > 0 after the
// a<->b swap). Used as a fallback where the linear transformations degenerate.
inline double hyp2f1_euler_integral(double a, double b, double c, double z,
                                    const AccuracySpec& acc) {
    if (!(c > b && b > 0.0)) {
        if (c > a && a > 0.0) {
            std::swap(a, b);
        } else {
            throw std::domain_error("gauss_2f1: integral representation needs c > b > 0");
        }
    }
    const double pref = 1.0 / beta_fn(b, c - b);
    auto integrand = [&](double t) {
        return std::pow(t, b - 1.0) * std::pow(1.0 - t, c - b - 1.0) * std::pow(1.0 - z * t, -a);
    };
    auto q = integrate_tanh_sinh(integrand, 0.0, 1.0, 0.1 * acc.rel_tol);
    if (!q.converged)
        throw tolerance_error("gauss_2f1: integral representation did not converge", q.error);
    return pref * q.value;
}

}  // namespace detail

// Gauss hypergeometric function for real parameters and z <= 1.
// |z| <= 0.6: direct series. 0.6 < z < 1: 1-z connection (DLMF 15.8.4).
// -2 <= z < -0.6: Pfaff transform w = z/(z-1). z < -2: 1/z connection
// (DLMF 15.8.2), with the Euler-integral fallback where a-b or c-a-b is
// too close to an integer for the connection formulas.
inline double gauss_2f1(double a, double b, double c, double z, const AccuracySpec& acc = {}) {
    if (c <= 0.0 && detail::near_integer(c, 1e-12))
        throw std::domain_error("gauss_2f1: c must not be a nonpositive integer");
    if (z > 1.0) throw std::domain_error("gauss_2f1: requires z <= 1");
    if (z == 0.0) return 1.0;
    if (a == 0.0 || b == 0.0) return 1.0;
    if (z == 1.0) {
        if (c - a - b <= 0.0) throw std::domain_error("gauss_2f1: divergent at z = 1");
        return std::exp(std::lgamma(c) + std::lgamma(c - a - b) - std::lgamma(c - a) -
                        std::lgamma(c - b));
    }
    if (std::abs(z) <= 0.6) return detail::hyp2f1_series(a, b, c, z, acc);
    if (z > 0.6) {
        const double cab = c - a - b;
        if (detail::near_integer(cab, 1e-3)) return detail::hyp2f1_euler_integral(a, b, c, z, acc);
        // DLMF 15.8.4; tgamma keeps signs at negative non-integer arguments.
        const double w = 1.0 - z;
        const double t1 = std::tgamma(c) * std::tgamma(cab) /
                          (std::tgamma(c - a) * std::tgamma(c - b)) *
                          detail::hyp2f1_series(a, b, a + b - c + 1.0, w, acc);
        const double t2 = std::tgamma(c) * std::tgamma(-cab) / (std::tgamma(a) * std::tgamma(b)) *
                          std::pow(w, cab) *
                          detail::hyp2f1_series(c - a, c - b, cab + 1.0, w, acc);
        return t1 + t2;
    }
    if (z >= -2.0) {
        // Pfaff: F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1))
        const double w = z / (z - 1.0);
        return std::pow(1.0 - z, -a) * detail::hyp2f1_series(a, c - b, c, w, acc);
    }
    // z < -2: 1/z connection, DLMF 15.8.2. tgamma keeps the sign of the
    // Gamma factors at negative non-integer arguments; parameter magnitudes
    // here are small, so no overflow concern.
    if (detail::near_integer(a - b, 0.02)) return detail::hyp2f1_euler_integral(a, b, c, z, acc);
    const double w = 1.0 / z;
    const double p1 = std::tgamma(c) * std::tgamma(b - a) / (std::tgamma(b) * std::tgamma(c - a));
    const double p2 = std::tgamma(c) * std::tgamma(a - b) / (std::tgamma(a) * std::tgamma(c - b));
    const double f1 = detail::hyp2f1_series(a, a - c + 1.0, a - b + 1.0, w, acc);
    const double f2 = detail::hyp2f1_series(b, b - c + 1.0, b - a + 1.0, w, acc);
    return p1 * std::pow(-z, -a) * f1 + p2 * std::pow(-z, -b) * f2;
}

namespace detail {

// U(a,b,z) by the Laplace integral with t = u^2, removing the t^{a-1}
// endpoint singularity for a >= 1/2:
//   U = (2/Gamma(a)) * int_0^inf u^{2a-1} e^{-z u^2} (1+u^2)^{b-a-1} du
inline double tricomi_u_integral(double a, double b, double z, const AccuracySpec& acc) {
    const double tol = 0.1 * acc.rel_tol;
    const double umax = std::sqrt(46.0 / z) + 4.0 / std::sqrt(std::max(z, 1e-8));
    auto integrand = [&](double u) {
        const double u2 = u * u;
        return std::pow(u, 2.0 * a - 1.0) * std::exp(-z * u2) *
               std::pow(1.0 + u2, b - a - 1.0);
    };
    double total = 0.0, errsum = 0.0;
    if (a < 0.5) {
        auto head = integrate_tanh_sinh(integrand, 0.0, 1.0, tol);
        auto tail = integrate_gk(integrand, 1.0, umax, 0.0, tol);
        if (!head.converged || !tail.converged)
            throw tolerance_error("tricomi_u: integral did not converge",
                                  head.error + tail.error);
        total = head.value + tail.value;
        errsum = head.error + tail.error;
    } else {
        auto q = integrate_gk(integrand, 0.0, umax, 0.0, tol);
        if (!q.converged) throw tolerance_error("tricomi_u: integral did not converge", q.error);
        total = q.value;
        errsum = q.error;
    }
    (void)errsum;
    return 2.0 / std::tgamma(a) * total;
}

// Poincare asymptotic series U(a,b,z) ~ z^{-a} sum_k (a)_k (a-b+1)_k / (k! (-z)^k).
// The optimal truncation error is far below 1e-14 for z >= 50 and the small
// parameters used in the bounds.
inline double tricomi_u_asymptotic(double a, double b, double z, const AccuracySpec& acc) {
    double term = 1.0, sum = 1.0;
    double prev = HUGE_VAL;
    for (int k = 0; k < acc.max_terms; ++k) {
        term *= (a + k) * (a - b + 1.0 + k) / ((k + 1.0) * (-z));
        if (std::abs(term) > prev) break;  // divergent tail reached
        sum += term;
        prev = std::abs(term);
        if (std::abs(term) <= acc.rel_tol * std::abs(sum)) break;
    }
    return std::pow(z, -a) * sum;
}

inline constexpr double kTricomiAsymptoticCrossover = 50.0;

}  // namespace detail

// Tricomi (confluent hypergeometric second kind) U(a, b, z) for z > 0, a > 0.
// Integral representation below z = 50, asymptotic series above.
inline double tricomi_u(double a, double b, double z, const AccuracySpec& acc = {}) {
    if (!(z > 0.0)) throw std::domain_error("tricomi_u: requires z > 0");
    if (!(a > 0.0)) throw std::domain_error("tricomi_u: requires a > 0");
    if (z >= detail::kTricomiAsymptoticCrossover) return detail::tricomi_u_asymptotic(a, b, z, acc);
    return detail::tricomi_u_integral(a, b, z, acc);
}

// dU/dz = -a U(a+1, b+1, z)   (DLMF 13.3.22)
inline double tricomi_u_dz(double a, double b, double z, const AccuracySpec& acc = {}) {
    return -a * tricomi_u(a + 1.0, b + 1.0, z, acc);
}

// d2U/dz2 = a (a+1) U(a+2, b+2, z)
inline double tricomi_u_d2z(double a, double b, double z, const AccuracySpec& acc = {}) {
    return a * (a + 1.0) * tricomi_u(a + 2.0, b + 2.0, z, acc);
}

}  // namespace gscr

#endif  // GSCR_SPECIAL_FUNCTIONS_HPP
