#ifndef GSCR_NOISE_HPP
#define GSCR_NOISE_HPP

// The GS mixed-noise model: parameter set, 1-D and bivariate PDFs, the
// passband-to-baseband parameter transform, GSNR accounting and a
// Monte-Carlo sampler for cross-checks.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gscr/special_functions.hpp"
#include "gscr/vec2.hpp"

namespace gscr {

struct NoiseParams {
    double alpha = 1.2;    // characteristic exponent, (0, 2)
    double gamma_g = 1.0;  // Gaussian scale
    double gamma_s = 1.0;  // impulsive scale
    double rho = 0.2;      // Gaussian weight, [0, 1]

    void validate() const {
        if (!(alpha > 0.0 && alpha < 2.0))
            throw std::invalid_argument("NoiseParams: alpha must lie in (0, 2)");
        if (!(gamma_g > 0.0) || !(gamma_s > 0.0))
            throw std::invalid_argument("NoiseParams: scale parameters must be positive");
        if (!(rho >= 0.0 && rho <= 1.0))
            throw std::invalid_argument("NoiseParams: rho must lie in [0, 1]");
    }

    // 2*alpha*gamma_s^2, the tail scale constant appearing everywhere
    double tail_scale() const { return 2.0 * alpha * gamma_s * gamma_s; }
};

// Bivariate tail exponent selection. Carrying the one-dimensional Student
// exponent (alpha+1)/2 into the bivariate density makes the plane integral
// diverge for alpha <= 1; the (alpha+2)/2 exponent is the one the k4
// normalizer implies. Normalizable is the default throughout; the
// undernormalized variant exists for comparison studies only.
enum class BivariateTail { normalizable, undernormalized };

struct NormConstants {
    double k1 = 0.0;  // 1-D Gaussian term normalizer
    double k2 = 0.0;  // 1-D tail term normalizer
    double k3 = 0.0;  // 2-D Gaussian term normalizer
    double k4 = 0.0;  // 2-D tail term normalizer
};

inline NormConstants norm_constants(const NoiseParams& p,
                                    BivariateTail tail = BivariateTail::normalizable) {
    p.validate();
    NormConstants k;
    const double sqrt_pi = std::sqrt(M_PI);
    k.k1 = 1.0 / (2.0 * sqrt_pi * p.gamma_g);
    k.k2 = gamma_fn(0.5 * (p.alpha + 1.0)) /
           (gamma_fn(0.5 * p.alpha) * std::sqrt(2.0 * p.alpha * M_PI) * p.gamma_s);
    k.k3 = 1.0 / (4.0 * M_PI * p.gamma_g * p.gamma_g);
    if (tail == BivariateTail::normalizable) {
        // Student-type bivariate normalizer for exponent (alpha+2)/2;
        // reduces to 1/(4 pi gamma_s^2)
        k.k4 = gamma_fn(0.5 * (p.alpha + 2.0)) /
               (gamma_fn(0.5 * p.alpha) * p.alpha * M_PI * 2.0 * p.gamma_s * p.gamma_s);
    } else {
        k.k4 = gamma_fn(0.5 * (p.alpha + 2.0)) /
               (std::sqrt(2.0) * gamma_fn(0.5 * p.alpha) * p.alpha * M_PI * p.gamma_s);
    }
    return k;
}

inline double pdf_1d(double n, const NoiseParams& p) {
    const NormConstants k = norm_constants(p);
    const double g = p.rho * k.k1 * std::exp(-n * n / (4.0 * p.gamma_g * p.gamma_g));
    const double t =
        (1.0 - p.rho) * k.k2 * std::pow(1.0 + n * n / p.tail_scale(), -0.5 * (p.alpha + 1.0));
    return g + t;
}

inline double pdf_2d(Vec2 n, const NoiseParams& p,
                     BivariateTail tail = BivariateTail::normalizable) {
    const NormConstants k = norm_constants(p, tail);
    const double r2 = n.norm2();
    const double expo = (tail == BivariateTail::normalizable) ? 0.5 * (p.alpha + 2.0)
                                                              : 0.5 * (p.alpha + 1.0);
    const double g = p.rho * k.k3 * std::exp(-r2 / (4.0 * p.gamma_g * p.gamma_g));
    const double t = (1.0 - p.rho) * k.k4 * std::pow(1.0 + r2 / p.tail_scale(), -expo);
    return g + t;
}

// GSNR(dB) = 10 log10( Ps / (2 (gamma_g^2 + gamma_s^2)) )
inline double gsnr_db(double signal_power, const NoiseParams& p) {
    if (!(signal_power > 0.0)) throw std::invalid_argument("gsnr_db: signal power must be > 0");
    return 10.0 *
           std::log10(signal_power / (2.0 * (p.gamma_g * p.gamma_g + p.gamma_s * p.gamma_s)));
}

inline double power_for_gsnr(double gsnr, const NoiseParams& p) {
    return 2.0 * (p.gamma_g * p.gamma_g + p.gamma_s * p.gamma_s) * std::pow(10.0, gsnr / 10.0);
}

struct FilterSpec {
    std::vector<double> coeffs;  // low-pass taps h(1..M_h)
    long f_c = 0;                // carrier frequency, Hz, positive integer
    long f_s = 0;                // sampling rate, Hz, positive integer
    double passband_B = 0.0;     // noise bandwidth, Hz

    void validate() const {
        if (coeffs.empty()) throw std::invalid_argument("FilterSpec: empty coefficient list");
        if (f_c <= 0 || f_s <= 0)
            throw std::invalid_argument("FilterSpec: frequencies must be positive integers");
        if (!(f_c < f_s / 2.0)) throw std::invalid_argument("FilterSpec: requires f_c < f_s/2");
        if (!(passband_B > 0.0 && passband_B <= f_s / 2.0))
            throw std::invalid_argument("FilterSpec: passband_B must lie in (0, f_s/2]");
    }
};

// p(M_h) = (1/lcm) * sum_m |h(m)|^alpha * sum_{m=1}^{lcm} |cos(2 pi f_c m / f_s)|^alpha.
// The cosine sum is periodic with period f_s/gcd(f_c,f_s), which divides the
// lcm, so it is evaluated over one period and rescaled exactly.
inline double impulsive_baseband_scale(const FilterSpec& filter, double alpha) {
    filter.validate();
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw std::invalid_argument("impulsive_baseband_scale: alpha must lie in (0, 2]");
    double tap_sum = 0.0;
    for (double h : filter.coeffs) tap_sum += std::pow(std::abs(h), alpha);
    const long g = std::gcd(filter.f_s, filter.f_c);
    const long period = filter.f_s / g;
    double cos_sum = 0.0;
    for (long m = 1; m <= period; ++m) {
        const double c = std::cos(2.0 * M_PI * static_cast<double>(filter.f_c) *
                                  static_cast<double>(m) / static_cast<double>(filter.f_s));
        cos_sum += std::pow(std::abs(c), alpha);
    }
    return tap_sum * cos_sum / static_cast<double>(period);
}

// Baseband parameters from the passband model. The Gaussian scale follows
// the characteristic-function rule gamma_g'^2 = gamma_g^2 * (1/2) sum h^2
// (Parseval on the actual taps; for an ideal unit-gain low-pass filter this
// is proportional to its noise bandwidth); the impulsive scale picks up
// p(M_h)^(1/alpha); alpha and rho carry over.
inline NoiseParams passband_to_baseband(const NoiseParams& p, const FilterSpec& filter) {
    p.validate();
    filter.validate();
    double h2 = 0.0;
    for (double h : filter.coeffs) h2 += h * h;
    NoiseParams out = p;
    out.gamma_g = p.gamma_g * std::sqrt(0.5 * h2);
    out.gamma_s = p.gamma_s * std::pow(impulsive_baseband_scale(filter, p.alpha), 1.0 / p.alpha);
    return out;
}

namespace detail {

// splitmix64; deterministic across platforms
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() {  // (0, 1)
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }
};

}  // namespace detail

// Sampler for the bivariate GS model (normalizable variant): with
// probability rho a 2-D Gaussian with per-component variance 2 gamma_g^2,
// otherwise the heavy-tail term via its closed-form radial inverse CDF and
// a uniform angle. One instance per worker; not safe for concurrent use.
class NoiseSampler {
  public:
    NoiseSampler(const NoiseParams& params, std::uint64_t seed)
        : params_(params), rng_(seed) {
        params_.validate();
    }

    Vec2 draw() {
        const double u = rng_.uniform();
        if (u < params_.rho) {
            ++gaussian_draws_;
            return draw_gaussian();
        }
        ++tail_draws_;
        return draw_tail();
    }

    std::vector<Vec2> draw(std::size_t count) {
        if (count < 1) throw std::invalid_argument("NoiseSampler: count must be >= 1");
        std::vector<Vec2> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) out.push_back(draw());
        return out;
    }

    std::uint64_t gaussian_draw_count() const { return gaussian_draws_; }
    std::uint64_t tail_draw_count() const { return tail_draws_; }

    // radial inverse CDF of the heavy-tail term
    double tail_radius_quantile(double u) const {
        const double c = params_.tail_scale();
        return std::sqrt(c * (std::pow(1.0 - u, -2.0 / params_.alpha) - 1.0));
    }

  private:
    Vec2 draw_gaussian() {
        // Box-Muller; per-component variance 2 gamma_g^2
        const double u1 = rng_.uniform();
        const double u2 = rng_.uniform();
        const double sigma = std::sqrt(2.0) * params_.gamma_g;
        const double r = sigma * std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
    }

    Vec2 draw_tail() {
        const double r = tail_radius_quantile(rng_.uniform());
        const double phi = 2.0 * M_PI * rng_.uniform();
        return {r * std::cos(phi), r * std::sin(phi)};
    }

    NoiseParams params_;
    detail::SplitMix64 rng_;
    std::uint64_t gaussian_draws_ = 0;
    std::uint64_t tail_draws_ = 0;
};

// convenience wrapper: a fresh sampler drained for count draws
inline std::vector<Vec2> sample_2d(const NoiseParams& params, std::uint64_t seed,
                                   std::size_t count) {
    NoiseSampler sampler(params, seed);
    return sampler.draw(count);
}

// Radial CDF of the full bivariate mixture (normalizable variant); used by
// the sampler verification and by tail-mass accounting.
inline double radial_cdf(double r, const NoiseParams& p) {
    if (r <= 0.0) return 0.0;
    const double g = 1.0 - std::exp(-r * r / (4.0 * p.gamma_g * p.gamma_g));
    const double t = 1.0 - std::pow(1.0 + r * r / p.tail_scale(), -0.5 * p.alpha);
    return p.rho * g + (1.0 - p.rho) * t;
}

}  // namespace gscr

#endif  // GSCR_NOISE_HPP
