#ifndef GSCR_SHAPING_HPP
#define GSCR_SHAPING_HPP

// Joint probabilistic and geometric constellation shaping against the
// cutoff-rate surrogate: closed-form probability updates with simplex
// projection, projected gradient descent on the point positions with a
// Lipschitz-derived step size, and per-iteration convergence auditing.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gscr/bounds.hpp"
#include "gscr/noise.hpp"
#include "gscr/vec2.hpp"

namespace gscr {

struct Constellation {
    std::vector<Vec2> points;
    std::vector<double> probs;

    std::size_t order() const { return points.size(); }

    double avg_power() const {
        std::vector<double> terms(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) terms[i] = probs[i] * points[i].norm2();
        std::sort(terms.begin(), terms.end());
        double s = 0.0;
        for (double t : terms) s += t;
        return s;
    }

    void validate(double power_budget = HUGE_VAL) const {
        if (points.empty() || points.size() != probs.size())
            throw std::invalid_argument("Constellation: points/probs size mismatch");
        double sum = 0.0;
        for (double q : probs) {
            if (q < -1e-15 || q > 1.0 + 1e-12)
                throw std::invalid_argument("Constellation: probability out of [0, 1]");
            sum += q;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("Constellation: probabilities must sum to 1");
        if (avg_power() > power_budget + 1e-9)
            throw std::invalid_argument("Constellation: power budget exceeded");
    }
};

// Square QAM layout scaled so the uniform-probability power meets the budget
// with equality. order must be a perfect square.
inline Constellation make_square_qam(std::size_t order, double power_budget) {
    const auto side = static_cast<std::size_t>(std::lround(std::sqrt(double(order))));
    if (side * side != order)
        throw std::invalid_argument("make_square_qam: order must be a perfect square");
    Constellation c;
    c.points.reserve(order);
    double raw_power = 0.0;
    for (std::size_t iy = 0; iy < side; ++iy) {
        for (std::size_t ix = 0; ix < side; ++ix) {
            const double x = 2.0 * double(ix) - double(side - 1);
            const double y = 2.0 * double(iy) - double(side - 1);
            c.points.push_back({x, y});
            raw_power += (x * x + y * y) / double(order);
        }
    }
    const double scale = std::sqrt(power_budget / raw_power);
    for (auto& s : c.points) s = scale * s;
    c.probs.assign(order, 1.0 / double(order));
    return c;
}

inline Constellation make_qpsk(double power_budget) { return make_square_qam(4, power_budget); }

struct ShapingConfig {
    double power_budget = 4.0;  // P0
    double mu = 0.0;            // 0: derive from the Lipschitz bound
    int max_iterations = 500;
    double eps_stop = 1e-4;
    double eps_w = 1e-3;  // Jensen weight epsilon used by the bound engine
    PlaConfig pla_s2{};
    PlaConfig pla_s3{};
    int surrogate_grid = 128;
    bool update_probs = true;   // frozen for the geometry-only baseline
    bool update_points = true;  // frozen for the probability-only baseline
    std::uint64_t seed = 1;

    void validate() const {
        if (!(power_budget > 0.0)) throw std::invalid_argument("ShapingConfig: P0 must be > 0");
        if (max_iterations < 1) throw std::invalid_argument("ShapingConfig: I_max must be >= 1");
        if (!(eps_stop > 0.0)) throw std::invalid_argument("ShapingConfig: eps_stop must be > 0");
    }
};

struct TraceRow {
    int iteration = 0;
    double objective = 0.0;      // sum p^2 + sum_{k<l} 2 p_k p_l z_tilde
    double cr_lower_bits = 0.0;  // -log2(objective)
    double step = 0.0;           // e = max_j max(|dp_j|, ||ds_j||)
    double power_slack = 0.0;
    double simplex_err = 0.0;  // max(|sum p - 1|, -min p)
    int active_points = 0;     // probs above 1e-3
    double pg_residual = 0.0;
};

struct ShapingTrace {
    std::vector<TraceRow> rows;
    bool converged = false;
    int iterations = 0;
};

namespace detail {

inline double sorted_sum(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end());
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
}

}  // namespace detail

// Surrogate matrix: entries z_tilde(||s_k - s_l||), unit diagonal. Entries
// at small separations exceed one (the raw majorant), which is what drives
// probability mass away from close pairs.
inline std::vector<std::vector<double>> z_tilde_matrix(const Constellation& c,
                                                       const SurrogateCoeffs& sc) {
    const std::size_t m = c.order();
    std::vector<std::vector<double>> zt(m, std::vector<double>(m, 1.0));
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t l = k + 1; l < m; ++l) {
            const double d = (c.points[k] - c.points[l]).norm();
            if (d > sc.ds_max * (1.0 + 1e-9))
                throw std::out_of_range("z_tilde_matrix: separation outside surrogate range");
            const double v = std::max(sc.value(d), 1e-300);
            zt[k][l] = zt[l][k] = v;
        }
    }
    return zt;
}

// inner objective sum p^2 + sum_{k != l} p_k p_l zt(k,l) = p' Zt p
inline double inner_objective(const std::vector<std::vector<double>>& zt,
                              const std::vector<double>& p) {
    std::vector<double> terms;
    terms.reserve(p.size() * p.size());
    for (std::size_t k = 0; k < p.size(); ++k)
        for (std::size_t l = 0; l < p.size(); ++l) terms.push_back(p[k] * p[l] * zt[k][l]);
    return detail::sorted_sum(terms);
}

// Euclidean projection onto the probability simplex (sorted-threshold rule).
inline std::vector<double> project_simplex(std::vector<double> v) {
    const std::size_t m = v.size();
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cumsum = 0.0, tau = 0.0;
    std::size_t support = 0;
    for (std::size_t i = 0; i < m; ++i) {
        cumsum += u[i];
        const double t = (cumsum - 1.0) / double(i + 1);
        if (u[i] - t > 0.0) {
            support = i + 1;
            tau = t;
        }
    }
    if (support == 0) {  // all mass collapses to the largest coordinate
        tau = (cumsum - 1.0) / double(m);
    }
    for (auto& x : v) x = std::max(0.0, x - tau);
    return v;
}

namespace detail {

// Primal active-set solve of min p' Q p over the simplex; used as the
// descent fallback when the closed-form stationary update fails to descend.
inline std::vector<double> simplex_qp(const std::vector<std::vector<double>>& Q,
                                      std::vector<double> p) {
    const std::size_t m = p.size();
    std::vector<bool> active(m, false);
    for (std::size_t j = 0; j < m; ++j) active[j] = (p[j] <= 0.0);

    auto solve_free = [&](const std::vector<bool>& act, std::vector<double>& out) -> bool {
        // stationary point on the affine set {p_F : 1'p_F = 1, p_A = 0}:
        // solve Q_FF x = 1, normalize x to unit sum
        std::vector<std::size_t> free;
        for (std::size_t j = 0; j < m; ++j)
            if (!act[j]) free.push_back(j);
        const std::size_t n = free.size();
        if (n == 0) return false;
        std::vector<std::vector<double>> A(n, std::vector<double>(n + 1, 0.0));
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t cidx = 0; cidx < n; ++cidx) A[r][cidx] = Q[free[r]][free[cidx]];
            A[r][n] = 1.0;
        }
        for (std::size_t col = 0; col < n; ++col) {  // partial pivoting
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < n; ++r)
                if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
            if (std::abs(A[piv][col]) < 1e-14) return false;
            std::swap(A[piv], A[col]);
            for (std::size_t r = col + 1; r < n; ++r) {
                const double f = A[r][col] / A[col][col];
                for (std::size_t cidx = col; cidx <= n; ++cidx) A[r][cidx] -= f * A[col][cidx];
            }
        }
        std::vector<double> x(n);
        for (std::size_t r = n; r-- > 0;) {
            double acc = A[r][n];
            for (std::size_t cidx = r + 1; cidx < n; ++cidx) acc -= A[r][cidx] * x[cidx];
            x[r] = acc / A[r][r];
        }
        double xsum = 0.0;
        for (double v : x) xsum += v;
        if (std::abs(xsum) < 1e-14) return false;
        out.assign(m, 0.0);
        for (std::size_t i = 0; i < n; ++i) out[free[i]] = x[i] / xsum;
        return true;
    };

    for (std::size_t pass = 0; pass < 4 * m + 8; ++pass) {
        std::vector<double> cand;
        if (!solve_free(active, cand)) break;
        double worst = 0.0;
        std::size_t worst_j = m;
        for (std::size_t j = 0; j < m; ++j) {
            if (!active[j] && cand[j] < worst) {
                worst = cand[j];
                worst_j = j;
            }
        }
        if (worst_j == m) {
            // candidate feasible: check KKT multipliers of the active set
            p = cand;
            double lambda = 0.0;
            bool have_lambda = false;
            for (std::size_t j = 0; j < m && !have_lambda; ++j) {
                if (!active[j]) {
                    double g = 0.0;
                    for (std::size_t k = 0; k < m; ++k) g += 2.0 * Q[j][k] * p[k];
                    lambda = -g;
                    have_lambda = true;
                }
            }
            std::size_t release = m;
            double most_negative = -1e-12;
            for (std::size_t j = 0; j < m; ++j) {
                if (!active[j]) continue;
                double g = 0.0;
                for (std::size_t k = 0; k < m; ++k) g += 2.0 * Q[j][k] * p[k];
                if (g + lambda < most_negative) {
                    most_negative = g + lambda;
                    release = j;
                }
            }
            if (release == m) return p;
            active[release] = false;
            continue;
        }
        // step toward the candidate up to the first coordinate hitting zero
        double theta = 1.0;
        std::size_t blocker = worst_j;
        for (std::size_t j = 0; j < m; ++j) {
            if (active[j]) continue;
            const double delta = cand[j] - p[j];
            if (delta < -1e-16) {
                const double t = -p[j] / delta;
                if (t < theta) {
                    theta = t;
                    blocker = j;
                }
            }
        }
        for (std::size_t j = 0; j < m; ++j)
            if (!active[j]) p[j] = std::max(0.0, p[j] + theta * (cand[j] - p[j]));
        active[blocker] = true;
        p[blocker] = 0.0;
    }
    return p;
}

// Short multistart around the active-set solve (previous iterate, uniform
// law, each vertex): the surrogate matrices can sit close to degeneracy,
// where a single descent lands on a weaker KKT point.
inline std::vector<double> simplex_qp_multistart(const std::vector<std::vector<double>>& Q,
                                                 const std::vector<double>& p0) {
    const std::size_t m = p0.size();
    std::vector<double> best = simplex_qp(Q, p0);
    double best_obj = inner_objective(Q, best);
    auto consider = [&](std::vector<double> start) {
        auto cand = simplex_qp(Q, std::move(start));
        const double obj = inner_objective(Q, cand);
        if (obj < best_obj) {
            best_obj = obj;
            best = std::move(cand);
        }
    };
    consider(std::vector<double>(m, 1.0 / double(m)));
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> vertex(m, 0.0);
        vertex[j] = 1.0;
        consider(std::move(vertex));
    }
    return best;
}

}  // namespace detail

// Euclidean projection onto {p on the simplex : w'p <= cap}. The halfspace
// multiplier is found by bisection; w'p(mu) is nonincreasing in mu.
inline std::vector<double> project_simplex_power_capped(const std::vector<double>& v,
                                                        const std::vector<double>& w,
                                                        double cap) {
    auto capped = [&](double mu) {
        std::vector<double> shifted(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) shifted[i] = v[i] - mu * w[i];
        return project_simplex(std::move(shifted));
    };
    auto load = [&](const std::vector<double>& p) {
        std::vector<double> terms(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) terms[i] = p[i] * w[i];
        return detail::sorted_sum(terms);
    };
    std::vector<double> p0 = capped(0.0);
    if (load(p0) <= cap + 1e-12) return p0;
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 90 && load(capped(hi)) > cap; ++i) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (load(capped(mid)) > cap ? lo : hi) = mid;
    }
    return capped(hi);
}

// Closed-form stationary update of the probability subproblem followed by
// simplex projection. The update may fail to descend in corner cases (it is
// a stationarity expression rather than a line search); an exact active-set
// QP solve backs it up, and the previous iterate is kept when even that
// fails to improve, so the audited objective never increases.
namespace detail {

template <class Projector>
std::vector<double> probs_update(const std::vector<std::vector<double>>& zt,
                                 const std::vector<double>& probs_prev, Projector&& project) {
    const std::size_t m = probs_prev.size();
    std::vector<double> sigma(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> terms;
        terms.reserve(m);
        for (std::size_t k = 0; k < m; ++k)
            if (k != j) terms.push_back(probs_prev[k] * zt[j][k]);
        sigma[j] = detail::sorted_sum(terms);
    }
    std::vector<double> sig_terms = sigma;
    const double sigma_sum = detail::sorted_sum(sig_terms);
    std::vector<double> cand(m);
    for (std::size_t j = 0; j < m; ++j) cand[j] = (1.0 + sigma_sum) / double(m) - sigma[j];
    cand = project(std::move(cand));

    const double before = inner_objective(zt, probs_prev);
    const double after = inner_objective(zt, cand);
    if (after <= before + 1e-13) return cand;

    std::vector<double> qp = project(simplex_qp_multistart(zt, probs_prev));
    const double after_qp = inner_objective(zt, qp);
    if (after_qp <= std::min(before, after) + 1e-13) return qp;
    return (after <= before) ? cand : probs_prev;
}

}  // namespace detail

inline std::vector<double> optimal_probs(const std::vector<std::vector<double>>& zt,
                                         const std::vector<double>& probs_prev) {
    return detail::probs_update(zt, probs_prev,
                                [](std::vector<double> v) { return project_simplex(std::move(v)); });
}

// Analytic gradient of the surrogate pair sum with respect to each point:
//   grad_j = sum_{k != j} p_j p_k [ gauss_amp (-2/gauss_scale) e^{-d^2/gs} D
//                                   + rho1 D / ||D|| ],  D = s_j - s_k.
// The subgradient 0 is chosen for the rho1 term at coincident points.
inline std::vector<Vec2> grad_points(const Constellation& c, const SurrogateCoeffs& sc) {
    const std::size_t m = c.order();
    std::vector<Vec2> out(m);
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> tx, ty;
        tx.reserve(m);
        ty.reserve(m);
        for (std::size_t k = 0; k < m; ++k) {
            if (k == j) continue;
            const Vec2 d = c.points[j] - c.points[k];
            const double dn = d.norm();
            const double w = c.probs[j] * c.probs[k];
            Vec2 g{0.0, 0.0};
            const double gauss = sc.gauss_amp * (-2.0 / sc.gauss_scale) *
                                 std::exp(-dn * dn / sc.gauss_scale);
            g += gauss * d;
            if (dn > 0.0) g += (sc.rho1 / dn) * d;
            tx.push_back(w * g.x);
            ty.push_back(w * g.y);
        }
        out[j] = {detail::sorted_sum(tx), detail::sorted_sum(ty)};
    }
    return out;
}

// Projection of a candidate point onto the residual power ball: identity
// when feasible, otherwise scaled to the boundary (projection onto a convex
// set is the identity inside it, so the scaling only engages on violation).
inline Vec2 project_power(Vec2 candidate, std::size_t j, const Constellation& c,
                          double power_budget) {
    std::vector<double> terms;
    terms.reserve(c.order());
    for (std::size_t k = 0; k < c.order(); ++k)
        if (k != j) terms.push_back(c.probs[k] * c.points[k].norm2());
    const double residual = power_budget - detail::sorted_sum(terms);
    const double scale_ref = std::max(1.0, power_budget);
    if (residual < -1e-9 * scale_ref)
        throw std::runtime_error("project_power: negative residual power (infeasible state)");
    const double pj = c.probs[j];
    if (pj <= 0.0) return candidate;  // zero-probability point is unconstrained
    const double used = pj * candidate.norm2();
    // the slack must sit above the roundoff of the power sums, or points
    // with vanishing probability get projected onto noise-driven radii
    if (used <= residual + 1e-12 * scale_ref) return candidate;
    const double cn = candidate.norm();
    if (cn == 0.0) return candidate;
    return candidate * (std::sqrt(std::max(0.0, residual) / pj) / cn);
}

// max_j || (s_j - Proj(s_j - mu grad_j)) / mu || with mu = 1/L
inline double stationarity_residual(const Constellation& c, const SurrogateCoeffs& sc,
                                    double power_budget, double mu = 0.0) {
    if (mu <= 0.0) mu = 1.0 / lipschitz_bound(sc, c.probs);
    const auto grads = grad_points(c, sc);
    double worst = 0.0;
    for (std::size_t j = 0; j < c.order(); ++j) {
        const Vec2 cand = c.points[j] - mu * grads[j];
        const Vec2 proj = project_power(cand, j, c, power_budget);
        const Vec2 delta = c.points[j] - proj;
        worst = std::max(worst, delta.norm() / mu);
    }
    return worst;
}

// One full shaping run: power-aware probability update, then a projected
// gradient sweep over the points, alternating to convergence. Inputs are
// canonically relabeled on entry (and un-relabeled on exit) so relabeled
// inputs give bitwise-relabeled outputs, and a deterministic step backtrack
// keeps the audited objective nonincreasing.
inline std::pair<Constellation, ShapingTrace> shape(const Constellation& initial,
                                                    const NoiseParams& params,
                                                    const ShapingConfig& config) {
    config.validate();
    initial.validate(config.power_budget + 1e-9);
    params.validate();
    const std::size_t m = initial.order();

    BoundSet bounds(params, config.pla_s2, config.pla_s3, config.eps_w);
    const double ds_max = 2.0 * std::sqrt(config.power_budget * double(m));
    const SurrogateCoeffs sc = build_surrogate(bounds, ds_max, config.surrogate_grid);

    // canonical relabeling: with a label-free internal order (and sorted
    // accumulations throughout), permuting the input permutes the output
    // bit-identically
    std::vector<std::size_t> relabel(m);
    std::iota(relabel.begin(), relabel.end(), std::size_t{0});
    std::sort(relabel.begin(), relabel.end(), [&](std::size_t a, std::size_t b) {
        if (initial.probs[a] != initial.probs[b]) return initial.probs[a] < initial.probs[b];
        const double na = initial.points[a].norm2(), nb = initial.points[b].norm2();
        if (na != nb) return na < nb;
        if (initial.points[a].x != initial.points[b].x)
            return initial.points[a].x < initial.points[b].x;
        return initial.points[a].y < initial.points[b].y;
    });

    Constellation cur;
    cur.points.resize(m);
    cur.probs.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        cur.points[i] = initial.points[relabel[i]];
        cur.probs[i] = initial.probs[relabel[i]];
    }

    ShapingTrace trace;
    trace.rows.reserve(config.max_iterations);

    auto zt = z_tilde_matrix(cur, sc);
    double objective = inner_objective(zt, cur.probs);
    double step_scale = 4.0;  // descent-audited expansion over 1/L-bar

    for (int t = 0; t < config.max_iterations; ++t) {
        const Constellation prev = cur;
        const double prev_objective = objective;

        if (config.update_probs) {
            // A simplex-only probability update can move mass outward and
            // leave the iterate outside the power ball, which the point
            // projection cannot repair (negative residuals). The power cap
            // is linear in p once the points are fixed, so the update
            // projects onto simplex-and-halfspace and stays feasible.
            std::vector<double> weights(m);
            for (std::size_t j = 0; j < m; ++j) weights[j] = cur.points[j].norm2();
            const double cap = config.power_budget;
            cur.probs = detail::probs_update(zt, cur.probs, [&](std::vector<double> v) {
                return project_simplex_power_capped(v, weights, cap);
            });
            // snap probability dust to exact zero so deactivated points stop
            // interacting with the gradient and the power projection
            double lost = 0.0, largest = 0.0;
            std::size_t arg_largest = 0;
            for (std::size_t j = 0; j < m; ++j) {
                if (cur.probs[j] > 0.0 && cur.probs[j] < 1e-14) {
                    lost += cur.probs[j];
                    cur.probs[j] = 0.0;
                }
                if (cur.probs[j] > largest) {
                    largest = cur.probs[j];
                    arg_largest = j;
                }
            }
            cur.probs[arg_largest] += lost;
        }

        double mu = 0.0;
        if (config.update_points) {
            const double lbar = lipschitz_bound(sc, cur.probs);
            mu = (config.mu > 0.0) ? std::min(config.mu, 1.0 / lbar) : 1.0 / lbar;
            const double obj_after_probs = inner_objective(zt, cur.probs);

            // The grid-sup Lipschitz estimate is dominated by the rho1/d kink
            // near zero separation and overshoots the curvature at the
            // distances the iterates actually visit, so 1/L-bar alone crawls
            // along the flat ring-rearrangement modes. The sweep runs at an
            // adaptive expansion of that step, halving until the audited
            // objective decreases and growing again after clean sweeps;
            // descent is what the theory needs and it is verified directly.
            const auto grads = grad_points(cur, sc);  // frozen-snapshot gradients
            const std::vector<Vec2> base_points = cur.points;
            bool halved = false;
            for (int backtrack = 0; backtrack < 60; ++backtrack) {
                cur.points = base_points;
                for (std::size_t idx = 0; idx < m; ++idx) {
                    const Vec2 cand = cur.points[idx] - (mu * step_scale) * grads[idx];
                    cur.points[idx] = project_power(cand, idx, cur, config.power_budget);
                }
                zt = z_tilde_matrix(cur, sc);
                const double obj_try = inner_objective(zt, cur.probs);
                if (obj_try <= obj_after_probs + 1e-13) break;
                step_scale *= 0.5;
                halved = true;
                if (backtrack == 59) {
                    cur.points = base_points;  // flat: keep the previous geometry
                    zt = z_tilde_matrix(cur, sc);
                }
            }
            if (!halved) step_scale = std::min(64.0, 2.0 * step_scale);
        } else {
            zt = z_tilde_matrix(cur, sc);
        }

        objective = inner_objective(zt, cur.probs);
        if (objective > prev_objective + 1e-13) {
            // the feasibility shrink outweighed the update gains; keep the
            // previous iterate (the loop then stops on a zero step)
            cur = prev;
            zt = z_tilde_matrix(cur, sc);
            objective = prev_objective;
        }

        double step = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            step = std::max(step, std::abs(cur.probs[j] - prev.probs[j]));
            step = std::max(step, (cur.points[j] - prev.points[j]).norm());
        }

        TraceRow row;
        row.iteration = t;
        row.objective = objective;
        row.cr_lower_bits = -std::log2(std::min(objective, 1.0));
        row.step = step;
        row.power_slack = config.power_budget - cur.avg_power();
        {
            std::vector<double> pr = cur.probs;
            const double psum = detail::sorted_sum(pr);
            double pmin = 0.0;
            for (double q : cur.probs) pmin = std::min(pmin, q);
            row.simplex_err = std::max(std::abs(psum - 1.0), -pmin);
        }
        row.active_points = 0;
        for (double q : cur.probs)
            if (q > 1e-3) ++row.active_points;
        row.pg_residual = stationarity_residual(cur, sc, config.power_budget, mu > 0 ? mu : 0.0);
        trace.rows.push_back(row);
        trace.iterations = t + 1;

        if (step < config.eps_stop) {
            trace.converged = true;
            break;
        }
    }

    Constellation out;
    out.points.resize(m);
    out.probs.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        out.points[relabel[i]] = cur.points[i];
        out.probs[relabel[i]] = cur.probs[i];
    }
    return {out, trace};
}

}  // namespace gscr

#endif  // GSCR_SHAPING_HPP
