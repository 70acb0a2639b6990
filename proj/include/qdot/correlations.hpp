#pragma once

// Quantum discord and local quantum uncertainty (LQU) of two-qubit states.
//
// Two routes for each measure:
//   discord  closed form over SymXState (sigma_z branch D1, sigma_x branch D2)
//            vs. brute-force minimization of the post-measurement conditional entropy;
//   LQU      closed form over SymXState (diagonal of W)
//            vs. largest eigenvalue of the 3x3 W matrix built from sqrt(rho).
// All entropies are in bits.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include <Eigen/Dense>

#include "qdot/dot_model.hpp"
#include "qdot/qmath.hpp"

namespace qdot {

enum class DiscordBranch { D1, D2 };

inline const char* to_string(DiscordBranch b) { return b == DiscordBranch::D1 ? "D1" : "D2"; }

/// Projective measurement {(I + n.sigma)/2, (I - n.sigma)/2} along
/// n = (sin theta cos phi, sin theta sin phi, cos theta).
struct MeasurementDirection {
    double theta = 0.0;  // [0, pi]
    double phi = 0.0;    // [0, 2 pi)

    /// Maps any (theta, phi) onto the canonical ranges without changing n.
    static MeasurementDirection canonical(double theta, double phi) {
        const double nx = std::sin(theta) * std::cos(phi);
        const double ny = std::sin(theta) * std::sin(phi);
        const double nz = std::cos(theta);
        MeasurementDirection d;
        d.theta = std::acos(std::clamp(nz, -1.0, 1.0));
        d.phi = (nx == 0.0 && ny == 0.0) ? 0.0 : std::atan2(ny, nx);
        if (d.phi < 0.0) d.phi += 2.0 * std::numbers::pi;
        if (d.phi >= 2.0 * std::numbers::pi) d.phi = 0.0;
        return d;
    }

    Matrix2c observable() const {
        return std::sin(theta) * std::cos(phi) * pauli(1) + std::sin(theta) * std::sin(phi) * pauli(2) +
               std::cos(theta) * pauli(3);
    }
};

namespace detail {

inline double clamp_rounding(double value, double slack) {
    return (value < 0.0 && value > -slack) ? 0.0 : value;
}

inline double binary_entropy(double p) {
    const std::array<double, 2> probs{p, 1.0 - p};
    return shannon_bits(probs);
}

/// Entropy of m / Tr m for a 2x2 Hermitian PSD m, through its Bloch-vector length.
inline double qubit_entropy(const Matrix2c& m) {
    const double t = m.trace().real();
    const double diff = (m(0, 0) - m(1, 1)).real();
    const double bloch = std::min(1.0, std::sqrt(diff * diff + 4.0 * std::norm(m(0, 1))) / t);
    return binary_entropy((1.0 + bloch) / 2.0);
}

}  // namespace detail

inline double mutual_information(const TwoQubitState& rho) {
    const double value = von_neumann_entropy(partial_trace(rho, Subsystem::A)) +
                         von_neumann_entropy(partial_trace(rho, Subsystem::B)) - von_neumann_entropy(rho);
    return detail::clamp_rounding(value, 1e-10);
}

/// sum_k P_k S(rho_{unmeasured|k}) for the projective measurement `dir` on `measured`.
/// Outcomes with P_k < 1e-14 contribute nothing.
inline double conditional_entropy_after_measurement(const TwoQubitState& rho, const MeasurementDirection& dir,
                                                    Subsystem measured = Subsystem::B) {
    const Matrix4c& m = rho.matrix();
    const Matrix2c obs = dir.observable();
    double total = 0.0;
    for (double sign : {1.0, -1.0}) {
        const Matrix2c proj = (pauli(0) + sign * obs) / 2.0;
        // Tr_meas[(1 (x) P) rho (1 (x) P)] = Tr_meas[(1 (x) P) rho]
        Matrix2c cond = Matrix2c::Zero();
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                for (int a = 0; a < 2; ++a) {
                    for (int b = 0; b < 2; ++b) {
                        const complex elem = measured == Subsystem::B ? m(2 * i + a, 2 * j + b) : m(2 * a + i, 2 * b + j);
                        cond(i, j) += proj(b, a) * elem;
                    }
                }
            }
        }
        const double prob = cond.trace().real();
        if (prob < 1e-14) continue;
        total += prob * detail::qubit_entropy(cond);
    }
    return total;
}

/// Grid density and local-refinement controls for discord_bruteforce. The
/// defaults keep the grid-only error below 1e-4 and the refined error below 1e-8
/// on smooth landscapes.
struct BruteForceOptions {
    int theta_points = 181;  // inclusive grid over [0, pi]
    int phi_points = 72;     // grid over [0, 2 pi)
    int max_iterations = 4000;
    double f_tolerance = 1e-16;
    double x_tolerance = 1e-10;
};

struct BruteForceDiscord {
    double discord = 0.0;
    MeasurementDirection argmin;
    double min_conditional_entropy = 0.0;
    double grid_min_conditional_entropy = 0.0;
};

namespace detail {

// Nelder-Mead on (theta, phi); unconstrained because n(theta, phi) is periodic.
template <class F>
std::pair<std::array<double, 2>, double> nelder_mead(F&& f, std::array<double, 2> start, std::array<double, 2> step,
                                                     const BruteForceOptions& opt) {
    using Point = std::array<double, 2>;
    std::array<Point, 3> x{start, Point{start[0] + step[0], start[1]}, Point{start[0], start[1] + step[1]}};
    std::array<double, 3> fx{f(x[0]), f(x[1]), f(x[2])};
    const auto lerp = [](const Point& a, const Point& b, double t) {
        return Point{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
    };
    for (int iter = 0; iter < opt.max_iterations; ++iter) {
        std::array<int, 3> order{0, 1, 2};
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fx[a] < fx[b]; });
        const int best = order[0], mid = order[1], worst = order[2];
        const double size = std::max(std::abs(x[worst][0] - x[best][0]) + std::abs(x[worst][1] - x[best][1]),
                                     std::abs(x[mid][0] - x[best][0]) + std::abs(x[mid][1] - x[best][1]));
        if (fx[worst] - fx[best] <= opt.f_tolerance && size <= opt.x_tolerance) break;
        if (size <= 1e-15) break;

        const Point centroid{(x[best][0] + x[mid][0]) / 2.0, (x[best][1] + x[mid][1]) / 2.0};
        const Point reflected = lerp(centroid, x[worst], -1.0);
        const double f_reflected = f(reflected);
        if (f_reflected < fx[best]) {
            const Point expanded = lerp(centroid, x[worst], -2.0);
            const double f_expanded = f(expanded);
            if (f_expanded < f_reflected) {
                x[worst] = expanded;
                fx[worst] = f_expanded;
            } else {
                x[worst] = reflected;
                fx[worst] = f_reflected;
            }
        } else if (f_reflected < fx[mid]) {
            x[worst] = reflected;
            fx[worst] = f_reflected;
        } else {
            const bool outside = f_reflected < fx[worst];
            const Point contracted = outside ? lerp(centroid, reflected, 0.5) : lerp(centroid, x[worst], 0.5);
            const double f_contracted = f(contracted);
            if (f_contracted < std::min(f_reflected, fx[worst])) {
                x[worst] = contracted;
                fx[worst] = f_contracted;
            } else {
                for (int k : {mid, worst}) {
                    x[k] = lerp(x[best], x[k], 0.5);
                    fx[k] = f(x[k]);
                }
            }
        }
    }
    int best = 0;
    for (int k = 1; k < 3; ++k)
        if (fx[k] < fx[best]) best = k;
    return {x[best], fx[best]};
}

}  // namespace detail

/// Discord by direct minimization over projective measurements on `measured`:
/// deterministic (theta, phi) grid, then Nelder-Mead from the best grid point.
/// D = I - C with C = S(rho_other) - min_n sum_k P_k S(rho_other|k).
inline BruteForceDiscord discord_bruteforce(const TwoQubitState& rho, Subsystem measured = Subsystem::B,
                                            const BruteForceOptions& opt = {}) {
    const auto cost = [&](double theta, double phi) {
        return conditional_entropy_after_measurement(rho, MeasurementDirection{theta, phi}, measured);
    };

    const double d_theta = std::numbers::pi / (opt.theta_points - 1);
    const double d_phi = 2.0 * std::numbers::pi / opt.phi_points;
    double grid_best = std::numeric_limits<double>::infinity();
    std::array<double, 2> grid_arg{0.0, 0.0};
    for (int i = 0; i < opt.theta_points; ++i) {
        for (int j = 0; j < opt.phi_points; ++j) {
            const double theta = i * d_theta, phi = j * d_phi;
            const double value = cost(theta, phi);
            if (value < grid_best) {
                grid_best = value;
                grid_arg = {theta, phi};
            }
        }
    }

    auto [refined_arg, refined] = detail::nelder_mead(
        [&](const std::array<double, 2>& p) { return cost(p[0], p[1]); }, grid_arg, {d_theta, d_phi}, opt);

    BruteForceDiscord out;
    out.grid_min_conditional_entropy = grid_best;
    if (refined < grid_best) {
        out.min_conditional_entropy = refined;
        out.argmin = MeasurementDirection::canonical(refined_arg[0], refined_arg[1]);
    } else {
        out.min_conditional_entropy = grid_best;
        out.argmin = MeasurementDirection::canonical(grid_arg[0], grid_arg[1]);
    }
    const Subsystem other = measured == Subsystem::B ? Subsystem::A : Subsystem::B;
    const double classical = von_neumann_entropy(partial_trace(rho, other)) - out.min_conditional_entropy;
    out.discord = detail::clamp_rounding(mutual_information(rho) - classical, 1e-9);
    return out;
}

struct ClosedFormDiscord {
    double discord = 0.0;
    DiscordBranch branch = DiscordBranch::D1;
    double gamma_disc = 0.0;
    double d1 = 0.0;  // sigma_z measurement
    double d2 = 0.0;  // sigma_x measurement
};

namespace detail {

struct XEntropies {
    double reduced = 0.0;  // S(rho_A) = S(rho_B)
    double joint = 0.0;    // S(rho)
};

inline XEntropies x_state_entropies(const SymXState& n) {
    const std::array<double, 4> spectrum{n.u(), n.v(), std::max(0.0, n.w() + n.y()), std::max(0.0, n.w() - n.y())};
    return {binary_entropy(n.u() + n.w()), shannon_bits(spectrum)};
}

// a log2(a / (a + b)), zero when a = 0.
inline double log_ratio_term(double a, double b) { return a > 0.0 ? a * std::log2(a / (a + b)) : 0.0; }

}  // namespace detail

/// D = min{D1, D2} for the symmetric X family (rho_14 = 0); ties report D1.
inline ClosedFormDiscord discord_closed(const SymXState& state) {
    const SymXState n = state.normalized();
    const double u = n.u(), w = n.w(), y = n.y(), v = n.v();
    const auto ent = detail::x_state_entropies(n);
    const double base = ent.reduced - ent.joint;

    ClosedFormDiscord out;
    out.d1 = base - (detail::log_ratio_term(v, w) + detail::log_ratio_term(w, v)) -
             (detail::log_ratio_term(u, w) + detail::log_ratio_term(w, u));
    out.gamma_disc = std::min(1.0, std::sqrt((u - v) * (u - v) + 4.0 * y * y));
    out.d2 = base + detail::binary_entropy((1.0 + out.gamma_disc) / 2.0);
    out.branch = out.d1 <= out.d2 ? DiscordBranch::D1 : DiscordBranch::D2;
    out.discord = detail::clamp_rounding(std::min(out.d1, out.d2), 1e-9);
    return out;
}

struct GenericLqu {
    double lqu = 0.0;
    Eigen::Matrix3d w_matrix = Eigen::Matrix3d::Zero();
};

/// U = 1 - lambda_max(W), W_ij = Tr{sqrt(rho) K_i sqrt(rho) K_j} with K_i the
/// Pauli matrix sigma_i acting on `measured`.
inline GenericLqu lqu_generic(const TwoQubitState& rho, Subsystem measured = Subsystem::A) {
    const Matrix4c root = matrix_sqrt(rho);
    std::array<Matrix4c, 3> local;
    for (int i = 0; i < 3; ++i) {
        local[i] = measured == Subsystem::A ? kron(pauli(i + 1), pauli(0)) : kron(pauli(0), pauli(i + 1));
    }
    GenericLqu out;
    for (int i = 0; i < 3; ++i) {
        const Matrix4c left = root * local[i] * root;
        for (int j = i; j < 3; ++j) {
            const double value = (left * local[j]).trace().real();
            out.w_matrix(i, j) = value;
            out.w_matrix(j, i) = value;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(out.w_matrix, Eigen::EigenvaluesOnly);
    out.lqu = std::clamp(1.0 - solver.eigenvalues()(2), 0.0, 1.0);
    return out;
}

struct ClosedFormLqu {
    double lqu = 0.0;
    double lambda1 = 0.0;  // W_11 = W_22
    double lambda2 = 0.0;  // W_33
};

/// U = 1 - max{lambda1, lambda2} with the weights normalized by Z.
inline ClosedFormLqu lqu_closed(const SymXState& state) {
    const SymXState n = state.normalized();
    const double root_plus = std::sqrt(std::max(0.0, n.w() + n.y()));
    const double root_minus = std::sqrt(std::max(0.0, n.w() - n.y()));
    const double even = root_minus / 2.0 + root_plus / 2.0;
    const double odd = root_plus / 2.0 - root_minus / 2.0;

    ClosedFormLqu out;
    out.lambda1 = 2.0 * (std::sqrt(n.u()) + std::sqrt(n.v())) * even;
    out.lambda2 = (n.u() + n.v()) + 2.0 * even * even - 2.0 * odd * odd;
    out.lqu = std::clamp(1.0 - std::max(out.lambda1, out.lambda2), 0.0, 1.0);
    return out;
}

struct CorrelationReport {
    double mutual_info = 0.0;
    double classical = 0.0;
    double discord = 0.0;
    DiscordBranch discord_branch = DiscordBranch::D1;
    double gamma_disc = 0.0;
    double lqu = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
};

/// Closed-form path.
inline CorrelationReport full_report(const SymXState& state) {
    const SymXState n = state.normalized();
    const auto ent = detail::x_state_entropies(n);
    const auto disc = discord_closed(n);
    const auto lqu = lqu_closed(n);

    CorrelationReport rep;
    rep.mutual_info = detail::clamp_rounding(2.0 * ent.reduced - ent.joint, 1e-10);
    rep.discord = std::min(disc.discord, rep.mutual_info);
    rep.classical = std::max(0.0, rep.mutual_info - rep.discord);
    rep.discord_branch = disc.branch;
    rep.gamma_disc = disc.gamma_disc;
    rep.lqu = lqu.lqu;
    rep.lambda1 = lqu.lambda1;
    rep.lambda2 = lqu.lambda2;
    return rep;
}

/// Generic path (brute-force discord on B, W-matrix LQU on A). The branch is the
/// sigma_z-like family (D1) when |cos theta| >= 1/sqrt(2) at the minimizer;
/// gamma_disc and lambda1/lambda2 are the X-family quantities read off the dense
/// matrix (sqrt((rho00 - rho33)^2 + 4|rho12|^2), W_11, W_33).
inline CorrelationReport full_report(const TwoQubitState& rho) {
    const auto disc = discord_bruteforce(rho);
    const auto lqu = lqu_generic(rho);

    CorrelationReport rep;
    rep.mutual_info = mutual_information(rho);
    rep.discord = std::min(disc.discord, rep.mutual_info);
    rep.classical = std::max(0.0, rep.mutual_info - rep.discord);
    rep.discord_branch =
        std::abs(std::cos(disc.argmin.theta)) >= std::numbers::sqrt2 / 2.0 ? DiscordBranch::D1 : DiscordBranch::D2;
    const double diag = (rho(0, 0) - rho(3, 3)).real();
    rep.gamma_disc = std::min(1.0, std::sqrt(diag * diag + 4.0 * std::norm(rho(1, 2))));
    rep.lqu = lqu.lqu;
    rep.lambda1 = lqu.w_matrix(0, 0);
    rep.lambda2 = lqu.w_matrix(2, 2);
    return rep;
}

}  // namespace qdot
