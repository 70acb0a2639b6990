#pragma once

// Local dephasing and amplitude-damping channels, applied with one shared
// strength gamma = 1 - exp(-decay_rate * t) to both qubits.

#include <array>
#include <cmath>
#include <string>

#include "qdot/dot_model.hpp"
#include "qdot/error.hpp"
#include "qdot/qmath.hpp"

namespace qdot {

enum class ChannelKind { Dephasing, AmplitudeDamping };

inline const char* to_string(ChannelKind k) { return k == ChannelKind::Dephasing ? "dephasing" : "amplitude"; }

inline double gamma_from_rate(double decay_rate, double time) {
    if (!(decay_rate >= 0.0) || !(time >= 0.0) || !std::isfinite(decay_rate) || !std::isfinite(time)) {
        throw validation_error("channel decay rate and time must be finite and >= 0");
    }
    return -std::expm1(-decay_rate * time);
}

struct ChannelSpec {
    ChannelKind kind = ChannelKind::Dephasing;
    double decay_rate = 0.0;
    double time = 0.0;

    double gamma() const { return gamma_from_rate(decay_rate, time); }
};

inline void check_gamma(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw gamma_out_of_range("channel strength gamma must lie in [0, 1], got " + std::to_string(gamma));
    }
}

using KrausPair = std::array<Matrix2c, 2>;

/// E0 = diag(1, sqrt(1 - gamma)), E1 = diag(0, sqrt(gamma)).
inline KrausPair dephasing_kraus(double gamma) {
    check_gamma(gamma);
    KrausPair ops{Matrix2c::Zero(), Matrix2c::Zero()};
    ops[0](0, 0) = 1.0;
    ops[0](1, 1) = std::sqrt(1.0 - gamma);
    ops[1](1, 1) = std::sqrt(gamma);
    return ops;
}

/// F1 = diag(sqrt(1 - gamma), 1), F2 = sqrt(gamma) (sigma_x - i sigma_y)/2 = sqrt(gamma) |1><0|.
/// Population flows |0> -> |1>, so |1> is the fixed point.
inline KrausPair amplitude_damping_kraus(double gamma) {
    check_gamma(gamma);
    using namespace std::complex_literals;
    KrausPair ops;
    ops[0] = Matrix2c::Zero();
    ops[0](0, 0) = std::sqrt(1.0 - gamma);
    ops[0](1, 1) = 1.0;
    ops[1] = std::sqrt(gamma) * (pauli(1) - 1.0i * pauli(2)) / 2.0;
    return ops;
}

inline KrausPair single_qubit_kraus(ChannelKind kind, double gamma) {
    return kind == ChannelKind::Dephasing ? dephasing_kraus(gamma) : amplitude_damping_kraus(gamma);
}

/// E_{mu,nu} = E_mu (x) E_nu.
inline std::array<Matrix4c, 4> two_qubit_kraus(const KrausPair& ops) {
    return {kron(ops[0], ops[0]), kron(ops[0], ops[1]), kron(ops[1], ops[0]), kron(ops[1], ops[1])};
}

inline TwoQubitState evolve(const TwoQubitState& rho, ChannelKind kind, double gamma) {
    const auto ops = two_qubit_kraus(single_qubit_kraus(kind, gamma));
    return apply_kraus(rho, ops);
}

inline TwoQubitState evolve(const TwoQubitState& rho, const ChannelSpec& spec) {
    return evolve(rho, spec.kind, spec.gamma());
}

/// Dephasing only scales the coherence: y -> y (1 - gamma).
inline SymXState evolve_xstate_dephasing(const SymXState& state, double gamma) {
    check_gamma(gamma);
    return SymXState(state.u(), state.w(), state.y() * (1.0 - gamma), state.v());
}

/// Amplitude damping on normalized weights (Z = 1 on output):
///   u' = u (1-g)^2
///   w' = w (1-g) + u g (1-g)
///   y' = y (1-g)
///   v' = v + u g^2 + 2 w g
/// The w' line follows from the Kraus operators; the form w g^2 + u (1-g) g
/// does not preserve the trace.
inline SymXState evolve_xstate_amplitude(const SymXState& state, double gamma) {
    check_gamma(gamma);
    const SymXState n = state.normalized();
    const double keep = 1.0 - gamma;
    return SymXState(n.u() * keep * keep, n.w() * keep + n.u() * gamma * keep, n.y() * keep,
                     n.v() + n.u() * gamma * gamma + 2.0 * n.w() * gamma);
}

inline SymXState evolve_xstate(const SymXState& state, ChannelKind kind, double gamma) {
    return kind == ChannelKind::Dephasing ? evolve_xstate_dephasing(state, gamma)
                                          : evolve_xstate_amplitude(state, gamma);
}

}  // namespace qdot
