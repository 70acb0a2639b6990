#pragma once

// Two-electron vertical quantum dot: effective exchange + Zeeman Hamiltonian
//   H = (k0/4) S1.S2 - r S^z_total,   S_i = sigma_i / 2,  r = gyromagnetic ratio * B0
// and its Gibbs state. Units: hbar = k_B = 1; k0, r and T share one energy unit.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qdot/error.hpp"
#include "qdot/qmath.hpp"

namespace qdot {

struct DotParams {
    double k0 = 0.0;  // bare exchange value at B = 0
    double r = 0.0;   // Zeeman energy
    double T = 1.0;   // temperature, strictly positive

    /// k0 = level spacing - 2 * exchange energy.
    static DotParams from_level_spacing(double level_spacing, double exchange_energy, double r, double T) {
        return DotParams{level_spacing - 2.0 * exchange_energy, r, T};
    }
};

inline void validate(const DotParams& p) {
    if (!std::isfinite(p.k0) || !std::isfinite(p.r)) {
        throw validation_error("DotParams: k0 and r must be finite");
    }
    if (!(p.T > 0.0) || !std::isfinite(p.T)) {
        throw non_positive_temperature("DotParams: temperature must be finite and > 0, got T = " +
                                       std::to_string(p.T));
    }
}

/// Levels of H in the order |00>, triplet m=0, |11>, singlet.
inline std::array<double, 4> dot_energies(const DotParams& p) {
    return {p.k0 / 16.0 - p.r, p.k0 / 16.0, p.k0 / 16.0 + p.r, -3.0 * p.k0 / 16.0};
}

inline Matrix4c hamiltonian(const DotParams& p) {
    const Matrix2c id = pauli(0);
    Matrix4c exchange = Matrix4c::Zero();
    for (int i = 1; i <= 3; ++i) exchange += kron(pauli(i), pauli(i));
    const Matrix4c zeeman = kron(pauli(3), id) + kron(id, pauli(3));
    return (p.k0 / 16.0) * exchange - (p.r / 2.0) * zeeman;
}

/// Symmetric X state
///        | u 0 0 0 |
///  1/Z * | 0 w y 0 |,   Z = u + 2w + v.
///        | 0 y w 0 |
///        | 0 0 0 v |
/// Weights may carry any common positive scale; `normalized()` divides by Z.
class SymXState {
public:
    SymXState(double u, double w, double y, double v) : u_(u), w_(w), y_(y), v_(v), z_(u + 2.0 * w + v) {
        if (!std::isfinite(u) || !std::isfinite(w) || !std::isfinite(y) || !std::isfinite(v)) {
            throw invalid_x_state("SymXState: non-finite weight");
        }
        if (u < 0.0 || w < 0.0 || v < 0.0 || !(z_ > 0.0)) {
            throw invalid_x_state("SymXState: weights must be non-negative with Z > 0");
        }
        if ((w - std::abs(y)) / z_ < -1e-12) {
            throw invalid_x_state("SymXState: w < |y| (middle block not positive semidefinite)");
        }
    }

    double u() const { return u_; }
    double w() const { return w_; }
    double y() const { return y_; }
    double v() const { return v_; }
    double Z() const { return z_; }

    SymXState normalized() const { return SymXState(u_ / z_, w_ / z_, y_ / z_, v_ / z_); }

    Matrix4c dense_matrix() const {
        Matrix4c m = Matrix4c::Zero();
        m(0, 0) = u_ / z_;
        m(1, 1) = w_ / z_;
        m(2, 2) = w_ / z_;
        m(3, 3) = v_ / z_;
        m(1, 2) = y_ / z_;
        m(2, 1) = y_ / z_;
        return m;
    }

    TwoQubitState to_dense() const { return TwoQubitState(dense_matrix()); }

private:
    double u_, w_, y_, v_, z_;
};

/// Closed-form Gibbs state. Every Boltzmann factor is taken relative to the
/// lowest level, exp(-(E_i - E_min)/T), which rescales u, w, y, v, Z by one
/// common factor and keeps low temperatures free of overflow.
inline SymXState thermal_state_closed(const DotParams& p) {
    validate(p);
    const auto e = dot_energies(p);
    const double e_min = *std::min_element(e.begin(), e.end());
    const auto boltzmann = [&](double energy) { return std::exp(-(energy - e_min) / p.T); };
    const double up = boltzmann(e[0]);
    const double triplet0 = boltzmann(e[1]);
    const double down = boltzmann(e[2]);
    const double singlet = boltzmann(e[3]);
    return SymXState(up, (triplet0 + singlet) / 2.0, (triplet0 - singlet) / 2.0, down);
}

/// exp(-H/T)/Tr exp(-H/T) by diagonalizing hamiltonian(p). Independent of the closed form.
inline TwoQubitState thermal_state_oracle(const DotParams& p) {
    validate(p);
    Spectrum<4> spec = spectral_decompose<4>(hamiltonian(p));
    const double e_min = spec.eigenvalues(3);
    double z = 0.0;
    for (int k = 0; k < 4; ++k) {
        spec.eigenvalues(k) = std::exp(-(spec.eigenvalues(k) - e_min) / p.T);
        z += spec.eigenvalues(k);
    }
    spec.eigenvalues /= z;
    const Matrix4c rho = spec.reconstruct();
    return TwoQubitState((rho + rho.adjoint()) / 2.0);
}

}  // namespace qdot
