#pragma once

// Dense 2x2 / 4x4 density-matrix primitives. Two-qubit matrices use the ordered
// basis {|00>, |01>, |10>, |11>} (index = 2*a + b) with sigma_z|0> = +|0>.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "qdot/error.hpp"

namespace qdot {

using complex = std::complex<double>;

template <int N>
using cmatrix = Eigen::Matrix<complex, N, N>;
template <int N>
using cvector = Eigen::Matrix<complex, N, 1>;

using Matrix2c = cmatrix<2>;
using Matrix4c = cmatrix<4>;

namespace tolerance {
inline constexpr double hermitian = 1e-12;
inline constexpr double trace = 1e-12;
// Eigenvalues in [-clamp, 0) are rounding noise and set to zero; below is an error.
inline constexpr double clamp = 1e-10;
inline constexpr double completeness = 1e-10;
}  // namespace tolerance

enum class Subsystem { A, B };

inline const char* to_string(Subsystem s) { return s == Subsystem::A ? "A" : "B"; }

template <int N>
double max_abs(const cmatrix<N>& m) {
    return m.cwiseAbs().maxCoeff();
}

template <int N>
bool is_hermitian(const cmatrix<N>& m, double tol = tolerance::hermitian) {
    return max_abs<N>(m - m.adjoint()) <= tol;
}

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues are sorted in
/// descending order and column k of `eigenvectors` belongs to eigenvalues[k].
template <int N>
struct Spectrum {
    Eigen::Matrix<double, N, 1> eigenvalues;
    cmatrix<N> eigenvectors;

    cmatrix<N> reconstruct() const {
        return eigenvectors * eigenvalues.template cast<complex>().asDiagonal() * eigenvectors.adjoint();
    }
};

/// Fixed-order Householder tridiagonalization + implicit QR (Eigen), so the
/// output is bit-identical for identical input.
template <int N>
Spectrum<N> spectral_decompose(const cmatrix<N>& m) {
    if (!is_hermitian<N>(m)) {
        throw not_hermitian("spectral_decompose: matrix is not Hermitian (max |M - M^H| = " +
                            std::to_string(max_abs<N>(m - m.adjoint())) + ")");
    }
    const cmatrix<N> sym = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<cmatrix<N>> solver(sym);
    Spectrum<N> out;
    // Eigen returns ascending order.
    for (int k = 0; k < N; ++k) {
        out.eigenvalues(k) = solver.eigenvalues()(N - 1 - k);
        out.eigenvectors.col(k) = solver.eigenvectors().col(N - 1 - k);
    }
    return out;
}

/// Hermitian, unit-trace, positive-semidefinite N x N matrix. Construction
/// validates the contract and clamps eigenvalues in [-1e-10, 0) to zero.
template <int N>
class DensityMatrix {
public:
    explicit DensityMatrix(const cmatrix<N>& m) : m_(validate(m)) {}

    static DensityMatrix maximally_mixed() { return DensityMatrix(cmatrix<N>::Identity() / double(N)); }

    static DensityMatrix pure(const cvector<N>& psi) {
        const double norm = psi.norm();
        if (!(norm > 0.0)) throw invalid_trace("pure: zero state vector");
        const cvector<N> unit = psi / norm;
        return DensityMatrix(unit * unit.adjoint());
    }

    const cmatrix<N>& matrix() const { return m_; }
    complex operator()(int row, int col) const { return m_(row, col); }

private:
    static cmatrix<N> validate(const cmatrix<N>& m) {
        if (!m.allFinite()) throw not_hermitian("density matrix has non-finite entries");
        if (!is_hermitian<N>(m)) {
            throw not_hermitian("density matrix is not Hermitian (max |M - M^H| = " +
                                std::to_string(max_abs<N>(m - m.adjoint())) + ")");
        }
        cmatrix<N> sym = (m + m.adjoint()) / 2.0;
        const double tr = sym.trace().real();
        if (std::abs(tr - 1.0) > tolerance::trace) {
            throw invalid_trace("density matrix trace is " + std::to_string(tr) + ", expected 1");
        }
        Spectrum<N> spec = spectral_decompose<N>(sym);
        const double lowest = spec.eigenvalues(N - 1);
        if (lowest < -tolerance::clamp) {
            throw negative_eigenvalue("density matrix has eigenvalue " + std::to_string(lowest));
        }
        if (lowest < 0.0) {
            for (int k = 0; k < N; ++k) spec.eigenvalues(k) = std::max(spec.eigenvalues(k), 0.0);
            sym = spec.reconstruct();
            sym = (sym + sym.adjoint()) / 2.0;
            sym /= sym.trace().real();
        }
        return sym;
    }

    cmatrix<N> m_;
};

using TwoQubitState = DensityMatrix<4>;
using SingleQubitState = DensityMatrix<2>;

/// Pauli matrices: 0 = identity, 1 = sigma_x, 2 = sigma_y, 3 = sigma_z.
inline Matrix2c pauli(int index) {
    using namespace std::complex_literals;
    Matrix2c p;
    switch (index) {
        case 0: p << 1.0, 0.0, 0.0, 1.0; break;
        case 1: p << 0.0, 1.0, 1.0, 0.0; break;
        case 2: p << 0.0, -1.0i, 1.0i, 0.0; break;
        case 3: p << 1.0, 0.0, 0.0, -1.0; break;
        default: throw std::out_of_range("pauli index must be 0..3");
    }
    return p;
}

inline Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
    Matrix4c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.template block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

inline TwoQubitState tensor(const SingleQubitState& a, const SingleQubitState& b) {
    return TwoQubitState(kron(a.matrix(), b.matrix()));
}

/// Principal square root: V sqrt(Lambda) V^H with tiny negative eigenvalues clamped.
template <int N>
cmatrix<N> matrix_sqrt(const DensityMatrix<N>& rho) {
    Spectrum<N> spec = spectral_decompose<N>(rho.matrix());
    for (int k = 0; k < N; ++k) {
        const double lambda = spec.eigenvalues(k);
        if (lambda < -tolerance::clamp) {
            throw negative_eigenvalue("matrix_sqrt: eigenvalue " + std::to_string(lambda));
        }
        spec.eigenvalues(k) = std::sqrt(std::max(lambda, 0.0));
    }
    const cmatrix<N> root = spec.reconstruct();
    return (root + root.adjoint()) / 2.0;
}

/// -sum p log2 p over the entries with p > 0.
inline double shannon_bits(std::span<const double> probabilities) {
    double s = 0.0;
    for (double p : probabilities) {
        if (p > 0.0) s -= p * std::log2(p);
    }
    return s;
}

template <int N>
double von_neumann_entropy(const DensityMatrix<N>& rho) {
    Eigen::SelfAdjointEigenSolver<cmatrix<N>> solver(rho.matrix(), Eigen::EigenvaluesOnly);
    std::array<double, N> lambda{};
    for (int k = 0; k < N; ++k) lambda[k] = solver.eigenvalues()(k);
    return std::clamp(shannon_bits(lambda), 0.0, std::log2(double(N)));
}

inline SingleQubitState partial_trace(const TwoQubitState& rho, Subsystem keep) {
    const Matrix4c& m = rho.matrix();
    Matrix2c out = Matrix2c::Zero();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                out(i, j) += keep == Subsystem::A ? m(2 * i + k, 2 * j + k) : m(2 * k + i, 2 * k + j);
            }
        }
    }
    return SingleQubitState(out);
}

inline double completeness_defect(std::span<const Matrix4c> operators) {
    Matrix4c sum = Matrix4c::Zero();
    for (const auto& e : operators) sum += e.adjoint() * e;
    return max_abs<4>(sum - Matrix4c::Identity());
}

/// rho -> sum_k E_k rho E_k^H for a complete operator set.
inline TwoQubitState apply_kraus(const TwoQubitState& rho, std::span<const Matrix4c> operators) {
    const double defect = completeness_defect(operators);
    if (operators.empty() || defect > tolerance::completeness) {
        throw incomplete_channel("apply_kraus: sum E^H E deviates from identity by " + std::to_string(defect));
    }
    Matrix4c out = Matrix4c::Zero();
    for (const auto& e : operators) out += e * rho.matrix() * e.adjoint();
    out = (out + out.adjoint()) / 2.0;
    // Completeness within 1e-10 bounds the trace drift well below this renormalization.
    out /= out.trace().real();
    return TwoQubitState(out);
}

template <int N>
double trace_distance(const DensityMatrix<N>& a, const DensityMatrix<N>& b) {
    const Spectrum<N> spec = spectral_decompose<N>(a.matrix() - b.matrix());
    return spec.eigenvalues.cwiseAbs().sum() / 2.0;
}

}  // namespace qdot
