#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

#include "mirrorsim/closed_form.hpp"

namespace mirrorsim::fock {

/// Thrown when the truncated Hilbert space is too small for the requested
/// state or when amplitude leaks into the top Fock levels after propagation.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double tail_mass)
      : std::runtime_error(what), tail_mass_(tail_mass) {}

  double tail_mass() const { return tail_mass_; }

 private:
  double tail_mass_;
};

/// Mirror Hamiltonian blocks in units hbar = omega_m = 1:
/// h0 = b^dag b (photon absent), h1 = b^dag b - kappa (b + b^dag).
struct HamiltonianBlocks {
  Eigen::MatrixXd h0;
  Eigen::MatrixXd h1;
};

HamiltonianBlocks hamiltonian_blocks(double kappa, int n_max);

/// Smallest truncation dimension considered safe for amplitudes up to
/// |beta| + 2*kappa (the photon-present branch is displaced by at most
/// 2*kappa).
int required_truncation(double beta_mag, double kappa = 0.0);

/// Truncated coherent state exp(-|beta|^2/2) beta^n / sqrt(n!), renormalized.
/// Throws TruncationError if n_max violates the truncation rule or the tail
/// mass in the top four levels exceeds 1e-10.
Eigen::VectorXcd coherent_state_vector(Complex beta, int n_max);

/// Two-branch state: row 0 holds the mirror amplitudes with the photon in
/// arm B (mirror free), row 1 with the photon in arm A (mirror driven).
/// Rows carry the 1/sqrt(2) superposition weights, so the total norm is 1.
struct FockVector {
  Eigen::MatrixXcd amplitudes;  // 2 x n_max

  int n_max() const { return static_cast<int>(amplitudes.cols()); }
  double norm() const { return amplitudes.norm(); }
  /// Probability mass in the top `levels` Fock levels, summed over branches.
  double tail_mass(int levels = 4) const;
};

/// The equal superposition initial state with mirror coherent amplitude beta.
FockVector initial_superposition(Complex beta, int n_max);

/// Applies exp(-i h0 theta) to the photon-absent branch and exp(-i h1 theta)
/// to the photon-present branch, the latter by eigendecomposition of the
/// symmetric block. Throws TruncationError if the propagated tail mass
/// exceeds 1e-10.
FockVector propagate(const FockVector& state, double kappa, double theta);

/// Off-diagonal element of the photon's reduced density matrix obtained by
/// tracing over the mirror: sum_n conj(B_n) A_n with the stored 1/sqrt(2)
/// weights, i.e. (1/2) <mirror_B | mirror_A> for unit-normalized branches.
Complex reduced_photon_offdiagonal(const FockVector& state);

/// Same, from two unit-normalized branch vectors.
Complex reduced_photon_offdiagonal(const Eigen::VectorXcd& photon_absent,
                                   const Eigen::VectorXcd& photon_present);

/// <b^dag b> on the (renormalized) branch in the given row.
double mirror_number(const FockVector& state, int row);

/// <b + b^dag> on the (renormalized) branch in the given row.
double mirror_position(const FockVector& state, int row);

/// <H> of the full two-branch state, units hbar = omega_m = 1.
double energy_expectation(const FockVector& state, double kappa);

}  // namespace mirrorsim::fock
