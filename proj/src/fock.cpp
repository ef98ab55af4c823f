#include "mirrorsim/fock.hpp"

#include <cmath>
#include <string>

namespace mirrorsim::fock {

namespace {

constexpr double kTailBudget = 1e-10;
constexpr int kTailLevels = 4;

void check_tail(double tail, const char* where) {
  if (tail >= kTailBudget) {
    throw TruncationError(std::string(where) +
                              ": tail mass " + std::to_string(tail) +
                              " exceeds the 1e-10 truncation budget",
                          tail);
  }
}

double row_tail(const Eigen::MatrixXcd& amplitudes, int levels) {
  const int n = static_cast<int>(amplitudes.cols());
  const int from = std::max(0, n - levels);
  return amplitudes.rightCols(n - from).squaredNorm();
}

}  // namespace

HamiltonianBlocks hamiltonian_blocks(double kappa, int n_max) {
  if (n_max < 2) throw std::invalid_argument("n_max must be at least 2");
  HamiltonianBlocks blocks;
  blocks.h0 = Eigen::MatrixXd::Zero(n_max, n_max);
  blocks.h1 = Eigen::MatrixXd::Zero(n_max, n_max);
  for (int n = 0; n < n_max; ++n) {
    blocks.h0(n, n) = n;
    blocks.h1(n, n) = n;
  }
  for (int n = 0; n + 1 < n_max; ++n) {
    const double coupling = -kappa * std::sqrt(n + 1.0);
    blocks.h1(n, n + 1) = coupling;
    blocks.h1(n + 1, n) = coupling;
  }
  return blocks;
}

int required_truncation(double beta_mag, double kappa) {
  const double reach = beta_mag + 2.0 * kappa;
  return static_cast<int>(std::ceil(reach * reach + 6.0 * reach + 10.0)) + 1;
}

Eigen::VectorXcd coherent_state_vector(Complex beta, int n_max) {
  const double mag = std::abs(beta);
  if (n_max <= mag * mag + 6.0 * mag + 10.0) {
    throw TruncationError(
        "coherent_state_vector: n_max " + std::to_string(n_max) +
            " below the truncation rule for |beta| = " + std::to_string(mag),
        1.0);
  }
  Eigen::VectorXcd amps(n_max);
  amps(0) = std::exp(-0.5 * mag * mag);
  for (int n = 1; n < n_max; ++n) amps(n) = amps(n - 1) * beta / std::sqrt(double(n));
  amps /= amps.norm();
  check_tail(amps.tail(kTailLevels).squaredNorm(), "coherent_state_vector");
  return amps;
}

double FockVector::tail_mass(int levels) const {
  return row_tail(amplitudes, levels);
}

FockVector initial_superposition(Complex beta, int n_max) {
  const Eigen::VectorXcd mirror = coherent_state_vector(beta, n_max);
  FockVector state;
  state.amplitudes.resize(2, n_max);
  state.amplitudes.row(0) = mirror.transpose() / std::numbers::sqrt2;
  state.amplitudes.row(1) = mirror.transpose() / std::numbers::sqrt2;
  return state;
}

FockVector propagate(const FockVector& state, double kappa, double theta) {
  if (!(kappa >= 0.0)) throw std::invalid_argument("kappa must be non-negative");
  const int n = state.n_max();

  FockVector out;
  out.amplitudes.resize(2, n);

  // Photon absent: h0 is already diagonal, apply its phases directly.
  for (int k = 0; k < n; ++k)
    out.amplitudes(0, k) = state.amplitudes(0, k) * std::exp(Complex(0.0, -k * theta));

  // Photon present: exact exponential through the eigendecomposition of the
  // symmetric block.
  const HamiltonianBlocks blocks = hamiltonian_blocks(kappa, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(blocks.h1);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition of the driven block failed");
  const Eigen::VectorXcd phases =
      (Complex(0.0, -theta) * solver.eigenvalues().cast<Complex>().array()).exp();
  const Eigen::VectorXcd modal =
      solver.eigenvectors().transpose().cast<Complex>() *
      state.amplitudes.row(1).transpose();
  out.amplitudes.row(1) =
      (solver.eigenvectors().cast<Complex>() * phases.cwiseProduct(modal).matrix())
          .transpose();

  check_tail(out.tail_mass(kTailLevels), "propagate");
  return out;
}

Complex reduced_photon_offdiagonal(const FockVector& state) {
  // rho_AB = sum_n psi_{A,n} conj(psi_{B,n}); Eigen's dot conjugates the
  // left factor.
  return state.amplitudes.row(0).dot(state.amplitudes.row(1));
}

Complex reduced_photon_offdiagonal(const Eigen::VectorXcd& photon_absent,
                                   const Eigen::VectorXcd& photon_present) {
  return 0.5 * photon_absent.dot(photon_present);
}

double mirror_number(const FockVector& state, int row) {
  const auto branch = state.amplitudes.row(row);
  double weighted = 0.0;
  for (int n = 0; n < state.n_max(); ++n) weighted += n * std::norm(branch(n));
  return weighted / branch.squaredNorm();
}

double mirror_position(const FockVector& state, int row) {
  const auto branch = state.amplitudes.row(row);
  Complex cross = 0.0;
  for (int n = 0; n + 1 < state.n_max(); ++n)
    cross += std::conj(branch(n)) * std::sqrt(n + 1.0) * branch(n + 1);
  return 2.0 * cross.real() / branch.squaredNorm();
}

double energy_expectation(const FockVector& state, double kappa) {
  double energy = 0.0;
  for (int row = 0; row < 2; ++row) {
    const auto branch = state.amplitudes.row(row);
    for (int n = 0; n < state.n_max(); ++n) energy += n * std::norm(branch(n));
  }
  const auto driven = state.amplitudes.row(1);
  Complex cross = 0.0;
  for (int n = 0; n + 1 < state.n_max(); ++n)
    cross += std::conj(driven(n)) * std::sqrt(n + 1.0) * driven(n + 1);
  energy -= kappa * 2.0 * cross.real();
  return energy;
}

}  // namespace mirrorsim::fock
