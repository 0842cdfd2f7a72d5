#pragma once

// Fixed-N occupation-number basis, the Bose-Hubbard Hamiltonian on a ring
// and the matrix of the scattering operator
//   T(q) = sum_l e^{i q_x l d0} [ J0 n_l + J1 (b_l^+ b_{l+1} + b_{l+1}^+ b_l) ].

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "braggsim/lattice.hpp"

namespace braggsim {

enum class Boundary { periodic, open };

inline constexpr std::size_t kDefaultBasisCap = 2'000'000;

// Number of ways to put `atoms` bosons on `sites` sites, saturating at SIZE_MAX.
std::size_t fock_dimension(int sites, int atoms);

// All occupation vectors with fixed total, in descending lexicographic order
// (|N,0,...,0> first, |0,...,0,N> last).
class FockBasis {
 public:
  FockBasis(int sites, int atoms, std::size_t cap = kDefaultBasisCap);

  int sites() const { return sites_; }
  int atoms() const { return atoms_; }
  std::size_t size() const { return size_; }

  std::span<const int> state(std::size_t index) const {
    return {occupations_.data() + index * sites_, static_cast<std::size_t>(sites_)};
  }

  // Position of an occupation vector, or nullopt if it is not in this sector.
  std::optional<std::size_t> index_of(std::span<const int> occupations) const;

 private:
  // compositions_[r][s]: number of ways to distribute r atoms over s sites
  std::size_t compositions(int atoms, int sites) const;

  int sites_;
  int atoms_;
  std::size_t size_;
  std::vector<int> occupations_;
  std::vector<std::vector<std::size_t>> compositions_;
};

FockBasis build_basis(int sites, int atoms, std::size_t cap = kDefaultBasisCap);

struct HamiltonianMatrix {
  int sites = 0;
  int atoms = 0;
  Eigen::MatrixXd entries;
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns

  Eigen::Index dimension() const { return entries.rows(); }
};

// Real-symmetric Bose-Hubbard matrix with its full eigendecomposition.
HamiltonianMatrix build_hamiltonian(const FockBasis& basis, const HubbardParams& params,
                                    Boundary boundary = Boundary::periodic);

// Dense symmetric eigendecomposition (LAPACK dsyevd). Eigenvectors are sign-fixed
// so the first non-negligible component is positive.
void diagonalize(HamiltonianMatrix& h);

struct ProbeOperatorMatrix {
  int sites = 0;
  int atoms = 0;
  Eigen::SparseMatrix<std::complex<double>> entries;
  double bragg_angle = 0.0;  // q_x d0
  CouplingCoefficients coefficients;
  bool include_j1 = true;

  Eigen::Index dimension() const { return entries.rows(); }
};

ProbeOperatorMatrix build_probe_operator(const FockBasis& basis,
                                         const CouplingCoefficients& coefficients,
                                         double spacing, bool include_j1,
                                         Boundary boundary = Boundary::periodic);

struct GroundState {
  double energy = 0.0;
  Eigen::VectorXd vector;
  // Filled when the lowest two levels are split by less than 1e-10.
  std::optional<std::pair<Eigen::Index, Eigen::Index>> degenerate_with;
};

GroundState ground_state(const HamiltonianMatrix& h);

}  // namespace braggsim
