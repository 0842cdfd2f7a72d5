#include "braggsim/hilbert.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "braggsim/errors.hpp"

extern "C" {
void dsyevd_(const char* jobz, const char* uplo, const int* n, double* a, const int* lda,
             double* w, double* work, const int* lwork, int* iwork, const int* liwork,
             int* info);
}

namespace braggsim {

namespace {

constexpr std::size_t kSaturated = std::numeric_limits<std::size_t>::max();

std::size_t saturating_add(std::size_t a, std::size_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

// count[r][s] = C(r + s - 1, s - 1), built by Pascal-style recursion.
std::vector<std::vector<std::size_t>> composition_table(int atoms, int sites) {
  std::vector<std::vector<std::size_t>> count(atoms + 1, std::vector<std::size_t>(sites + 1, 0));
  for (int r = 0; r <= atoms; ++r) count[r][1] = 1;
  count[0][0] = 1;
  for (int s = 2; s <= sites; ++s) {
    for (int r = 0; r <= atoms; ++r) {
      // count[r][s] = count[r][s-1] + count[r-1][s]
      count[r][s] = saturating_add(count[r][s - 1], r > 0 ? count[r - 1][s] : 0);
    }
  }
  return count;
}

void enumerate(int site, int remaining, int sites, std::vector<int>& current,
               std::vector<int>& out) {
  if (site == sites - 1) {
    current[site] = remaining;
    out.insert(out.end(), current.begin(), current.end());
    return;
  }
  for (int n = remaining; n >= 0; --n) {
    current[site] = n;
    enumerate(site + 1, remaining - n, sites, current, out);
  }
}

}  // namespace

std::size_t fock_dimension(int sites, int atoms) {
  if (sites < 1 || atoms < 0) return 0;
  return composition_table(atoms, sites)[atoms][sites];
}

FockBasis::FockBasis(int sites, int atoms, std::size_t cap) : sites_(sites), atoms_(atoms) {
  if (sites < 1) throw DomainError("basis needs at least one site");
  if (atoms < 0) throw DomainError("atom number must be non-negative");
  compositions_ = composition_table(atoms, sites);
  size_ = compositions_[atoms][sites];
  if (size_ > cap) {
    throw CapacityError("Fock space dimension exceeds cap of " + std::to_string(cap));
  }
  occupations_.reserve(size_ * sites);
  std::vector<int> current(sites, 0);
  enumerate(0, atoms, sites, current, occupations_);
}

std::size_t FockBasis::compositions(int atoms, int sites) const {
  return compositions_[atoms][sites];
}

std::optional<std::size_t> FockBasis::index_of(std::span<const int> occupations) const {
  if (occupations.size() != static_cast<std::size_t>(sites_)) return std::nullopt;
  int remaining = atoms_;
  std::size_t index = 0;
  for (int l = 0; l < sites_; ++l) {
    const int n = occupations[l];
    if (n < 0 || n > remaining) return std::nullopt;
    if (l == sites_ - 1) {
      if (n != remaining) return std::nullopt;
      break;
    }
    // States sharing the prefix but holding more atoms on site l come first.
    for (int v = remaining; v > n; --v) index += compositions(remaining - v, sites_ - l - 1);
    remaining -= n;
  }
  return index;
}

FockBasis build_basis(int sites, int atoms, std::size_t cap) { return FockBasis(sites, atoms, cap); }

HamiltonianMatrix build_hamiltonian(const FockBasis& basis, const HubbardParams& params,
                                    Boundary boundary) {
  const int sites = basis.sites();
  const auto dim = static_cast<Eigen::Index>(basis.size());
  HamiltonianMatrix h;
  h.sites = sites;
  h.atoms = basis.atoms();
  h.entries = Eigen::MatrixXd::Zero(dim, dim);

  std::vector<int> target(sites);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const auto occ = basis.state(static_cast<std::size_t>(j));
    double diagonal = 0.0;
    for (int l = 0; l < sites; ++l) {
      diagonal += 0.5 * params.U * occ[l] * (occ[l] - 1) - params.mu * occ[l];
    }
    h.entries(j, j) = diagonal;

    // -J sum_l b_l^+ (b_{l-1} + b_{l+1}); the lower triangle is filled from
    // the same value so the matrix is symmetric bit for bit.
    for (int l = 0; l < sites; ++l) {
      for (int step : {-1, 1}) {
        int from = l + step;
        if (boundary == Boundary::open && (from < 0 || from >= sites)) continue;
        from = (from + sites) % sites;
        if (occ[from] == 0 || from == l) continue;
        std::copy(occ.begin(), occ.end(), target.begin());
        const double amplitude = std::sqrt(static_cast<double>(target[from]) * (target[l] + 1));
        target[from] -= 1;
        target[l] += 1;
        const auto i = static_cast<Eigen::Index>(*basis.index_of(target));
        if (i > j) {
          h.entries(i, j) -= params.J * amplitude;
        }
      }
    }
  }
  h.entries.triangularView<Eigen::StrictlyUpper>() = h.entries.transpose().eval();
  diagonalize(h);
  return h;
}

void diagonalize(HamiltonianMatrix& h) {
  const int n = static_cast<int>(h.entries.rows());
  h.eigenvectors = h.entries;
  h.eigenvalues.resize(n);
  if (n == 0) return;

  const char jobz = 'V', uplo = 'L';
  int info = 0, lwork = -1, liwork = -1;
  double work_query = 0.0;
  int iwork_query = 0;
  dsyevd_(&jobz, &uplo, &n, h.eigenvectors.data(), &n, h.eigenvalues.data(), &work_query,
          &lwork, &iwork_query, &liwork, &info);
  lwork = static_cast<int>(work_query);
  liwork = iwork_query;
  std::vector<double> work(lwork);
  std::vector<int> iwork(liwork);
  dsyevd_(&jobz, &uplo, &n, h.eigenvectors.data(), &n, h.eigenvalues.data(), work.data(),
          &lwork, iwork.data(), &liwork, &info);
  if (info != 0) throw ResolutionError("dsyevd failed with info = " + std::to_string(info));

  for (int c = 0; c < n; ++c) {
    auto column = h.eigenvectors.col(c);
    for (int r = 0; r < n; ++r) {
      if (std::abs(column(r)) > 1e-12) {
        if (column(r) < 0) column = -column;
        break;
      }
    }
  }
}

ProbeOperatorMatrix build_probe_operator(const FockBasis& basis,
                                         const CouplingCoefficients& coefficients,
                                         double spacing, bool include_j1, Boundary boundary) {
  using Complex = std::complex<double>;
  if (!std::isfinite(std::abs(coefficients.j0)) || !std::isfinite(std::abs(coefficients.j1))) {
    throw DomainError("coupling coefficients must be finite");
  }
  const int sites = basis.sites();
  const double theta = coefficients.q[0] * spacing;
  const Complex j1 = include_j1 ? coefficients.j1 : Complex{};

  std::vector<Complex> phase(sites);
  for (int l = 0; l < sites; ++l) phase[l] = std::polar(1.0, theta * l);

  std::vector<Eigen::Triplet<Complex>> triplets;
  std::vector<int> target(sites);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  for (Eigen::Index j = 0; j < dim; ++j) {
    const auto occ = basis.state(static_cast<std::size_t>(j));
    Complex diagonal{};
    for (int l = 0; l < sites; ++l) diagonal += phase[l] * coefficients.j0 * double(occ[l]);
    if (diagonal != Complex{}) triplets.emplace_back(j, j, diagonal);
    if (j1 == Complex{}) continue;

    for (int l = 0; l < sites; ++l) {
      if (boundary == Boundary::open && l == sites - 1) continue;
      const int next = (l + 1) % sites;
      if (next == l) continue;  // a single site has no bond
      // b_l^+ b_{l+1} and b_{l+1}^+ b_l, both weighted by e^{i theta l}
      for (auto [to, from] : {std::pair{l, next}, std::pair{next, l}}) {
        if (occ[from] == 0) continue;
        std::copy(occ.begin(), occ.end(), target.begin());
        const double amplitude = std::sqrt(static_cast<double>(target[from]) * (target[to] + 1));
        target[from] -= 1;
        target[to] += 1;
        const auto i = static_cast<Eigen::Index>(*basis.index_of(target));
        triplets.emplace_back(i, j, phase[l] * j1 * amplitude);
      }
    }
  }

  ProbeOperatorMatrix t;
  t.sites = sites;
  t.atoms = basis.atoms();
  t.entries.resize(dim, dim);
  t.entries.setFromTriplets(triplets.begin(), triplets.end());
  t.bragg_angle = theta;
  t.coefficients = coefficients;
  t.include_j1 = include_j1;
  return t;
}

GroundState ground_state(const HamiltonianMatrix& h) {
  if (h.eigenvalues.size() == 0) throw DomainError("Hamiltonian has no eigendecomposition");
  GroundState g;
  g.energy = h.eigenvalues(0);
  g.vector = h.eigenvectors.col(0);
  if (h.eigenvalues.size() > 1 && h.eigenvalues(1) - h.eigenvalues(0) < 1e-10) {
    g.degenerate_with = std::pair<Eigen::Index, Eigen::Index>{0, 1};
  }
  return g;
}

}  // namespace braggsim
