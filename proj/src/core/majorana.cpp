#include "core/majorana.hpp"

#include <algorithm>
#include <cmath>

namespace polab {

namespace {

// Roots of sum_k c[k] z^k via the balanced companion matrix.  The
// polynomial degree is deduced from the trailing nonzero coefficient.
std::vector<cplx> polynomial_roots(const Eigen::VectorXcd& coeffs,
                                   double drop_tol) {
  int degree = static_cast<int>(coeffs.size()) - 1;
  const double scale = coeffs.cwiseAbs().maxCoeff();
  while (degree > 0 && std::abs(coeffs[degree]) <= drop_tol * scale) --degree;
  std::vector<cplx> roots;
  if (degree == 0) return roots;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
  for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < degree; ++i) {
    companion(i, degree - 1) = -coeffs[i] / coeffs[degree];
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
  roots.reserve(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) roots.push_back(es.eigenvalues()[i]);
  return roots;
}

// Merge roots closer than a relative tolerance into their centroid.
std::vector<cplx> cluster_roots(std::vector<cplx> roots, double rel_tol) {
  std::vector<cplx> merged;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    cplx sum = roots[i];
    int count = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j]) continue;
      const double scale =
          std::max({1.0, std::abs(roots[i]), std::abs(roots[j])});
      if (std::abs(roots[i] - roots[j]) <= rel_tol * scale) {
        sum += roots[j];
        ++count;
        used[j] = true;
      }
    }
    const cplx centroid = sum / static_cast<double>(count);
    for (int k = 0; k < count; ++k) merged.push_back(centroid);
  }
  return merged;
}

Star star_from_stereographic(const cplx& z) {
  Star s;
  s.theta = 2.0 * std::atan(std::abs(z));
  s.phi = std::abs(z) > 0.0 ? std::arg(z) : 0.0;
  if (s.phi < 0.0) s.phi += 2.0 * M_PI;
  return s;
}

}  // namespace

MajoranaConstellation majorana_stars(const FockState& state) {
  if (!state.is_pure()) fail_argument("majorana_stars needs a pure state");
  const int layer = single_layer(state);
  if (layer < 0) fail_argument("majorana_stars needs a fixed-N state");
  if (layer == 0) return {};

  Eigen::VectorXcd coeffs(layer + 1);
  const auto& amp = state.amplitudes();
  for (int m = 0; m <= layer; ++m) {
    coeffs[m] = amp[state.basis().index(m, layer - m)] *
                std::sqrt(binomial(layer, m));
  }
  auto roots = polynomial_roots(coeffs, 1e-13);
  roots = cluster_roots(std::move(roots), 1e-7);

  MajoranaConstellation stars;
  stars.reserve(static_cast<std::size_t>(layer));
  // Star coordinate is the negated root; lost leading degrees are stars at
  // the south pole (the left-circular mode direction).
  for (const auto& root : roots) stars.push_back(star_from_stereographic(-root));
  while (static_cast<int>(stars.size()) < layer) {
    stars.push_back(Star{M_PI, 0.0});
  }
  std::sort(stars.begin(), stars.end(), [](const Star& a, const Star& b) {
    return a.theta != b.theta ? a.theta < b.theta : a.phi < b.phi;
  });
  return stars;
}

FockState state_from_stars(const FockBasis& basis,
                           const MajoranaConstellation& stars) {
  const int layer = static_cast<int>(stars.size());
  if (layer > basis.n_max()) fail_argument("constellation exceeds n_max");
  // Finite stars contribute factors (a^dag + z_k b^dag); stars at the south
  // pole contribute bare b^dag factors.
  std::vector<cplx> finite;
  int at_pole = 0;
  for (const auto& star : stars) {
    if (std::abs(star.theta - M_PI) < 1e-12) {
      ++at_pole;
    } else {
      finite.push_back(std::tan(0.5 * star.theta) *
                       std::exp(cplx(0.0, star.phi)));
    }
  }
  const int degree = static_cast<int>(finite.size());
  // Elementary symmetric polynomials e_j(finite) by iterated convolution.
  Eigen::VectorXcd esym = Eigen::VectorXcd::Zero(degree + 1);
  esym[0] = 1.0;
  for (int k = 0; k < degree; ++k) {
    for (int j = k + 1; j >= 1; --j) esym[j] += finite[static_cast<std::size_t>(k)] * esym[j - 1];
  }
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(basis.dim());
  for (int j = 0; j <= degree; ++j) {
    const int m = degree - j;                 // right-circular photons
    const int n = j + at_pole;                // left-circular photons
    amp[basis.index(m, n)] =
        esym[j] * std::sqrt(std::tgamma(m + 1.0) * std::tgamma(n + 1.0));
  }
  const double norm = amp.norm();
  if (norm == 0.0) fail_argument("degenerate constellation produced a null state");
  amp /= norm;
  return FockState::pure(basis, std::move(amp));
}

double angular_distance(const Star& a, const Star& b) {
  const double dot =
      std::clamp(a.direction().dot(b.direction()), -1.0, 1.0);
  return std::acos(dot);
}

double constellation_distance(const MajoranaConstellation& a,
                              const MajoranaConstellation& b) {
  if (a.size() != b.size()) fail_argument("constellation size mismatch");
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const auto& star : a) {
    double best = -1.0;
    std::size_t best_idx = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = angular_distance(star, b[j]);
      if (best < 0.0 || d < best) {
        best = d;
        best_idx = j;
      }
    }
    used[best_idx] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace polab
