#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "blaschke/polynomial.hpp"

namespace blaschke {

/// Thrown when the simultaneous iteration fails to converge.
class rootfinding_error : public std::runtime_error {
 public:
  rootfinding_error(const std::string& what, double worst_residual)
      : std::runtime_error(what + " (worst relative residual " + format(worst_residual) + ")"),
        worst_residual(worst_residual) {}
  double worst_residual;

 private:
  static std::string format(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
  }
};

/// A cluster of numerically coincident roots: the centroid and how many
/// roots merged into it.
struct root_cluster {
  cplx center;
  int multiplicity;
};

namespace detail {

/// One full Aberth-Ehrlich correction sweep; returns the largest step taken.
inline double aberth_sweep(const polynomial& p, const polynomial& dp, std::vector<cplx>& z) {
  const std::size_t n = z.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx pv = p(z[i]);
    const cplx dv = dp(z[i]);
    cplx newton;
    if (std::abs(dv) > 1e-300) {
      newton = pv / dv;
    } else {
      // derivative vanished (exact multiple-root hit): nudge off the
      // stationary point; the repulsion term will separate the cluster.
      newton = cplx{1e-12, 1e-12};
    }
    cplx repulsion{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const cplx d = z[i] - z[j];
      if (std::abs(d) > 1e-300) repulsion += 1.0 / d;
    }
    const cplx denom = 1.0 - newton * repulsion;
    const cplx step = std::abs(denom) > 1e-300 ? newton / denom : newton;
    z[i] -= step;
    worst = std::max(worst, std::abs(step));
  }
  return worst;
}

}  // namespace detail

/// All complex roots of p, with multiplicity, by Aberth-Ehrlich simultaneous
/// iteration from perturbed-circle initial guesses, followed by a short
/// Newton polish of each simple root.  Each root's residual |p(z)| is
/// checked against 1e-10 times max(largest coefficient modulus, evaluation
/// majorant sum_k |c_k| |z|^k at that root) -- the scale at which evaluation
/// rounding noise lives, so the gate stays meaningful for roots of any
/// modulus (an absolute gate tied to coefficient size alone would
/// spuriously reject machine-accurate roots far outside the unit disk,
/// where the majorant dwarfs the largest coefficient).  Non-convergence
/// throws rootfinding_error carrying the worst relative residual.
inline std::vector<cplx> poly_roots(const polynomial& p_in) {
  const polynomial p = p_in.trimmed();
  const int n = p.degree();
  if (n < 1) throw std::invalid_argument("poly_roots: degree must be >= 1");
  const auto& c = p.coeffs();

  double maxcoeff = 0.0;
  for (const auto& a : c) maxcoeff = std::max(maxcoeff, std::abs(a));

  // Initial guesses: circle of radius ~ geometric-mean root size, angular
  // offset 0.41 rad so symmetric configurations (conjugate pairs, roots of
  // unity) do not start on their own symmetry axes.
  const double an = std::abs(c.back());
  const double a0 = std::abs(c.front());
  double radius = a0 > 1e-300 ? std::pow(a0 / an, 1.0 / n) : 0.5;
  radius = std::clamp(radius, 1e-3, 1.0 + a0 / an);
  std::vector<cplx> z(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double th = 2.0 * std::numbers::pi * i / n + 0.41;
    z[static_cast<std::size_t>(i)] =
        radius * (1.0 + 0.05 * i / n) * cplx{std::cos(th), std::sin(th)};
  }

  const polynomial dp = p.derivative();
  double worst_step = 1.0;
  for (int sweep = 0; sweep < 500 && worst_step > 1e-14; ++sweep) {
    worst_step = detail::aberth_sweep(p, dp, z);
    // relative-to-position tolerance
    double scale = 1.0;
    for (const auto& zi : z) scale = std::max(scale, std::abs(zi));
    if (worst_step <= 1e-14 * scale) break;
  }

  // Newton polish (helps simple roots to full precision; stalls harmlessly
  // on multiple roots, which the caller merges by cluster).
  for (auto& zi : z) {
    for (int it = 0; it < 5; ++it) {
      const cplx dv = dp(zi);
      if (std::abs(dv) < 1e-12 * maxcoeff) break;
      const cplx step = p(zi) / dv;
      if (std::abs(step) > 0.5) break;
      zi -= step;
      if (std::abs(step) < 1e-16 * (1.0 + std::abs(zi))) break;
    }
  }

  double worst_rel = 0.0;
  for (const auto& zi : z) {
    const double az = std::abs(zi);
    double majorant = 0.0, zpow = 1.0;
    for (const auto& ck : c) {
      majorant += std::abs(ck) * zpow;
      zpow *= az;
    }
    // the scale floor is maxcoeff, not the majorant alone: for a pure power
    // z^m the single-term majorant equals |p| identically and would declare
    // every point non-converged
    worst_rel = std::max(worst_rel, std::abs(p(zi)) / std::max(majorant, maxcoeff));
  }
  // Multiple roots legitimately have residual ~ (cluster radius)^m; the
  // 1e-10 gate is generous enough for clusters of multiplicity up to ~6 at
  // the double-root tolerance.
  if (worst_rel > 1e-10)
    throw rootfinding_error("poly_roots: iteration did not converge", worst_rel);
  return z;
}

/// Newton refinement of a multiple root: a root of multiplicity m of p is a
/// simple root of p^{(m-1)}, where Newton converges quadratically to machine
/// precision instead of stalling at the eps^(1/m) noise floor of p itself.
inline cplx refine_multiple_root(const polynomial& p, cplx z, int multiplicity) {
  polynomial q = p;
  for (int i = 1; i < multiplicity; ++i) q = q.derivative();
  const polynomial dq = q.derivative();
  for (int it = 0; it < 8; ++it) {
    const cplx dv = dq(z);
    if (std::abs(dv) < 1e-300) break;
    const cplx step = q(z) / dv;
    if (std::abs(step) > 1.0) break;  // cluster was misjudged; keep the centroid
    z -= step;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
  }
  return z;
}

/// Greedy merge of roots lying within `radius` of each other into centroid
/// clusters with multiplicity.  Used for multiple-root (critical value)
/// reporting.  The raw centroid of an order-m Aberth cluster is only
/// ~radius-accurate, so callers holding the polynomial should follow up with
/// refine_multiple_root.
inline std::vector<root_cluster> merge_root_clusters(std::vector<cplx> roots,
                                                     double radius = 1e-6) {
  std::vector<root_cluster> out;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    // grow the cluster transitively
    std::vector<std::size_t> members{i};
    used[i] = true;
    for (std::size_t m = 0; m < members.size(); ++m) {
      for (std::size_t j = 0; j < roots.size(); ++j) {
        if (used[j]) continue;
        if (std::abs(roots[j] - roots[members[m]]) <= radius) {
          used[j] = true;
          members.push_back(j);
        }
      }
    }
    cplx centroid{0.0, 0.0};
    for (auto m : members) centroid += roots[m];
    centroid /= static_cast<double>(members.size());
    out.push_back({centroid, static_cast<int>(members.size())});
  }
  return out;
}

}  // namespace blaschke
