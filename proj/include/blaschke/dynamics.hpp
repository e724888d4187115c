#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blaschke/blaschke_product.hpp"
#include "blaschke/fibers.hpp"
#include "blaschke/moebius.hpp"
#include "blaschke/prng.hpp"

namespace blaschke {

struct tolerances {
  double boundary_tol = 1e-8;   ///< |w0| vs 1 decision width
  double parabolic_tol = 1e-8;  ///< multiplier vs 1 and petal-split width
};

/// Raised when a measurement falls inside the tolerance band between two
/// classifications; carries the competing verdicts and the margins, because
/// silently tie-breaking an ill-posed comparison would hide the problem.
class ambiguous_classification : public std::runtime_error {
 public:
  ambiguous_classification(const std::string& what, std::string margins)
      : std::runtime_error(what + " [" + margins + "]"), margins(std::move(margins)) {}
  std::string margins;
};

enum class point_location { interior, boundary };

/// The distinguished fixed point: the unique fixed point in the closed disk
/// with |multiplier| <= 1.
struct fixed_point_report {
  cplx point;
  cplx multiplier;
  point_location location;
  std::optional<cplx> second_derivative;  ///< set when |multiplier - 1| < parabolic_tol
  std::optional<cplx> third_derivative;   ///< set alongside second_derivative
  double margin_multiplier;               ///< | |multiplier| - 1 |
  double margin_location;                 ///< | |w0| - 1 |
  int multiplicity;                       ///< fixed-point polynomial cluster size
};

enum class dynamics_class {
  interior_fixed,
  boundary_attracting,
  parabolic_two_petals,
  parabolic_one_petal
};

enum class julia_class { full_circle, cantor };

inline const char* to_string(dynamics_class c) {
  switch (c) {
    case dynamics_class::interior_fixed: return "InteriorFixed";
    case dynamics_class::boundary_attracting: return "BoundaryAttracting";
    case dynamics_class::parabolic_two_petals: return "ParabolicTwoPetals";
    case dynamics_class::parabolic_one_petal: return "ParabolicOnePetal";
  }
  return "?";
}

inline const char* to_string(julia_class c) {
  return c == julia_class::full_circle ? "FullCircle" : "Cantor";
}

/// Selects the distinguished fixed point from the fixed-point list.  Degree-1
/// elliptic rotations and the identity have no such point and are redirected
/// to moebius_classify; a genuinely ambiguous selection (two candidates
/// passing the multiplier test) is surfaced as an error, never tie-broken.
inline fixed_point_report denjoy_wolff(const finite_blaschke_product& B,
                                       const tolerances& tol = {}) {
  if (B.degree() == 1) {
    const auto rep = moebius_classify(B);
    if (rep.kind == moebius_kind::identity || rep.kind == moebius_kind::elliptic_finite_order ||
        rep.kind == moebius_kind::elliptic_infinite_or_long)
      throw std::invalid_argument(
          "denjoy_wolff: elliptic/identity Moebius maps have no distinguished fixed point; "
          "use moebius_classify");
  }

  const fixed_point_list fps = fixed_points(B);
  std::vector<fixed_point_info> candidates;
  for (const auto& fp : fps.points)
    if (std::abs(fp.point) <= 1.0 + 1e-9 && std::abs(fp.multiplier) <= 1.0 + 1e-9)
      candidates.push_back(fp);

  if (candidates.empty())
    throw std::runtime_error("denjoy_wolff: no fixed point with |multiplier| <= 1 in the "
                             "closed disk (numerical failure)");
  if (candidates.size() > 1) {
    std::ostringstream os;
    for (const auto& c : candidates)
      os << " (" << c.point.real() << (c.point.imag() < 0 ? "" : "+") << c.point.imag()
         << "i, |mult| = " << std::abs(c.multiplier) << ")";
    throw ambiguous_classification("denjoy_wolff: multiple candidates" + os.str(),
                                   "candidates = " + std::to_string(candidates.size()));
  }

  const fixed_point_info& sel = candidates.front();
  fixed_point_report rep;
  rep.point = sel.point;
  rep.multiplier = sel.multiplier;
  rep.multiplicity = sel.multiplicity;
  rep.margin_location = std::abs(std::abs(sel.point) - 1.0);
  rep.margin_multiplier = std::abs(std::abs(sel.multiplier) - 1.0);
  rep.location = std::abs(sel.point) < 1.0 - tol.boundary_tol ? point_location::interior
                                                              : point_location::boundary;
  if (std::abs(sel.multiplier - cplx{1.0, 0.0}) < tol.parabolic_tol) {
    const auto jet = B.taylor_jet(sel.point, 3);
    rep.second_derivative = 2.0 * jet[2];
    rep.third_derivative = 6.0 * jet[3];
  }
  return rep;
}

namespace detail {

/// Ambiguity rule shared by all classification thresholds: a measurement m
/// compared against threshold t is undecidable when it falls inside the
/// factor-two band [t/2, 2t].
inline bool in_gray_band(double m, double t) { return m >= t / 2.0 && m <= 2.0 * t; }

}  // namespace detail

/// Four-way boundary-dynamics classification of a degree >= 2 product.
/// Thresholds: interior iff 1 - |w0| > boundary_tol; attracting iff
/// multiplier < 1 - parabolic_tol; two petals iff |B''(w0)| < parabolic_tol.
/// Measurements inside the factor-two band around any threshold raise
/// ambiguous_classification with both verdicts and margins.
inline dynamics_class classify_dynamics(const finite_blaschke_product& B,
                                        const tolerances& tol = {},
                                        std::string* warning = nullptr) {
  if (B.degree() < 2)
    throw std::invalid_argument("classify_dynamics: degree must be >= 2");
  const fixed_point_report rep = denjoy_wolff(B, tol);

  const double dist = 1.0 - std::abs(rep.point);
  if (detail::in_gray_band(dist, tol.boundary_tol))
    throw ambiguous_classification(
        "classify_dynamics: InteriorFixed vs boundary classes",
        "1-|w0| = " + std::to_string(dist) + ", boundary_tol = " + std::to_string(tol.boundary_tol));
  if (dist > tol.boundary_tol) return dynamics_class::interior_fixed;

  const double mu_gap = 1.0 - std::abs(rep.multiplier);
  if (detail::in_gray_band(std::abs(mu_gap), tol.parabolic_tol))
    throw ambiguous_classification(
        "classify_dynamics: BoundaryAttracting vs parabolic classes",
        "1-|mult| = " + std::to_string(mu_gap) +
            ", parabolic_tol = " + std::to_string(tol.parabolic_tol));
  if (mu_gap > tol.parabolic_tol) return dynamics_class::boundary_attracting;

  // parabolic: split on the second derivative
  const auto jet = B.taylor_jet(rep.point, 3);
  const double dd = std::abs(2.0 * jet[2]);
  if (detail::in_gray_band(dd, tol.parabolic_tol))
    throw ambiguous_classification(
        "classify_dynamics: ParabolicTwoPetals vs ParabolicOnePetal",
        "|B''(w0)| = " + std::to_string(dd) +
            ", parabolic_tol = " + std::to_string(tol.parabolic_tol));
  if (dd < tol.parabolic_tol) {
    if (warning && std::abs(6.0 * jet[3]) < tol.parabolic_tol)
      *warning = "two-petal criterion presumes a nonvanishing third derivative; "
                 "|B'''(w0)| is below parabolic_tol";
    return dynamics_class::parabolic_two_petals;
  }
  return dynamics_class::parabolic_one_petal;
}

/// Julia-set dichotomy for degree >= 2: the circle itself for interior or
/// two-petal-parabolic dynamics, a Cantor subset of the circle otherwise.
inline julia_class julia_type(const finite_blaschke_product& B, const tolerances& tol = {}) {
  if (B.degree() < 2)
    throw std::invalid_argument("julia_type: degree must be >= 2 (the dichotomy assumes it)");
  const dynamics_class c = classify_dynamics(B, tol);
  return (c == dynamics_class::interior_fixed || c == dynamics_class::parabolic_two_petals)
             ? julia_class::full_circle
             : julia_class::cantor;
}

enum class algebra_structure { matrix_algebra_over_circle, crossed_product_by_z, cuntz_pimsner };

struct k_group {
  int rank;
  int torsion_order;  ///< 0 = no torsion summand; m >= 1 = an extra Z/mZ (m = 1 is trivial)
  std::string description;
};

/// Structural description of the operator algebra attached to B: its K-groups,
/// simplicity (degree >= 2), and the isomorphism class dictated by the degree
/// and dynamics.  The K-groups are a decision table keyed on (degree, rotation
/// order, Julia type); they are fully determined by those data.
struct algebra_report {
  algebra_structure structure;
  std::optional<int> rotation_order;            ///< q for matrix_algebra_over_circle
  std::optional<julia_class> julia;             ///< degree >= 2 only
  std::optional<bool> simple;                   ///< degree >= 2 only
  std::optional<dynamics_class> dynamics;       ///< degree >= 2 only
  k_group k0;
  k_group k1;
  std::optional<std::pair<int, int>> identity_class;  ///< [1] in K0; (0,1) for degree >= 2
  std::optional<std::string> quotient_note;
};

inline algebra_report make_algebra_report(const finite_blaschke_product& B, int q_max = 10000,
                                          const tolerances& tol = {}) {
  algebra_report rep;
  const int n = B.degree();
  if (n == 1) {
    const auto mb = moebius_classify(B, q_max);
    if (mb.kind == moebius_kind::elliptic_finite_order || mb.kind == moebius_kind::identity) {
      const int q = mb.kind == moebius_kind::identity ? 1 : mb.order;
      rep.structure = algebra_structure::matrix_algebra_over_circle;
      rep.rotation_order = q;
      rep.k0 = {1, 0, "Z"};
      rep.k1 = {1, 0, "Z"};
    } else {
      rep.structure = algebra_structure::crossed_product_by_z;
      rep.k0 = {2, 0, "Z^2"};
      rep.k1 = {2, 0, "Z^2"};
    }
    return rep;
  }

  const dynamics_class dc = classify_dynamics(B, tol);
  rep.dynamics = dc;
  rep.julia = (dc == dynamics_class::interior_fixed || dc == dynamics_class::parabolic_two_petals)
                  ? julia_class::full_circle
                  : julia_class::cantor;
  rep.simple = rep.julia == julia_class::full_circle;
  rep.structure = algebra_structure::cuntz_pimsner;
  rep.k0 = {1, n - 1, n == 2 ? "Z (+) Z/1Z = Z" : "Z (+) Z/" + std::to_string(n - 1) + "Z"};
  rep.k1 = {1, 0, "Z"};
  rep.identity_class = std::make_pair(0, 1);
  if (dc == dynamics_class::boundary_attracting)
    rep.quotient_note = "quotient by the Julia-set ideal is isomorphic to the Cuntz algebra O_" +
                        std::to_string(n);
  return rep;
}

/// Backward-orbit sample: angles visited by the random inverse-branch walk.
struct orbit_sample {
  std::vector<double> angles;  ///< sorted, in [0, 2pi)
  std::uint64_t seed;
  int burn_in;
  int count;
  double worst_step_residual;     ///< max over steps of |B(z_{t+1}) - z_t|
  double worst_circle_deviation;  ///< max over samples of ||z| - 1|
};

/// Random backward orbit: starting from the fixed non-exceptional circle
/// point e^{0.7i}, repeatedly jump to a uniformly chosen preimage on the
/// circle (splitmix64(seed) drives the branch choice); the first burn_in
/// points are discarded and the next `count` angles are recorded and sorted.
/// Samples accumulate on the Julia set: dense when it is the whole circle
/// (away from parabolic points -- see max_gap), gap-ridden when it is a
/// Cantor set.
inline orbit_sample backward_sample(const finite_blaschke_product& B, int count,
                                    std::uint64_t seed, int burn_in) {
  if (B.degree() < 2) throw std::invalid_argument("backward_sample: degree must be >= 2");
  if (count < 100) throw std::invalid_argument("backward_sample: count must be >= 100");
  if (burn_in < 50) throw std::invalid_argument("backward_sample: burn_in must be >= 50");

  splitmix64 rng(seed);
  const std::size_t n = static_cast<std::size_t>(B.degree());
  cplx z{std::cos(0.7), std::sin(0.7)};

  orbit_sample s;
  s.seed = seed;
  s.burn_in = burn_in;
  s.count = count;
  s.worst_step_residual = 0.0;
  s.worst_circle_deviation = 0.0;
  s.angles.reserve(static_cast<std::size_t>(count));

  for (int t = 0; t < burn_in + count; ++t) {
    const fiber_report fib = preimages(B, z);
    const cplx znext = fib.points[rng.below(n)];
    s.worst_step_residual = std::max(s.worst_step_residual, std::abs(B(znext) - z));
    s.worst_circle_deviation =
        std::max(s.worst_circle_deviation, std::abs(std::abs(znext) - 1.0));
    z = znext;
    if (t >= burn_in) {
      double a = std::arg(z);
      if (a < 0.0) a += 2.0 * std::numbers::pi;
      s.angles.push_back(a);
    }
  }
  std::sort(s.angles.begin(), s.angles.end());
  return s;
}

/// Largest circular gap between consecutive sorted sample angles,
/// wrap-around included.
inline double max_gap(const orbit_sample& s) {
  if (s.angles.size() < 2) throw std::invalid_argument("max_gap: need at least two angles");
  double g = s.angles.front() + 2.0 * std::numbers::pi - s.angles.back();
  for (std::size_t i = 1; i < s.angles.size(); ++i)
    g = std::max(g, s.angles[i] - s.angles[i - 1]);
  return g;
}

}  // namespace blaschke
