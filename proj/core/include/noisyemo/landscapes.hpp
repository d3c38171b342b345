#pragma once

#include <span>
#include <string>
#include <vector>

#include "noisyemo/random.hpp"
#include "noisyemo/types.hpp"

namespace noisyemo {

enum class Family { multi_sphere, diffraction_grating };

enum class NoiseKind { none, decision_additive_gaussian };

/// Gaussian disturbance added independently to every decision coordinate.
/// `strength` is the per-coordinate variance (eps^2).
struct NoiseModel {
  NoiseKind kind = NoiseKind::none;
  double strength = 0.0;

  static NoiseModel none() { return {}; }
  static NoiseModel gaussian(double variance) { return {NoiseKind::decision_additive_gaussian, variance}; }

  /// Variance actually applied; zero for kind == none regardless of strength.
  double variance() const noexcept { return kind == NoiseKind::none ? 0.0 : strength; }
  bool operator==(const NoiseModel&) const = default;
};

/// Noise grid used throughout the study.
inline constexpr double kNoiseGrid[] = {0.001, 0.005, 0.01, 0.02, 0.05};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const noexcept { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

/// Test-problem instance. Evaluation accepts any real vector; `bounds` is the
/// initialization box (and the clipping box for the bounded variation
/// operators of NSGA-II / SMS-EMOA).
struct LandscapeSpec {
  Family family = Family::multi_sphere;
  int n = 2;
  int m = 2;
  std::vector<Sense> senses;
  std::vector<Interval> bounds;

  // diffraction grating
  double slit_width = 1.0;    // b
  double slit_spacing = 4.0;  // h
  std::vector<double> positions;  // absolute screen coordinates q_1..q_m

  // multi-sphere: c_i = e_i
  std::vector<DecisionVector> centers;

  NoiseModel noise;

  static LandscapeSpec multi_sphere(int n, int m = 2, NoiseModel noise = {});
  static LandscapeSpec diffraction_grating(int n, std::vector<double> positions, double slit_width = 1.0,
                                           double slit_spacing = 4.0, NoiseModel noise = {});
  /// The bi-objective study instance: q = (0, pi/4), b = 1, h = 4.
  static LandscapeSpec grating_study_instance(int n, NoiseModel noise = {});

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
  LandscapeSpec without_noise() const;
  std::string label() const;

  bool operator==(const LandscapeSpec&) const = default;
};

/// Screen period of the interference pattern, 2*pi/h.
double grating_period(double slit_spacing) noexcept;

/// Unnormalized sinc: sin(x)/x with sinc(0) = 1.
double sinc(double x) noexcept;

ObjectiveVector eval_multisphere(std::span<const double> x, const LandscapeSpec& spec);

/// Analytic bi-sphere front f2(f1) for f1 in [0, 2]; throws std::domain_error outside.
double multisphere_front(double f1);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Mean and variance of a sphere objective value f perceived under
/// decision noise of variance eps2 in n dimensions.
Moments multisphere_perceived_moments(double f, int n, double eps2);

/// Far-field intensity at screen position q for slit phases `phases`.
double eval_grating_intensity(double q, std::span<const double> phases, double slit_width, double slit_spacing);

/// Raw interference sum |sum_k exp(i q h k) exp(i phi_k)|^2, i.e. the
/// intensity without the 1/n^2 and sinc^2 factors.
double grating_raw_sum(double q, std::span<const double> phases, double slit_spacing);

ObjectiveVector eval_grating_problem(std::span<const double> phases, const LandscapeSpec& spec);

/// Noise-free evaluation dispatching on the family.
ObjectiveVector evaluate(const LandscapeSpec& spec, std::span<const double> x);

/// Mean intensity when phases are disturbed by N(0, eps2) per slit.
double grating_perceived_mean(double q, std::span<const double> phases, double slit_width, double slit_spacing,
                              double eps2);

/// Variance of the raw interference sum under phase noise, by explicit
/// summation over the six index-pair partitions.
double grating_raw_variance(double q, std::span<const double> phases, double slit_spacing, double eps2);

/// Variance of the perceived intensity: sinc^4(qb/2)/n^4 times the raw variance.
double grating_perceived_variance(double q, std::span<const double> phases, double slit_width, double slit_spacing,
                                  double eps2);

struct RawVarianceBounds {
  double general = 0.0;      // n(n-1)[(1-e^{-4e}) + 2e^{-e}(1-e^{-2e})(n-2)]
  double small_noise = 0.0;  // 4n(n-1)^2 eps2
};
RawVarianceBounds grating_raw_variance_bounds(int n, double eps2);

/// x + N(0, eps2 I); identity for NoiseKind::none.
DecisionVector apply_decision_noise(std::span<const double> x, const NoiseModel& model, RandomStream& rng);

/// One noisy evaluation: the landscape evaluated at a disturbed copy of x.
ObjectiveVector noisy_evaluate(const LandscapeSpec& spec, std::span<const double> x, RandomStream& rng);

/// Phase values wrapped into [0, 2pi), used only for reporting.
DecisionVector wrap_phases(std::span<const double> phases);

/// Analytic Pareto front of the bi-objective grating instance with
/// q = (0, pi/h): in raw-sum space j1 + j2 = n^2 + delta, j_i in [delta, n^2].
class GratingFront {
 public:
  GratingFront(int n, double slit_width, double slit_spacing);

  int n() const noexcept { return n_; }
  int delta() const noexcept { return delta_; }
  /// sinc^2(q2 b / 2), the scale of the second intensity.
  double second_scale() const noexcept { return scale_; }
  double raw_total() const noexcept { return static_cast<double>(n_) * n_ + delta_; }

  /// Raw sums -> intensities (I1, I2).
  ObjectiveVector to_intensity(double j1, double j2) const;
  /// Whether the intensity point lies on the front within `tol` in raw-sum units.
  bool contains(const ObjectiveVector& intensities, double tol = 1e-9) const;

  /// Pareto-optimal phases: even slits share phase `base`, odd slits `base + theta`.
  DecisionVector phases(double theta, double base = 0.0) const;
  /// Intensities of phases(theta).
  ObjectiveVector point(double theta) const;

  /// `count` points evenly spaced in I1 across the front, ascending in I1.
  std::vector<ObjectiveVector> sample(int count) const;
  /// Hypervolume of the continuous front with respect to (0, 0).
  double hypervolume() const;

 private:
  int n_;
  int delta_;
  double slit_width_;
  double slit_spacing_;
  double scale_;
};

/// Analytic grating front. Throws NotImplementedError for anything other than
/// the bi-objective instance b = 1, h = 4, q = (0, pi/4).
GratingFront grating_true_front(const LandscapeSpec& spec);
GratingFront grating_true_front(int n, double slit_width = 1.0, double slit_spacing = 4.0);

/// Evenly spaced reference population along the analytic front (ascending f1).
std::vector<ObjectiveVector> analytic_front(const LandscapeSpec& spec, int count);

/// Hypervolume of the continuous analytic front w.r.t. the study reference
/// point of the family: (2, 2) for the bi-sphere, (0, 0) for the grating.
double analytic_front_hypervolume(const LandscapeSpec& spec);

/// Study reference point of the family.
ObjectiveVector default_reference_point(const LandscapeSpec& spec);

}  // namespace noisyemo
