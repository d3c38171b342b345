#include "noisyemo/landscapes.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace noisyemo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_dimension(std::span<const double> x, const LandscapeSpec& spec) {
  if (x.size() != static_cast<std::size_t>(spec.n)) {
    std::ostringstream msg;
    msg << "decision vector has " << x.size() << " coordinates, landscape expects " << spec.n;
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

std::string to_string(Sense sense) { return sense == Sense::minimize ? "min" : "max"; }

Sense sense_from_string(const std::string& text) {
  if (text == "min" || text == "minimize") return Sense::minimize;
  if (text == "max" || text == "maximize") return Sense::maximize;
  throw std::invalid_argument("unknown sense '" + text + "'");
}

LandscapeSpec LandscapeSpec::multi_sphere(int n, int m, NoiseModel noise) {
  LandscapeSpec spec;
  spec.family = Family::multi_sphere;
  spec.n = n;
  spec.m = m;
  spec.senses.assign(static_cast<std::size_t>(std::max(m, 0)), Sense::minimize);
  spec.bounds.assign(static_cast<std::size_t>(std::max(n, 0)), Interval{-10.0, 10.0});
  for (int i = 0; i < m && i < n; ++i) {
    DecisionVector c(static_cast<std::size_t>(n), 0.0);
    c[static_cast<std::size_t>(i)] = 1.0;
    spec.centers.push_back(std::move(c));
  }
  spec.noise = noise;
  spec.validate();
  return spec;
}

LandscapeSpec LandscapeSpec::diffraction_grating(int n, std::vector<double> positions, double slit_width,
                                                 double slit_spacing, NoiseModel noise) {
  LandscapeSpec spec;
  spec.family = Family::diffraction_grating;
  spec.n = n;
  spec.m = static_cast<int>(positions.size());
  spec.senses.assign(positions.size(), Sense::maximize);
  spec.bounds.assign(static_cast<std::size_t>(std::max(n, 0)), Interval{0.0, kTwoPi});
  spec.slit_width = slit_width;
  spec.slit_spacing = slit_spacing;
  spec.positions = std::move(positions);
  spec.noise = noise;
  spec.validate();
  return spec;
}

LandscapeSpec LandscapeSpec::grating_study_instance(int n, NoiseModel noise) {
  return diffraction_grating(n, {0.0, std::numbers::pi / 4.0}, 1.0, 4.0, noise);
}

void LandscapeSpec::validate() const {
  if (n < 2) throw std::invalid_argument("landscape dimension n must be >= 2");
  if (m < 2) throw std::invalid_argument("landscape objective count m must be >= 2");
  if (senses.size() != static_cast<std::size_t>(m)) throw std::invalid_argument("one sense per objective required");
  if (bounds.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("one bound interval per coordinate required");
  for (const auto& b : bounds) {
    if (!(b.lo < b.hi)) throw std::invalid_argument("bound interval must satisfy lo < hi");
  }
  if (noise.kind != NoiseKind::none && !(noise.strength >= 0.0)) {
    throw std::invalid_argument("noise strength must be >= 0");
  }
  if (family == Family::multi_sphere) {
    if (m > n) throw std::invalid_argument("multi-sphere requires m <= n");
    if (centers.size() != static_cast<std::size_t>(m)) throw std::invalid_argument("multi-sphere requires m centers");
    for (const auto& c : centers) {
      if (c.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("sphere center dimension mismatch");
    }
    for (auto s : senses) {
      if (s != Sense::minimize) throw std::invalid_argument("multi-sphere objectives are minimized");
    }
  } else {
    if (!(slit_width > 0.0) || !(slit_spacing > 0.0)) {
      throw std::invalid_argument("grating slit width and spacing must be positive");
    }
    if (positions.size() != static_cast<std::size_t>(m)) throw std::invalid_argument("grating requires m screen positions");
    for (auto s : senses) {
      if (s != Sense::maximize) throw std::invalid_argument("grating intensities are maximized");
    }
  }
}

LandscapeSpec LandscapeSpec::without_noise() const {
  LandscapeSpec copy = *this;
  copy.noise = NoiseModel::none();
  return copy;
}

std::string LandscapeSpec::label() const {
  std::ostringstream out;
  out << (family == Family::multi_sphere ? "sphere" : "grating") << "-m" << m << "-n" << n;
  return out.str();
}

double grating_period(double slit_spacing) noexcept { return kTwoPi / slit_spacing; }

double sinc(double x) noexcept {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

ObjectiveVector eval_multisphere(std::span<const double> x, const LandscapeSpec& spec) {
  if (spec.family != Family::multi_sphere) throw std::invalid_argument("eval_multisphere: not a multi-sphere spec");
  require_dimension(x, spec);
  std::vector<double> f(static_cast<std::size_t>(spec.m), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& c = spec.centers[i];
    double sum = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double d = x[j] - c[j];
      sum += d * d;
    }
    f[i] = sum;
  }
  return ObjectiveVector(std::move(f), spec.senses);
}

double multisphere_front(double f1) {
  if (!(f1 >= 0.0 && f1 <= 2.0)) throw std::domain_error("multisphere_front: f1 must lie in [0, 2]");
  const double t = 1.0 - std::sqrt(f1 / 2.0);
  return 2.0 * t * t;
}

Moments multisphere_perceived_moments(double f, int n, double eps2) {
  if (f < 0.0 || eps2 < 0.0 || n < 1) throw std::invalid_argument("multisphere_perceived_moments: bad arguments");
  return {f + n * eps2, 4.0 * eps2 * (f + 0.5 * n * eps2)};
}

double grating_raw_sum(double q, std::span<const double> phases, double slit_spacing) {
  if (phases.empty()) throw std::invalid_argument("grating intensity requires at least one phase");
  std::complex<double> field{0.0, 0.0};
  for (std::size_t k = 0; k < phases.size(); ++k) {
    field += std::polar(1.0, q * slit_spacing * static_cast<double>(k) + phases[k]);
  }
  return std::norm(field);
}

double eval_grating_intensity(double q, std::span<const double> phases, double slit_width, double slit_spacing) {
  if (phases.empty()) throw std::invalid_argument("grating intensity requires at least one phase");
  const double n = static_cast<double>(phases.size());
  const double s = sinc(q * slit_width / 2.0);
  return s * s * grating_raw_sum(q, phases, slit_spacing) / (n * n);
}

ObjectiveVector eval_grating_problem(std::span<const double> phases, const LandscapeSpec& spec) {
  if (spec.family != Family::diffraction_grating) {
    throw std::invalid_argument("eval_grating_problem: not a grating spec");
  }
  require_dimension(phases, spec);
  std::vector<double> f(spec.positions.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = eval_grating_intensity(spec.positions[i], phases, spec.slit_width, spec.slit_spacing);
  }
  return ObjectiveVector(std::move(f), spec.senses);
}

ObjectiveVector evaluate(const LandscapeSpec& spec, std::span<const double> x) {
  return spec.family == Family::multi_sphere ? eval_multisphere(x, spec) : eval_grating_problem(x, spec);
}

double grating_perceived_mean(double q, std::span<const double> phases, double slit_width, double slit_spacing,
                              double eps2) {
  if (eps2 < 0.0) throw std::invalid_argument("grating_perceived_mean: eps2 must be >= 0");
  const double n = static_cast<double>(phases.size());
  const double s = sinc(q * slit_width / 2.0);
  const double damp = std::exp(-eps2);
  return damp * eval_grating_intensity(q, phases, slit_width, slit_spacing) + s * s * (1.0 - damp) / n;
}

double grating_raw_variance(double q, std::span<const double> phases, double slit_spacing, double eps2) {
  if (eps2 < 0.0) throw std::invalid_argument("grating_raw_variance: eps2 must be >= 0");
  const int n = static_cast<int>(phases.size());
  if (n < 2) throw std::invalid_argument("grating_raw_variance: n must be >= 2");

  // Pair list (l > k) with a_lk = q h (l - k) + phi_l - phi_k.
  struct Pair {
    int l, k;
    double a;
  };
  std::vector<Pair> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      pairs.push_back({l, k, q * slit_spacing * (l - k) + phases[static_cast<std::size_t>(l)] -
                                 phases[static_cast<std::size_t>(k)]});
    }
  }

  const double e1 = std::exp(-eps2);
  const double e2 = std::exp(-2.0 * eps2);
  const double e4 = std::exp(-4.0 * eps2);

  // With S = sum_{l>k} cos(a_lk + noise), J = n + 2 S and VAR[J] = 4 (E[S^2] - E[S]^2).
  // Each ordered pair-of-pairs contributes E[Gamma] - E[T1] E[T2], where the
  // expectation of Gamma depends only on which indices the two pairs share.
  double lklk = 0.0, l_l_ = 0.0, l__l = 0.0, _k_k = 0.0, _kk_ = 0.0, indpt = 0.0;
  for (const auto& p1 : pairs) {
    const double c1 = std::cos(p1.a);
    for (const auto& p2 : pairs) {
      const double mean_product = e2 * c1 * std::cos(p2.a);
      const double sum = std::cos(p1.a + p2.a);
      const double diff = std::cos(p1.a - p2.a);
      if (p1.l == p2.l && p1.k == p2.k) {
        lklk += 0.5 * (1.0 + e4 * std::cos(2.0 * p1.a)) - mean_product;
      } else if (p1.l == p2.l) {
        l_l_ += 0.5 * e1 * (diff + e2 * sum) - mean_product;
      } else if (p1.k == p2.k) {
        _k_k += 0.5 * e1 * (diff + e2 * sum) - mean_product;
      } else if (p1.l == p2.k) {
        l__l += 0.5 * e1 * (sum + e2 * diff) - mean_product;
      } else if (p1.k == p2.l) {
        _kk_ += 0.5 * e1 * (sum + e2 * diff) - mean_product;
      } else {
        indpt += e2 * c1 * std::cos(p2.a) - mean_product;
      }
    }
  }
  const double variance = 4.0 * (lklk + l_l_ + l__l + _k_k + _kk_ + indpt);
  return std::max(variance, 0.0);
}

double grating_perceived_variance(double q, std::span<const double> phases, double slit_width, double slit_spacing,
                                  double eps2) {
  const double n = static_cast<double>(phases.size());
  const double s = sinc(q * slit_width / 2.0);
  const double s2 = s * s;
  return s2 * s2 / (n * n * n * n) * grating_raw_variance(q, phases, slit_spacing, eps2);
}

RawVarianceBounds grating_raw_variance_bounds(int n, double eps2) {
  const double nn = static_cast<double>(n);
  RawVarianceBounds b;
  b.general = nn * (nn - 1.0) *
              ((1.0 - std::exp(-4.0 * eps2)) + 2.0 * std::exp(-eps2) * (1.0 - std::exp(-2.0 * eps2)) * (nn - 2.0));
  b.small_noise = 4.0 * nn * (nn - 1.0) * (nn - 1.0) * eps2;
  return b;
}

DecisionVector apply_decision_noise(std::span<const double> x, const NoiseModel& model, RandomStream& rng) {
  DecisionVector out(x.begin(), x.end());
  if (model.kind == NoiseKind::none) return out;
  const double sd = std::sqrt(model.strength);
  for (auto& v : out) v += sd * rng.normal();
  return out;
}

ObjectiveVector noisy_evaluate(const LandscapeSpec& spec, std::span<const double> x, RandomStream& rng) {
  if (spec.noise.kind == NoiseKind::none) return evaluate(spec, x);
  const DecisionVector disturbed = apply_decision_noise(x, spec.noise, rng);
  return evaluate(spec, disturbed);
}

DecisionVector wrap_phases(std::span<const double> phases) {
  DecisionVector out(phases.begin(), phases.end());
  for (auto& p : out) {
    p = std::fmod(p, kTwoPi);
    if (p < 0.0) p += kTwoPi;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Grating front

GratingFront::GratingFront(int n, double slit_width, double slit_spacing)
    : n_(n), delta_(n % 2 == 0 ? 0 : 1), slit_width_(slit_width), slit_spacing_(slit_spacing) {
  if (n < 2) throw std::invalid_argument("GratingFront: n must be >= 2");
  if (!(slit_width > 0.0) || !(slit_spacing > 0.0)) throw std::invalid_argument("GratingFront: b, h must be > 0");
  const double s = sinc(std::numbers::pi / slit_spacing * slit_width / 2.0);
  scale_ = s * s;
}

ObjectiveVector GratingFront::to_intensity(double j1, double j2) const {
  const double nn = static_cast<double>(n_) * n_;
  return maximize({j1 / nn, scale_ * j2 / nn});
}

bool GratingFront::contains(const ObjectiveVector& p, double tol) const {
  if (p.size() != 2) return false;
  const double nn = static_cast<double>(n_) * n_;
  const double j1 = p[0] * nn;
  const double j2 = p[1] * nn / scale_;
  const double lo = static_cast<double>(delta_) - tol;
  const double hi = nn + tol;
  return j1 >= lo && j1 <= hi && j2 >= lo && j2 <= hi && std::abs(j1 + j2 - raw_total()) <= tol;
}

DecisionVector GratingFront::phases(double theta, double base) const {
  DecisionVector phi(static_cast<std::size_t>(n_));
  for (int k = 0; k < n_; ++k) phi[static_cast<std::size_t>(k)] = (k % 2 == 0) ? base : base + theta;
  return phi;
}

ObjectiveVector GratingFront::point(double theta) const {
  const auto phi = phases(theta);
  return maximize({eval_grating_intensity(0.0, phi, slit_width_, slit_spacing_),
                   eval_grating_intensity(std::numbers::pi / slit_spacing_, phi, slit_width_, slit_spacing_)});
}

std::vector<ObjectiveVector> GratingFront::sample(int count) const {
  std::vector<ObjectiveVector> out;
  if (count <= 0) return out;
  const double nn = static_cast<double>(n_) * n_;
  const double lo = static_cast<double>(delta_);
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.5 : static_cast<double>(i) / (count - 1);
    const double j1 = lo + t * (nn - lo);
    out.push_back(to_intensity(j1, raw_total() - j1));
  }
  return out;
}

double GratingFront::hypervolume() const {
  // Segment from (x0, y1) to (x1, y0) in intensity space, reference (0, 0).
  const double nn = static_cast<double>(n_) * n_;
  const double x0 = delta_ / nn, x1 = 1.0;
  const double y0 = scale_ * delta_ / nn, y1 = scale_;
  return x0 * y1 + (x1 - x0) * y0 + 0.5 * (x1 - x0) * (y1 - y0);
}

GratingFront grating_true_front(int n, double slit_width, double slit_spacing) {
  if (std::abs(slit_width - 1.0) > 1e-12 || std::abs(slit_spacing - 4.0) > 1e-12) {
    throw NotImplementedError("analytic grating front is known only for b = 1, h = 4, q = (0, pi/4)");
  }
  return GratingFront(n, slit_width, slit_spacing);
}

GratingFront grating_true_front(const LandscapeSpec& spec) {
  if (spec.family != Family::diffraction_grating || spec.m != 2) {
    throw NotImplementedError("analytic grating front requires a bi-objective grating");
  }
  if (std::abs(spec.positions[0]) > 1e-12 ||
      std::abs(spec.positions[1] - std::numbers::pi / spec.slit_spacing) > 1e-12) {
    throw NotImplementedError("analytic grating front is known only for q = (0, pi/h)");
  }
  return grating_true_front(spec.n, spec.slit_width, spec.slit_spacing);
}

std::vector<ObjectiveVector> analytic_front(const LandscapeSpec& spec, int count) {
  if (spec.family == Family::diffraction_grating) return grating_true_front(spec).sample(count);
  if (spec.m != 2) throw NotImplementedError("analytic multi-sphere front is implemented for m = 2 only");
  std::vector<ObjectiveVector> out;
  for (int i = 0; i < count; ++i) {
    const double f1 = count == 1 ? 1.0 : 2.0 * i / (count - 1);
    out.push_back(minimize({f1, multisphere_front(f1)}));
  }
  return out;
}

double analytic_front_hypervolume(const LandscapeSpec& spec) {
  if (spec.family == Family::diffraction_grating) return grating_true_front(spec).hypervolume();
  if (spec.m != 2) throw NotImplementedError("analytic multi-sphere front is implemented for m = 2 only");
  // 4 - integral_0^2 2 (1 - sqrt(f/2))^2 df = 4 - 2/3
  return 10.0 / 3.0;
}

ObjectiveVector default_reference_point(const LandscapeSpec& spec) {
  if (spec.family == Family::diffraction_grating) {
    return ObjectiveVector(std::vector<double>(static_cast<std::size_t>(spec.m), 0.0), spec.senses);
  }
  return ObjectiveVector(std::vector<double>(static_cast<std::size_t>(spec.m), 2.0), spec.senses);
}

}  // namespace noisyemo
