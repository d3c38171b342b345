#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace noisyemo {

/// Genotype of an individual: phase pixels in radians or Euclidean coordinates.
using DecisionVector = std::vector<double>;

enum class Sense { minimize, maximize };

/// A point in objective space together with the optimization sense of every
/// component. Senses travel with the values so that dominance and hypervolume
/// never have to guess the orientation.
struct ObjectiveVector {
  std::vector<double> values;
  std::vector<Sense> senses;

  ObjectiveVector() = default;
  ObjectiveVector(std::vector<double> v, std::vector<Sense> s)
      : values(std::move(v)), senses(std::move(s)) {
    if (values.size() != senses.size()) {
      throw std::invalid_argument("ObjectiveVector: values and senses differ in length");
    }
  }
  ObjectiveVector(std::vector<double> v, Sense sense)
      : values(std::move(v)), senses(values.size(), sense) {}

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }

  /// Value mapped so that smaller is better, whatever the sense.
  double canonical(std::size_t i) const {
    return senses[i] == Sense::minimize ? values[i] : -values[i];
  }

  bool operator==(const ObjectiveVector&) const = default;
};

inline ObjectiveVector minimize(std::initializer_list<double> v) {
  return ObjectiveVector(std::vector<double>(v), Sense::minimize);
}
inline ObjectiveVector maximize(std::initializer_list<double> v) {
  return ObjectiveVector(std::vector<double>(v), Sense::maximize);
}

/// Raised for operations that are only defined for specific instances
/// (e.g. an analytic Pareto front) or dimensions (hypervolume beyond 3-D).
class NotImplementedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Invalid optimizer or campaign configuration, detected before any
/// evaluation happens. `line` is 0 when no source position is known.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

std::string to_string(Sense sense);
Sense sense_from_string(const std::string& text);

}  // namespace noisyemo
