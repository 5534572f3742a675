#pragma once

// Lacunary angle sequences with a two-sided ratio envelope (lambda, mu), and
// the finite-prefix validation that locates the reindexing point j0.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace rarebasis {

struct GeometricAngles {
  double ratio;  // sigma
};

struct ExplicitAngles {
  std::vector<double> angles;
};

class LacunarySequence {
 public:
  static LacunarySequence geometric(double theta0, double sigma, double lambda, double mu) {
    if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("LacunarySequence: sigma must lie in (0,1)");
    return LacunarySequence(theta0, GeometricAngles{sigma}, lambda, mu);
  }

  static LacunarySequence from_angles(std::vector<double> angles, double lambda, double mu) {
    if (angles.empty()) throw std::invalid_argument("LacunarySequence: empty angle list");
    for (std::size_t j = 0; j < angles.size(); ++j) {
      if (!(angles[j] > 0.0 && angles[j] < 0.5 * std::numbers::pi)) {
        throw std::invalid_argument("LacunarySequence: angles must lie in (0, pi/2)");
      }
      if (j > 0 && !(angles[j] < angles[j - 1])) {
        throw std::invalid_argument("LacunarySequence: angles must be strictly decreasing");
      }
    }
    const double theta0 = angles.front();
    return LacunarySequence(theta0, ExplicitAngles{std::move(angles)}, lambda, mu);
  }

  double theta0() const { return theta0_; }
  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  const std::variant<GeometricAngles, ExplicitAngles>& generator() const { return generator_; }

  /// Number of stored angles for explicit sequences; geometric ones are unbounded.
  std::optional<std::size_t> size() const {
    if (const auto* e = std::get_if<ExplicitAngles>(&generator_)) return e->angles.size();
    return std::nullopt;
  }

  double angle(std::size_t j) const {
    if (const auto* g = std::get_if<GeometricAngles>(&generator_)) {
      return theta0_ * std::pow(g->ratio, static_cast<double>(j));
    }
    const auto& list = std::get<ExplicitAngles>(generator_).angles;
    if (j >= list.size()) throw std::out_of_range("LacunarySequence: index beyond explicit angle list");
    return list[j];
  }

  double slope(std::size_t j) const { return std::tan(angle(j)); }

 private:
  LacunarySequence(double theta0, std::variant<GeometricAngles, ExplicitAngles> gen, double lambda, double mu)
      : theta0_(theta0), generator_(std::move(gen)), lambda_(lambda), mu_(mu) {
    if (!(theta0 > 0.0 && theta0 < 0.5 * std::numbers::pi)) {
      throw std::invalid_argument("LacunarySequence: theta0 must lie in (0, pi/2)");
    }
    if (!(0.0 < lambda && lambda < mu && mu < 1.0)) {
      throw std::invalid_argument("LacunarySequence: need 0 < lambda < mu < 1");
    }
  }

  double theta0_;
  std::variant<GeometricAngles, ExplicitAngles> generator_;
  double lambda_;
  double mu_;
};

/// Validated finite window of a lacunary sequence. Angles and slopes are
/// stored for the whole prefix; the construction consumes them from j0 on.
struct SlopeWindow {
  std::size_t j0 = 0;
  std::size_t prefix = 0;
  double lambda = 0.0;
  double mu = 0.0;
  std::vector<double> angles;  // theta_j, j < prefix
  std::vector<double> slopes;  // m_j = tan theta_j
  std::vector<double> ratios;  // m_{j+1} / m_j, j + 1 < prefix

  /// Angles available after reindexing at j0.
  std::size_t available() const { return prefix - j0; }
  double reindexed_angle(std::size_t i) const { return angles.at(j0 + i); }
  double reindexed_slope(std::size_t i) const { return slopes.at(j0 + i); }
};

class BilacunaryError : public std::runtime_error {
 public:
  struct Violation {
    std::size_t index;  // ratio m_{index+1} / m_index
    double ratio;
  };

  BilacunaryError(const std::string& what, std::vector<Violation> violations)
      : std::runtime_error(what), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Finds the smallest j0 such that every slope ratio from j0 to the end of
/// the prefix lies in [lambda, mu] and m_{j0} <= 1. At least one ratio must
/// remain in the validated window.
inline SlopeWindow validate_bilacunary(const LacunarySequence& seq, std::size_t prefix) {
  if (prefix < 2) throw std::invalid_argument("validate_bilacunary: prefix must be at least 2");
  if (const auto n = seq.size(); n && prefix > *n) {
    throw std::out_of_range("validate_bilacunary: prefix longer than the explicit angle list");
  }

  SlopeWindow w;
  w.prefix = prefix;
  w.lambda = seq.lambda();
  w.mu = seq.mu();
  w.angles.reserve(prefix);
  w.slopes.reserve(prefix);
  for (std::size_t j = 0; j < prefix; ++j) {
    w.angles.push_back(seq.angle(j));
    w.slopes.push_back(std::tan(w.angles.back()));
  }
  std::vector<BilacunaryError::Violation> violations;
  std::size_t start = 0;
  for (std::size_t j = 0; j + 1 < prefix; ++j) {
    const double r = w.slopes[j + 1] / w.slopes[j];
    w.ratios.push_back(r);
    if (!(w.lambda <= r && r <= w.mu)) {
      violations.push_back({j, r});
      start = j + 1;
    }
  }
  while (start + 1 < prefix && w.slopes[start] > 1.0) ++start;

  if (start + 1 >= prefix) {
    std::ostringstream msg;
    msg << "validate_bilacunary: no j0 in a prefix of " << prefix << " with all slope ratios in [" << w.lambda
        << ", " << w.mu << "] and m_j0 <= 1";
    if (!violations.empty()) {
      msg << "; violating ratios:";
      for (const auto& v : violations) msg << " m" << v.index + 1 << "/m" << v.index << "=" << v.ratio;
    }
    throw BilacunaryError(msg.str(), std::move(violations));
  }
  w.j0 = start;
  return w;
}

}  // namespace rarebasis
