#pragma once

// Derivative-free maximization over local measurement axes: a coarse grid
// followed by coordinate ascent with step halving.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "numeric.hpp"

namespace tomo {

struct GridOptions {
  int theta_divisions = 60;  // theta step = pi / theta_divisions
  int phi_divisions = 30;    // phi step = pi / phi_divisions
  double min_step = 1e-5;    // refinement stops once every step is below this (rad)
  int restarts = 4;          // best grid points refined independently

  double theta_step() const { return pi / theta_divisions; }
  double phi_step() const { return pi / phi_divisions; }
};

/// The set of admissible measurement axes on one side.
///
///   Fixed  - a single axis (0 parameters)
///   Circle - unit axes orthogonal to `normal`, parametrized by psi (1 parameter)
///   Sphere - all axes, parametrized by Bloch angles (theta, phi) (2 parameters)
///
/// Axes n and -n give the same measurement up to relabelled outcomes, so grids
/// cover only half of each manifold: theta in [0, pi/2] and psi in [0, pi).
class AxisFamily {
 public:
  enum class Kind { Fixed, Circle, Sphere };

  static AxisFamily fixed(const Eigen::Vector3d& axis) {
    return AxisFamily(Kind::Fixed, axis.normalized(), {}, {});
  }

  static AxisFamily circle(const Eigen::Vector3d& normal) {
    const Eigen::Vector3d n = normal.normalized();
    // Any vector not parallel to n seeds the in-plane basis.
    Eigen::Vector3d seed = std::abs(n.z()) < 0.9 ? Eigen::Vector3d::UnitZ() : Eigen::Vector3d::UnitX();
    Eigen::Vector3d e1 = (seed - seed.dot(n) * n).normalized();
    Eigen::Vector3d e2 = n.cross(e1);
    return AxisFamily(Kind::Circle, n, e1, e2);
  }

  static AxisFamily sphere() { return AxisFamily(Kind::Sphere, {}, {}, {}); }

  Kind kind() const { return kind_; }

  int arity() const {
    switch (kind_) {
      case Kind::Fixed: return 0;
      case Kind::Circle: return 1;
      case Kind::Sphere: return 2;
    }
    return 0;
  }

  Eigen::Vector3d axis(const double* params) const {
    switch (kind_) {
      case Kind::Fixed: return axis_;
      case Kind::Circle: return std::cos(params[0]) * e1_ + std::sin(params[0]) * e2_;
      case Kind::Sphere:
        return {std::sin(params[0]) * std::cos(params[1]),
                std::sin(params[0]) * std::sin(params[1]), std::cos(params[0])};
    }
    return axis_;
  }

  /// Grid parameter tuples (only the first arity() entries are meaningful).
  std::vector<std::array<double, 2>> grid(const GridOptions& opt) const {
    std::vector<std::array<double, 2>> out;
    switch (kind_) {
      case Kind::Fixed: out.push_back({0.0, 0.0}); break;
      case Kind::Circle:
        for (int k = 0; k < opt.phi_divisions; ++k) out.push_back({k * opt.phi_step(), 0.0});
        break;
      case Kind::Sphere: {
        out.push_back({0.0, 0.0});  // the pole, once
        for (int t = 1; t * opt.theta_step() <= pi / 2.0 + 1e-12; ++t) {
          for (int p = 0; p < 2 * opt.phi_divisions; ++p) {
            out.push_back({t * opt.theta_step(), p * opt.phi_step()});
          }
        }
        break;
      }
    }
    return out;
  }

  std::array<double, 2> initial_steps(const GridOptions& opt) const {
    switch (kind_) {
      case Kind::Fixed: return {0.0, 0.0};
      case Kind::Circle: return {opt.phi_step(), 0.0};
      case Kind::Sphere: return {opt.theta_step(), opt.phi_step()};
    }
    return {0.0, 0.0};
  }

 private:
  AxisFamily(Kind kind, Eigen::Vector3d axis, Eigen::Vector3d e1, Eigen::Vector3d e2)
      : kind_(kind), axis_(axis), e1_(e1), e2_(e2) {}

  Kind kind_;
  Eigen::Vector3d axis_;
  Eigen::Vector3d e1_;
  Eigen::Vector3d e2_;
};

inline constexpr std::size_t max_search_dims = 4;

struct SearchPoint {
  std::array<double, max_search_dims> x{};
  double value = -1e300;
};

/// Coordinate ascent: try +/- step along each coordinate, keep strict
/// improvements, halve all steps when a full sweep fails, stop once the
/// largest step is below `min_step`.
template <class Objective>
SearchPoint coordinate_ascent(Objective&& f, SearchPoint start, std::size_t dims,
                              std::array<double, max_search_dims> steps, double min_step,
                              int max_evaluations = 20000) {
  SearchPoint best = start;
  if (dims == 0) {
    best.value = f(best.x);
    return best;
  }
  int evaluations = 0;
  auto largest = [&] {
    double m = 0.0;
    for (std::size_t k = 0; k < dims; ++k) m = std::max(m, steps[k]);
    return m;
  };
  while (largest() >= min_step && evaluations < max_evaluations) {
    bool improved = false;
    for (std::size_t k = 0; k < dims; ++k) {
      for (double sign : {1.0, -1.0}) {
        auto trial = best.x;
        trial[k] += sign * steps[k];
        const double v = f(trial);
        ++evaluations;
        if (v > best.value) {
          best.x = trial;
          best.value = v;
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      for (std::size_t k = 0; k < dims; ++k) steps[k] *= 0.5;
    }
  }
  return best;
}

/// Keeps the `capacity` largest (value, index) pairs seen; ties keep the earlier index.
class TopK {
 public:
  explicit TopK(int capacity) : capacity_(std::max(1, capacity)) {}

  void offer(double value, std::size_t index) {
    if (static_cast<int>(items_.size()) == capacity_ && value <= items_.back().first) return;
    auto pos = std::upper_bound(items_.begin(), items_.end(), value,
                                [](double v, const auto& item) { return v > item.first; });
    items_.insert(pos, {value, index});
    if (static_cast<int>(items_.size()) > capacity_) items_.pop_back();
  }

  double threshold() const {
    return static_cast<int>(items_.size()) < capacity_ ? -1e300 : items_.back().first;
  }

  const std::vector<std::pair<double, std::size_t>>& items() const { return items_; }

 private:
  int capacity_;
  std::vector<std::pair<double, std::size_t>> items_;
};

}  // namespace tomo
