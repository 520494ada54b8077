#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace graphlim {

// Bounded right-continuous step function on the real line: `base` on
// (-inf, x_0), values[i] on [x_i, x_{i+1}). Breakpoints closer than
// `kBreakpointTolerance` are treated as one point when functions are
// combined, so numerically equal eigenvalues from different solves line up.
class StepFunction {
 public:
  static constexpr double kBreakpointTolerance = 1e-9;

  StepFunction() = default;
  StepFunction(double base, std::vector<double> breakpoints, std::vector<double> values);

  // Counting function of a sample: #{s in sample : s <= x}.
  static StepFunction counting(std::vector<double> sample);

  double base() const { return base_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }

  double operator()(double x) const;
  // left limit at x
  double left_limit(double x) const;

  double sup_norm() const;

  friend StepFunction operator+(const StepFunction& a, const StepFunction& b);
  friend StepFunction operator-(const StepFunction& a, const StepFunction& b);
  friend StepFunction operator*(double s, const StepFunction& f);

 private:
  void compact();

  double base_ = 0.0;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

// A value of a graph functional: a real scalar with |.| or a step function
// with the sup norm. Mixed arithmetic is rejected, except that a scalar 0
// acts as the zero of either space.
class NormedValue {
 public:
  NormedValue() : v_(0.0) {}
  NormedValue(double x) : v_(x) {}  // NOLINT(google-explicit-constructor)
  NormedValue(StepFunction f) : v_(std::move(f)) {}  // NOLINT(google-explicit-constructor)

  bool is_scalar() const { return std::holds_alternative<double>(v_); }
  double scalar() const;
  const StepFunction& step() const;

  double norm() const;

  friend NormedValue operator+(const NormedValue& a, const NormedValue& b);
  friend NormedValue operator-(const NormedValue& a, const NormedValue& b);
  friend NormedValue operator*(double s, const NormedValue& v);

  std::string describe() const;

 private:
  std::variant<double, StepFunction> v_;
};

}  // namespace graphlim
