#include "graphlim/normed.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "graphlim/errors.hpp"

namespace graphlim {

StepFunction::StepFunction(double base, std::vector<double> breakpoints, std::vector<double> values)
    : base_(base), breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() != values_.size()) throw InvalidInput("step function needs one value per breakpoint");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!std::isfinite(breakpoints_[i]) || !std::isfinite(values_[i])) {
      throw InvalidInput("step function breakpoints and values must be finite");
    }
    if (i > 0 && !(breakpoints_[i - 1] < breakpoints_[i])) {
      throw InvalidInput("step function breakpoints must increase strictly");
    }
  }
  compact();
}

StepFunction StepFunction::counting(std::vector<double> sample) {
  std::sort(sample.begin(), sample.end());
  StepFunction f;
  std::size_t i = 0;
  while (i < sample.size()) {
    const double start = sample[i];
    std::size_t j = i;
    while (j < sample.size() && sample[j] - start <= kBreakpointTolerance) ++j;
    f.breakpoints_.push_back(start);
    f.values_.push_back(static_cast<double>(j));
    i = j;
  }
  return f;
}

double StepFunction::operator()(double x) const {
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  if (it == breakpoints_.begin()) return base_;
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double StepFunction::left_limit(double x) const {
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
  if (it == breakpoints_.begin()) return base_;
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double StepFunction::sup_norm() const {
  double m = std::abs(base_);
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

void StepFunction::compact() {
  std::size_t out = 0;
  double previous = base_;
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (values_[i] == previous) continue;
    breakpoints_[out] = breakpoints_[i];
    values_[out] = values_[i];
    previous = values_[i];
    ++out;
  }
  breakpoints_.resize(out);
  values_.resize(out);
}

namespace {

template <typename Op>
StepFunction combine(const StepFunction& a, const StepFunction& b, Op op) {
  std::vector<double> points;
  points.reserve(a.breakpoints().size() + b.breakpoints().size());
  std::merge(a.breakpoints().begin(), a.breakpoints().end(), b.breakpoints().begin(), b.breakpoints().end(),
             std::back_inserter(points));
  std::vector<double> breaks;
  std::vector<double> values;
  std::size_t i = 0;
  while (i < points.size()) {
    const double start = points[i];
    std::size_t j = i;
    while (j + 1 < points.size() && points[j + 1] - start <= StepFunction::kBreakpointTolerance) ++j;
    // the merged point takes the values reached after the whole cluster
    const double last = points[j];
    breaks.push_back(start);
    values.push_back(op(a(last), b(last)));
    i = j + 1;
  }
  return StepFunction(op(a.base(), b.base()), std::move(breaks), std::move(values));
}

}  // namespace

StepFunction operator+(const StepFunction& a, const StepFunction& b) {
  return combine(a, b, [](double x, double y) { return x + y; });
}

StepFunction operator-(const StepFunction& a, const StepFunction& b) {
  return combine(a, b, [](double x, double y) { return x - y; });
}

StepFunction operator*(double s, const StepFunction& f) {
  std::vector<double> values = f.values();
  for (double& v : values) v *= s;
  return StepFunction(s * f.base(), f.breakpoints(), std::move(values));
}

double NormedValue::scalar() const {
  if (!is_scalar()) throw InvalidInput("functional value is a step function, not a scalar");
  return std::get<double>(v_);
}

const StepFunction& NormedValue::step() const {
  if (is_scalar()) throw InvalidInput("functional value is a scalar, not a step function");
  return std::get<StepFunction>(v_);
}

double NormedValue::norm() const {
  return is_scalar() ? std::abs(std::get<double>(v_)) : std::get<StepFunction>(v_).sup_norm();
}

namespace {

bool is_scalar_zero(const NormedValue& v) { return v.is_scalar() && v.scalar() == 0.0; }

}  // namespace

NormedValue operator+(const NormedValue& a, const NormedValue& b) {
  if (a.is_scalar() && b.is_scalar()) return a.scalar() + b.scalar();
  if (!a.is_scalar() && !b.is_scalar()) return a.step() + b.step();
  if (is_scalar_zero(a)) return b;
  if (is_scalar_zero(b)) return a;
  throw InvalidInput("cannot add a scalar and a step function");
}

NormedValue operator-(const NormedValue& a, const NormedValue& b) { return a + (-1.0) * b; }

NormedValue operator*(double s, const NormedValue& v) {
  if (v.is_scalar()) return s * v.scalar();
  return s * v.step();
}

std::string NormedValue::describe() const {
  std::ostringstream os;
  if (is_scalar()) {
    os << scalar();
  } else {
    os << "step function with " << step().breakpoints().size() << " breakpoints";
  }
  return os.str();
}

}  // namespace graphlim
