#pragma once

#include <complex>
#include <span>

namespace vlab {

/// Neumaier-compensated accumulator. Summation order is the call order, so
/// results are reproducible for a fixed input order.
template <typename T>
class CompensatedSum {
public:
  void add(T x) {
    T t = sum_ + x;
    if (abs_(sum_) >= abs_(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

private:
  static double abs_(double v) { return v < 0 ? -v : v; }
  T sum_{};
  T comp_{};
};

template <>
class CompensatedSum<std::complex<double>> {
public:
  void add(std::complex<double> x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
  CompensatedSum<double> re_;
  CompensatedSum<double> im_;
};

inline double compensated_sum(std::span<const double> xs) {
  CompensatedSum<double> acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

} // namespace vlab
