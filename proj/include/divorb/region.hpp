#pragma once

#include <cstddef>
#include <vector>

namespace divorb {

inline constexpr double kRegionTolerance = 1e-9;

// Point of the sum-zero hyperplane R_0^n.
class TimeVector {
 public:
  TimeVector() = default;
  // Rejects vectors whose coordinate sum is not zero up to 1e-9.
  explicit TimeVector(std::vector<double> values);
  // Orthogonal projection onto the sum-zero hyperplane.
  static TimeVector projected(std::vector<double> values);
  static TimeVector zero(std::size_t n);

  std::size_t dim() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  TimeVector operator+(const TimeVector& other) const;
  TimeVector operator-(const TimeVector& other) const;
  TimeVector operator*(double c) const;

 private:
  std::vector<double> values_;
};

// (1 - n, 1, ..., 1) / n
TimeVector v_direction(std::size_t n);

class Region {
 public:
  enum class Kind { DeltaFull, Delta, DeltaS, Axis };

  static Region delta_full(std::size_t n, double scale = 1.0);
  static Region delta(std::size_t n, double scale = 1.0);
  static Region delta_s(std::size_t n, double width, double scale = 1.0);
  // {t : t_i >= lower[i]}; requires sum(lower) <= 0.
  static Region axis(std::vector<double> lower);

  Region scaled(double c) const;

  Kind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  double scale() const { return scale_; }
  double width() const { return width_; }
  const std::vector<double>& lower() const { return lower_; }

 private:
  Region(Kind kind, std::size_t n, double scale, double width, std::vector<double> lower);

  Kind kind_;
  std::size_t dim_;
  double scale_;
  double width_;
  std::vector<double> lower_;
};

}  // namespace divorb
