#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace moc {

/// Per-objective running mean and standard deviation (Welford), with the
/// std floored at 1e-6. Population variance, matching the usual running
/// reward filters.
class RunningNorm {
 public:
  explicit RunningNorm(int dims)
      : mean_(dims, 0.0), m2_(dims, 0.0) {
    if (dims < 1) throw std::invalid_argument("RunningNorm: dims < 1");
  }

  void update(std::span<const double> x) {
    if (static_cast<int>(x.size()) != dims()) {
      throw std::invalid_argument("RunningNorm::update: dim mismatch");
    }
    count_ += 1;
    for (int j = 0; j < dims(); ++j) {
      const double d = x[j] - mean_[j];
      mean_[j] += d / static_cast<double>(count_);
      m2_[j] += d * (x[j] - mean_[j]);
    }
  }

  int dims() const { return static_cast<int>(mean_.size()); }
  std::uint64_t count() const { return count_; }
  double mean(int j) const { return mean_[j]; }

  double std(int j) const {
    const double var = count_ > 0 ? m2_[j] / static_cast<double>(count_) : 0.0;
    return std::max(std::sqrt(var), 1e-6);
  }

  /// (x_j - mean_j) / (2 std_j) + 1 per objective, without updating stats.
  std::vector<double> normalize_only(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dims()) {
      throw std::invalid_argument("RunningNorm::normalize_only: dim mismatch");
    }
    std::vector<double> out(x.size());
    for (int j = 0; j < dims(); ++j) out[j] = (x[j] - mean_[j]) / (2.0 * std(j)) + 1.0;
    return out;
  }

 private:
  std::uint64_t count_ = 0;
  std::vector<double> mean_;
  std::vector<double> m2_;
};

/// Folds `r` into the running statistics, then returns the normalized vector
/// under the updated statistics.
inline std::vector<double> normalize_reward(RunningNorm& stats,
                                            std::span<const double> r) {
  stats.update(r);
  return stats.normalize_only(r);
}

/// Mean squared difference between a normalized reward vector and a
/// preference vector. Mean (not sum) so the threshold is dimension-free.
inline double amvs(std::span<const double> r_norm, std::span<const double> p) {
  if (r_norm.size() != p.size() || r_norm.empty()) {
    throw std::invalid_argument("amvs: length mismatch");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double d = r_norm[j] - p[j];
    acc += d * d;
  }
  return acc / static_cast<double>(p.size());
}

/// Hinge on the constraint residual: max(mse - phi, 0).
inline double hinge_violation(double mse, double phi) {
  return std::max(mse - phi, 0.0);
}

}  // namespace moc
