#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace moc {

/// Nonnegative simplex vector expressing per-objective importance.
class PreferenceVector {
 public:
  PreferenceVector() = default;

  explicit PreferenceVector(std::vector<double> entries) : p_(std::move(entries)) {
    if (p_.empty()) throw std::invalid_argument("preference: empty vector");
    double sum = 0.0;
    for (double x : p_) {
      if (!(x >= 0.0)) throw std::invalid_argument("preference: negative entry");
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument("preference: entries sum to " + std::to_string(sum));
    }
  }

  /// Two-objective convenience: (w, 1-w).
  static PreferenceVector pair(double w) { return PreferenceVector({w, 1.0 - w}); }

  int size() const { return static_cast<int>(p_.size()); }
  double operator[](int j) const { return p_[static_cast<std::size_t>(j)]; }
  const std::vector<double>& entries() const { return p_; }
  std::span<const double> span() const { return p_; }

  bool operator==(const PreferenceVector&) const = default;

 private:
  std::vector<double> p_;
};

/// Ordered training/evaluation set of preference vectors, all of one length.
class PreferenceSet {
 public:
  PreferenceSet() = default;

  explicit PreferenceSet(std::vector<PreferenceVector> members)
      : members_(std::move(members)) {
    if (members_.empty()) throw std::invalid_argument("preference set: empty");
    for (const auto& m : members_) {
      if (m.size() != members_.front().size()) {
        throw std::invalid_argument("preference set: mixed lengths");
      }
    }
  }

  /// The nine two-objective vectors {(0.1,0.9), ..., (0.9,0.1)}.
  static PreferenceSet grid9() {
    std::vector<PreferenceVector> v;
    for (int i = 1; i <= 9; ++i) v.push_back(PreferenceVector::pair(i / 10.0));
    return PreferenceSet(std::move(v));
  }

  int size() const { return static_cast<int>(members_.size()); }
  int objective_count() const { return members_.front().size(); }
  const PreferenceVector& operator[](int i) const {
    return members_[static_cast<std::size_t>(i)];
  }
  const std::vector<PreferenceVector>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

 private:
  std::vector<PreferenceVector> members_;
};

}  // namespace moc
