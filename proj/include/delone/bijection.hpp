#pragma once

#include "delone/geometry.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace delone {

/// Explicit pairing source[i] -> target[i] between two equal-size point lists.
class Bijection {
 public:
  Bijection(std::vector<RationalVec> source, std::vector<RationalVec> target);

  std::size_t dim() const noexcept { return source_.empty() ? 0 : source_.front().dim(); }
  std::size_t size() const noexcept { return source_.size(); }
  const std::vector<RationalVec>& source() const noexcept { return source_; }
  const std::vector<RationalVec>& target() const noexcept { return target_; }

  Bijection inverse() const { return Bijection(target_, source_); }

 private:
  std::vector<RationalVec> source_;
  std::vector<RationalVec> target_;
};

struct DistortionReport {
  /// lambda(F)^2 = max over pairs of max(D'/D, D/D') with D, D' squared distances.
  Rational lambda_squared;
  /// Pair maximising D'/D and its ratio.
  std::pair<std::size_t, std::size_t> witness_expand;
  Rational expand_ratio_sq;
  /// Pair minimising D'/D and its ratio.
  std::pair<std::size_t, std::size_t> witness_contract;
  Rational contract_ratio_sq;
};

DistortionReport distortion(const Bijection& f);

}  // namespace delone
