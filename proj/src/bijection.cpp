#include "delone/bijection.hpp"

#include "delone/error.hpp"

#include <algorithm>

namespace delone {

namespace {

void require_distinct(std::vector<RationalVec> pts, const char* side) {
  std::sort(pts.begin(), pts.end());
  if (std::adjacent_find(pts.begin(), pts.end()) != pts.end()) {
    throw InvalidArgument(std::string("coincident points on the ") + side + " side of a bijection");
  }
}

}  // namespace

Bijection::Bijection(std::vector<RationalVec> source, std::vector<RationalVec> target)
    : source_(std::move(source)), target_(std::move(target)) {
  if (source_.size() != target_.size()) throw InvalidArgument("bijection sides differ in length");
  for (std::size_t i = 0; i < source_.size(); ++i) {
    require_same_dim(source_[i], source_.front());
    require_same_dim(target_[i], source_.front());
  }
  require_distinct(source_, "source");
  require_distinct(target_, "target");
}

DistortionReport distortion(const Bijection& f) {
  if (f.size() < 2) throw InvalidArgument("distortion needs at least two pairs");
  const auto& src = f.source();
  const auto& dst = f.target();
  DistortionReport r;
  bool first = true;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      const Rational ratio = squared_distance(dst[i], dst[j]) / squared_distance(src[i], src[j]);
      if (first || r.expand_ratio_sq < ratio) {
        r.expand_ratio_sq = ratio;
        r.witness_expand = {i, j};
      }
      if (first || ratio < r.contract_ratio_sq) {
        r.contract_ratio_sq = ratio;
        r.witness_contract = {i, j};
      }
      first = false;
    }
  }
  r.lambda_squared = std::max(r.expand_ratio_sq, 1 / r.contract_ratio_sq);
  return r;
}

}  // namespace delone
