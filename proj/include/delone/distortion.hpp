#pragma once

// Distortion analysis: the brute-force minimal-distortion oracle, the slab
// dichotomy analyzer on P_MN, the gap-ratio separation check between encoded
// families, and exceptional-image counting.

#include "delone/bijection.hpp"
#include "delone/hierarchy.hpp"
#include "delone/tiling.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace delone {

struct MinDistortion {
  Bijection best;
  DistortionReport report;
  std::vector<std::size_t> permutation;  // A[i] -> B[permutation[i]]
};

/// Exhaustive minimum over all |A|! pairings; the lexicographically first
/// optimal permutation wins.
MinDistortion min_distortion_bruteforce(const std::vector<RationalVec>& A,
                                        const std::vector<RationalVec>& B, std::size_t n_cap = 9);

/// P_MN = Z^d cap ([0,MN] x [0,N)^{d-1}); slab i has first coordinate in [iN, (i+1)N).
struct GridSpec {
  std::size_t d = 2;
  long M = 1;
  long N = 1;

  std::vector<RationalVec> points() const;
  RationalVec u() const { return RationalVec(d); }
  RationalVec v() const { return RationalVec::unit(d, 0, Rational(M * N)); }
};

using GridMap = std::function<RationalVec(const RationalVec&)>;

GridMap identity_map();
GridMap homothety_map(Rational factor);
/// Translates the points of one slab by `shift` scaled by the second coordinate:
/// x -> x + (x_2 * shift) for x in slab `slab`, identity elsewhere.
GridMap slab_shear_map(const GridSpec& g, long slab, RationalVec shift);
/// Lookup through an explicit bijection; throws InvalidArgument on a missing point.
GridMap bijection_map(const Bijection& f);

enum class DichotomyVerdict { Case1, Case2, Neither };

struct Case1Witness {
  RationalVec x, y;
  /// |F(y)-F(x)|^2 M^2 / |F(v)-F(u)|^2, compared against (1+k)^2.
  Rational ratio_sq;
};

struct DichotomyReport {
  std::optional<Case1Witness> case1;
  /// counts[i]: aligned corresponding pairs with x in slab i, y in slab i+1.
  std::vector<std::size_t> counts;
  Rational required;  // a * N^d
  DichotomyVerdict verdict = DichotomyVerdict::Neither;
  std::optional<std::size_t> case2_index;
};

DichotomyReport analyze_dichotomy(const GridSpec& g, const GridMap& f, const Rational& k,
                                  const Rational& epsilon, const Rational& a);

enum class SeparationVerdict { Separated, NotSeparated };

struct SeparationReport {
  std::size_t j = 0;
  SeparationVerdict verdict = SeparationVerdict::NotSeparated;
  bool bits_differ = false;
  Integer gap_alpha, gap_beta;  // alpha carries the smaller multiplier when bits differ
  Integer mult_alpha, mult_beta;
  Rational diam_sq;             // squared diameter of block j+1
  bool chain_alpha = false;     // mult*sqrt(D) < gap < (mult+2)*sqrt(D)
  bool chain_beta = false;
  Rational ratio;               // gap_beta / gap_alpha
  Rational chain_bound;         // mult_beta / (mult_alpha + 2)
  Rational threshold;           // 99j un-scaled, chain_bound otherwise
  bool ratio_exceeds_threshold = false;
  bool threshold_exceeds_lambda = false;
};

/// Cross-checks the placement data against each window and compares the gaps
/// after block j. Throws InvalidArgument when metadata and windows disagree.
SeparationReport separation_witness(const FamilyWindow& alpha, const FamilyWindow& beta, std::size_t j,
                                    const Rational& lambda);

/// Number of targets of f that are exceptional points of s.
std::size_t exceptional_image_scan(const Bijection& f, const SpecialSet& s);

}  // namespace delone
