#pragma once

/*
 * Distances between eigenvalue multisets of equal size k.
 *
 *   optimal matching:  min over permutations of max_j |s_j - t_perm(j)|
 *   frobenius matching: min over permutations of (sum |s_j - t_perm(j)|^2)^(1/2)
 *
 * The bottleneck objective is solved exactly by binary search over the
 * sorted k^2 pairwise costs with a Hopcroft-Karp feasibility matching; the
 * sum-of-squares objective by a shortest-augmenting-path assignment solver
 * in O(k^3).  A factorial brute force over all permutations doubles as an
 * oracle for small k.
 */

#include <vector>

#include "polyspec/matpoly.hpp"

namespace polyspec {

enum class MatchMethod { bottleneck, sum_of_squares };

struct MatchingResult {
  double distance = 0.0;
  // s[i] is paired with t[permutation[i]].
  std::vector<int> permutation;
  MatchMethod method = MatchMethod::bottleneck;
};

MatchingResult optimal_matching_distance(const Spectrum& s, const Spectrum& t);
MatchingResult frobenius_matching_distance(const Spectrum& s, const Spectrum& t);

// Exhaustive search over all k! pairings; throws OracleSizeExceeded for
// k > 8.
MatchingResult brute_force_matching(const Spectrum& s, const Spectrum& t,
                                    MatchMethod method);

// Recompute the objective value of a given pairing; used to verify
// permutation certificates.
double matching_objective(const Spectrum& s, const Spectrum& t,
                          const std::vector<int>& permutation, MatchMethod method);

}  // namespace polyspec
