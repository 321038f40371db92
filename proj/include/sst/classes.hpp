#pragma once

#include <optional>

#include "sst/matrix.hpp"

namespace sst {

// Membership certifiers for the transitivity hierarchy. Verdicts carry a
// witness when membership fails; the witness indices are 0-based items.

struct SstVerdict {
  bool member = false;
  std::optional<Permutation> order;  // a faithful ordering, when member
  // When not a member: adjacent candidates i, j (i proposed above j) and a
  // column k with M[i][k] < M[j][k].
  int i = -1, j = -1, k = -1;
};

// Sorts items by descending row sum (ties by index) and verifies entrywise
// dominance between order-adjacent rows. Sound and complete: in a faithful
// order rows are totally ordered by dominance, and dominance implies row-sum
// dominance, so the row-sum sort recovers a faithful order up to ties among
// identical rows.
SstVerdict is_sst(const ProbabilityMatrix& m, double tol = kStrictTol);

struct TripleVerdict {
  bool member = false;
  int i = -1, j = -1, k = -1;
};

// M[i][k] >= min(M[i][j], M[j][k]) for every triple with M[i][j] >= 1/2 and
// M[j][k] >= 1/2. Exhaustive O(n^3) scan.
TripleVerdict is_mst(const ProbabilityMatrix& m, double tol = kStrictTol);
// Same hypotheses, weaker conclusion M[i][k] >= 1/2.
TripleVerdict is_wst(const ProbabilityMatrix& m, double tol = kStrictTol);

struct QuadVerdict {
  bool pass = false;
  int i1 = -1, i2 = -1, i3 = -1, i4 = -1;
};

// Necessary condition for membership in any parametric class: whenever
// M[i1][i2] > M[i3][i4] over distinct items, M[i1][i3] >= M[i2][i4] must
// hold. Necessary only, hence pass/fail rather than a membership verdict.
// Strict comparisons use exact values; `slack` loosens both sides for
// floating-point matrices (default 0).
QuadVerdict parametric_necessary_check(const ProbabilityMatrix& m, double slack = 0.0);

struct PairVerdict {
  bool member = false;
  int i = -1, j = -1;
};

// SST membership plus max(M[i][j], M[j][i]) >= 1/2 + gamma off the diagonal.
PairVerdict is_high_snr(const ProbabilityMatrix& m, double gamma, double tol = kStrictTol);

// Heuristic refuter for membership in the class of ranking-distribution
// marginals. Any triple i > j > k in the faithful order with M[i][j] =
// M[j][k] = 1/2 and M[i][k] = 1 forces the supporting 0/1 orderings to
// alternate on the two half pairs; the induced inequality graph must be
// bipartite. An odd cycle refutes membership; otherwise the test is
// inconclusive. Never certifies membership.
enum class FullRefutation { refuted, unknown };
FullRefutation full_class_refuter(const ProbabilityMatrix& m, double tol = kStrictTol);

}  // namespace sst
