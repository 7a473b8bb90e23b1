#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

namespace bibliorank {

// Two rank conventions coexist on purpose:
//  - competition ranks (ties share the minimum rank) drive the displayed
//    rank, percentile and quartile columns;
//  - tie-averaged ranks are used only inside the Spearman statistic, which
//    is its standard definition under ties.
struct RankRow {
  std::string institution_id;
  double score = 0.0;
  int rank = 0;             // competition rank, 1 = best
  double percentile = 0.0;  // 100*(N-rank)/(N-1); 100 when N == 1
  int quartile = 0;         // 1 + floor(4*(rank-1)/N), clamped to 4
};

struct RankList {
  std::string uda_id;
  std::vector<RankRow> rows;  // score desc, institution_id asc within ties
  int n() const { return static_cast<int>(rows.size()); }
  const RankRow* find(const std::string& institution_id) const;
};

RankList build_ranklist(const std::map<std::string, double>& scores,
                        const std::string& uda_id);

struct SpearmanResult {
  int n = 0;
  double rho = 0.0;
  double p = 1.0;       // two-tailed; exact permutation for n <= 10, else t
  std::string stars;    // "***" p<0.01, "**" p<0.05, else ""
};

// Correlation over the institutions common to both lists, re-ranked within
// the intersection. Requires >= 3 common institutions and nonzero rank
// variance on both sides.
SpearmanResult spearman(const RankList& left, const RankList& right);

struct ShiftStats {
  double var_pct = 0.0;  // share of institutions with a nonzero shift, in %
  double max = 0.0;      // of |delta|
  double mean = 0.0;
  double median = 0.0;
};

struct LeapHistogram {
  std::array<long long, 4> counts{};  // |quartile delta| 0..3
  long long risers3 = 0;   // quartile 4 (left) -> 1 (right)
  long long fallers3 = 0;  // quartile 1 (left) -> 4 (right)
  long long total() const { return counts[0] + counts[1] + counts[2] + counts[3]; }
};

struct ShiftReport {
  std::string uda_id;
  int n = 0;
  SpearmanResult correlation;
  ShiftStats percentile;
  ShiftStats quartile;
  LeapHistogram leaps;
  std::vector<std::string> left_only;   // institutions excluded from the
  std::vector<std::string> right_only;  // intersection, kept as a sidecar
};

ShiftReport shift_report(const RankList& left, const RankList& right);
LeapHistogram leap_matrix(const RankList& left, const RankList& right);

// Tie-averaged descending ranks of a score vector (helper shared with the
// statistic; exposed for tests).
std::vector<double> average_ranks(const std::vector<double>& scores);

}  // namespace bibliorank
