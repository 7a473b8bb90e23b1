#include "bibliorank/ranklab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "bibliorank/errors.hpp"

namespace bibliorank {

const RankRow* RankList::find(const std::string& institution_id) const {
  for (const RankRow& row : rows)
    if (row.institution_id == institution_id) return &row;
  return nullptr;
}

RankList build_ranklist(const std::map<std::string, double>& scores,
                        const std::string& uda_id) {
  if (scores.empty())
    throw ComputationError("cannot rank an empty score table (uda " + uda_id + ")");
  RankList list;
  list.uda_id = uda_id;
  for (const auto& [inst, score] : scores) {
    if (!std::isfinite(score))
      throw ComputationError("non-finite score for institution " + inst);
    list.rows.push_back({inst, score, 0, 0.0, 0});
  }
  std::sort(list.rows.begin(), list.rows.end(),
            [](const RankRow& a, const RankRow& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.institution_id < b.institution_id;
            });
  const int n = list.n();
  for (int i = 0; i < n; ++i) {
    RankRow& row = list.rows[i];
    if (i > 0 && row.score == list.rows[i - 1].score)
      row.rank = list.rows[i - 1].rank;  // competition ranking
    else
      row.rank = i + 1;
    row.percentile = n > 1 ? 100.0 * (n - row.rank) / (n - 1) : 100.0;
    row.quartile = std::min(4, 1 + (4 * (row.rank - 1)) / n);
  }
  return list;
}

std::vector<double> average_ranks(const std::vector<double>& scores) {
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];  // descending, best = rank 1
  });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

namespace {

std::vector<std::string> common_institutions(const RankList& left,
                                             const RankList& right) {
  std::vector<std::string> common;
  for (const RankRow& row : left.rows)
    if (right.find(row.institution_id)) common.push_back(row.institution_id);
  std::sort(common.begin(), common.end());
  return common;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0)
    throw ComputationError("zero rank variance: all scores tied on one side");
  return sxy / std::sqrt(sxx * syy);
}

// Exact two-tailed permutation p: fraction of all n! pairings whose |rho|
// reaches the observed one. Denominators are permutation-invariant, so only
// the cross sum is recomputed per permutation.
double permutation_p(const std::vector<double>& lranks,
                     const std::vector<double>& rranks, double rho_obs) {
  const std::size_t n = lranks.size();
  double ml = 0.0, mr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ml += lranks[i];
    mr += rranks[i];
  }
  ml /= static_cast<double>(n);
  mr /= static_cast<double>(n);
  std::vector<double> dl(n), dr(n);
  double sll = 0.0, srr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    dl[i] = lranks[i] - ml;
    dr[i] = rranks[i] - mr;
    sll += dl[i] * dl[i];
    srr += dr[i] * dr[i];
  }
  const double denom = std::sqrt(sll * srr);
  const double threshold = std::fabs(rho_obs) - 1e-12;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  long long hits = 0, total = 0;
  do {
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) sxy += dl[i] * dr[perm[i]];
    if (std::fabs(sxy / denom) >= threshold) ++hits;
    ++total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(hits) / static_cast<double>(total);
}

double t_approx_p(double rho, int n) {
  if (std::fabs(rho) >= 1.0) return 0.0;
  double t = rho * std::sqrt((n - 2) / (1.0 - rho * rho));
  boost::math::students_t_distribution<double> dist(n - 2);
  return 2.0 * boost::math::cdf(dist, -std::fabs(t));
}

std::string significance_stars(double p) {
  if (p < 0.01) return "***";
  if (p < 0.05) return "**";
  return "";
}

}  // namespace

SpearmanResult spearman(const RankList& left, const RankList& right) {
  std::vector<std::string> common = common_institutions(left, right);
  const int n = static_cast<int>(common.size());
  if (n < 3)
    throw ComputationError("spearman needs >= 3 common institutions, got " +
                           std::to_string(n));
  std::vector<double> lscores, rscores;
  lscores.reserve(common.size());
  rscores.reserve(common.size());
  for (const std::string& inst : common) {
    lscores.push_back(left.find(inst)->score);
    rscores.push_back(right.find(inst)->score);
  }
  std::vector<double> lranks = average_ranks(lscores);
  std::vector<double> rranks = average_ranks(rscores);

  SpearmanResult result;
  result.n = n;
  result.rho = pearson(lranks, rranks);
  result.p = n <= 10 ? permutation_p(lranks, rranks, result.rho)
                     : t_approx_p(result.rho, n);
  result.stars = significance_stars(result.p);
  return result;
}

namespace {

ShiftStats stats_of(std::vector<double> abs_deltas, long long nonzero) {
  ShiftStats s;
  const std::size_t n = abs_deltas.size();
  s.var_pct = 100.0 * static_cast<double>(nonzero) / static_cast<double>(n);
  s.max = *std::max_element(abs_deltas.begin(), abs_deltas.end());
  s.mean = std::accumulate(abs_deltas.begin(), abs_deltas.end(), 0.0) /
           static_cast<double>(n);
  std::sort(abs_deltas.begin(), abs_deltas.end());
  s.median = n % 2 == 1 ? abs_deltas[n / 2]
                        : (abs_deltas[n / 2 - 1] + abs_deltas[n / 2]) / 2.0;
  return s;
}

}  // namespace

ShiftReport shift_report(const RankList& left, const RankList& right) {
  ShiftReport report;
  report.uda_id = left.uda_id;
  report.correlation = spearman(left, right);

  std::vector<std::string> common = common_institutions(left, right);
  for (const RankRow& row : left.rows)
    if (!right.find(row.institution_id))
      report.left_only.push_back(row.institution_id);
  for (const RankRow& row : right.rows)
    if (!left.find(row.institution_id))
      report.right_only.push_back(row.institution_id);

  // Re-rank within the intersection so percentiles and quartiles are
  // comparable between the two sides.
  std::map<std::string, double> lmap, rmap;
  for (const std::string& inst : common) {
    lmap[inst] = left.find(inst)->score;
    rmap[inst] = right.find(inst)->score;
  }
  RankList lsub = build_ranklist(lmap, left.uda_id);
  RankList rsub = build_ranklist(rmap, right.uda_id);

  report.n = static_cast<int>(common.size());
  std::vector<double> pct_deltas, qrt_deltas;
  long long pct_nonzero = 0, qrt_nonzero = 0;
  for (const std::string& inst : common) {
    const RankRow* l = lsub.find(inst);
    const RankRow* r = rsub.find(inst);
    // Same N on both sides, so the percentile shift is zero exactly when
    // the competition ranks agree.
    if (l->rank != r->rank) ++pct_nonzero;
    pct_deltas.push_back(std::fabs(l->percentile - r->percentile));
    int dq = std::abs(l->quartile - r->quartile);
    if (dq != 0) ++qrt_nonzero;
    qrt_deltas.push_back(static_cast<double>(dq));
    report.leaps.counts[static_cast<std::size_t>(dq)] += 1;
    if (dq == 3) {
      if (r->quartile < l->quartile)
        report.leaps.risers3 += 1;
      else
        report.leaps.fallers3 += 1;
    }
  }
  report.percentile = stats_of(std::move(pct_deltas), pct_nonzero);
  report.quartile = stats_of(std::move(qrt_deltas), qrt_nonzero);
  return report;
}

LeapHistogram leap_matrix(const RankList& left, const RankList& right) {
  return shift_report(left, right).leaps;
}

}  // namespace bibliorank
