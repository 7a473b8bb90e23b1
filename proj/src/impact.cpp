#include "bibliorank/impact.hpp"

#include <algorithm>

#include "bibliorank/csv.hpp"

namespace bibliorank {

std::map<PoolKey, PoolStats> compute_medians(const Corpus& corpus) {
  std::map<PoolKey, std::vector<long long>> pools;
  for (const Publication& pub : corpus.publications)
    for (const std::string& cat : pub.categories)
      pools[{pub.year, cat}].push_back(pub.citations);

  std::map<PoolKey, PoolStats> out;
  for (auto& [key, citations] : pools) {
    std::sort(citations.begin(), citations.end());
    PoolStats stats;
    stats.size = citations.size();
    const std::size_t n = citations.size();
    stats.median = n % 2 == 1
                       ? static_cast<double>(citations[n / 2])
                       : (static_cast<double>(citations[n / 2 - 1]) +
                          static_cast<double>(citations[n / 2])) / 2.0;
    long long total = 0;
    for (long long c : citations) total += c;
    stats.mean = static_cast<double>(total) / static_cast<double>(n);
    out.emplace(key, stats);
  }
  return out;
}

ImpactMap article_impact(const Corpus& corpus) {
  return article_impact(corpus, compute_medians(corpus));
}

ImpactMap article_impact(const Corpus& corpus,
                         const std::map<PoolKey, PoolStats>& pools) {
  ImpactMap out;
  for (const Publication& pub : corpus.publications) {
    ImpactRecord rec;
    rec.pub_id = pub.pub_id;
    double sum = 0.0;
    for (const std::string& cat : pub.categories) {
      const PoolStats& pool = pools.at({pub.year, cat});
      CategoryImpact ci;
      ci.category = cat;
      ci.year = pub.year;
      ci.pool_median = pool.median;
      double c = static_cast<double>(pub.citations);
      if (pool.median > 0.0) {
        ci.normalized = c / pool.median;
        ci.fallback = Fallback::none;
      } else if (pool.mean > 0.0) {
        ci.normalized = c / pool.mean;
        ci.fallback = Fallback::mean;
      } else {
        // All-zero pool: every member has 0 citations.
        ci.normalized = 0.0;
        ci.fallback = Fallback::zero;
      }
      sum += ci.normalized;
      rec.per_category.push_back(std::move(ci));
    }
    rec.aii = sum / static_cast<double>(pub.categories.size());
    out.emplace(pub.pub_id, std::move(rec));
  }
  return out;
}

std::string fallback_name(Fallback f) {
  switch (f) {
    case Fallback::none: return "none";
    case Fallback::mean: return "mean";
    case Fallback::zero: return "zero";
  }
  return "?";
}

std::string impact_csv(const ImpactMap& impact) {
  std::string out = "pub_id,aii\n";
  for (const auto& [pub_id, rec] : impact)
    out += csv::join_row({pub_id, csv::format_double(rec.aii)});
  return out;
}

std::string impact_audit_csv(const ImpactMap& impact) {
  std::string out = "pub_id,category,year,median,normalized,fallback\n";
  for (const auto& [pub_id, rec] : impact)
    for (const CategoryImpact& ci : rec.per_category)
      out += csv::join_row({pub_id, ci.category, std::to_string(ci.year),
                            csv::format_double(ci.pool_median),
                            csv::format_double(ci.normalized),
                            fallback_name(ci.fallback)});
  return out;
}

}  // namespace bibliorank
