#pragma once

#include <map>
#include <string>
#include <vector>

#include "bibliorank/corpus.hpp"

namespace bibliorank {

struct PoolKey {
  int year = 0;
  std::string category;
  bool operator<(const PoolKey& o) const {
    if (year != o.year) return year < o.year;
    return category < o.category;
  }
};

struct PoolStats {
  double median = 0.0;
  double mean = 0.0;
  std::size_t size = 0;
};

// Citation pools keyed by (year, category); a publication listing k
// categories contributes its citation count to k pools. Even-sized pools
// take the mean of the two middle values.
std::map<PoolKey, PoolStats> compute_medians(const Corpus& corpus);

enum class Fallback {
  none,  // normalized = citations / pool median
  mean,  // pool median was 0, normalized = citations / pool mean
  zero,  // pool mean also 0 (all-zero pool), normalized defined as 0
};

std::string fallback_name(Fallback f);

struct CategoryImpact {
  std::string category;
  int year = 0;
  double pool_median = 0.0;
  double normalized = 0.0;
  Fallback fallback = Fallback::none;
};

// Article impact index: citations standardized to the (year, category) pool
// median; multi-category publications are normalized per category and the
// AII is the arithmetic mean of the per-category values.
struct ImpactRecord {
  std::string pub_id;
  double aii = 0.0;
  std::vector<CategoryImpact> per_category;
};

using ImpactMap = std::map<std::string, ImpactRecord>;

ImpactMap article_impact(const Corpus& corpus);
ImpactMap article_impact(const Corpus& corpus,
                         const std::map<PoolKey, PoolStats>& pools);

// pub_id,aii
std::string impact_csv(const ImpactMap& impact);
// pub_id,category,year,median,normalized,fallback
std::string impact_audit_csv(const ImpactMap& impact);

}  // namespace bibliorank
