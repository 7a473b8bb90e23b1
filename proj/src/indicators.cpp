#include "bibliorank/indicators.hpp"

#include <algorithm>
#include <cmath>

#include "bibliorank/csv.hpp"
#include "bibliorank/errors.hpp"

namespace bibliorank {

Scenario scenario_from_string(const std::string& s) {
  if (s == "A" || s == "a") return Scenario::A;
  if (s == "B" || s == "b") return Scenario::B;
  throw ValidationError("scenario must be A or B, got '" + s + "'");
}

std::string scenario_name(Scenario s) { return s == Scenario::A ? "A" : "B"; }

std::vector<std::string> uda_publication_pool(const Corpus& corpus,
                                              const std::string& uda_id) {
  std::vector<std::string> pool;
  for (const Publication& pub : corpus.publications) {
    for (const std::string& uda : corpus.attributed_udas(pub)) {
      if (uda == uda_id) {
        pool.push_back(pub.pub_id);
        break;
      }
    }
  }
  return pool;
}

std::vector<std::string> select_top_k(const Corpus& corpus,
                                      const ImpactMap& impact,
                                      std::vector<std::string> pool,
                                      std::size_t k) {
  auto key = [&](const std::string& pub_id) {
    const Publication* pub = corpus.find_publication(pub_id);
    return std::make_tuple(impact.at(pub_id).aii, pub->citations, pub_id);
  };
  std::sort(pool.begin(), pool.end(),
            [&](const std::string& a, const std::string& b) {
              return key(a) > key(b);  // descending (AII, citations, pub_id)
            });
  if (k < pool.size()) pool.resize(k);
  return pool;
}

namespace {

std::size_t round_half_up_clamped(double x, std::size_t limit) {
  double r = std::floor(x + 0.5);
  if (r < 0.0) return 0;
  auto k = static_cast<std::size_t>(r);
  return std::min(k, limit);
}

}  // namespace

ExcellentSet select_excellent(const Corpus& corpus, const ImpactMap& impact,
                              const std::string& uda_id, Scenario scenario) {
  std::vector<std::string> pool = uda_publication_pool(corpus, uda_id);
  if (pool.empty())
    throw ComputationError("no publications attributed to uda " + uda_id);

  std::size_t k;
  if (scenario == Scenario::A) {
    k = round_half_up_clamped(0.10 * static_cast<double>(pool.size()), pool.size());
  } else {
    auto it = corpus.staff_by_uda.find(uda_id);
    double rs_u = it == corpus.staff_by_uda.end() ? 0.0 : it->second;
    k = round_half_up_clamped(0.25 * rs_u, pool.size());
  }

  ExcellentSet set;
  set.uda_id = uda_id;
  set.scenario = scenario;
  set.k = k;
  set.pub_ids = select_top_k(corpus, impact, std::move(pool), k);
  set.threshold_aii = set.pub_ids.empty() ? 0.0 : impact.at(set.pub_ids.back()).aii;
  return set;
}

std::vector<ExcellenceScore> excellence_scores(const Corpus& corpus,
                                               const ExcellentSet& set) {
  auto rs_it = corpus.staff_by_uda.find(set.uda_id);
  double rs = rs_it == corpus.staff_by_uda.end() ? 0.0 : rs_it->second;
  if (rs <= 0.0)
    throw ComputationError("no research staff in uda " + set.uda_id);
  if (set.pub_ids.empty())
    throw ComputationError("empty excellent set for uda " + set.uda_id);

  std::map<std::string, long long> ne_i;
  for (const std::string& pub_id : set.pub_ids) {
    const Publication* pub = corpus.find_publication(pub_id);
    for (const std::string& inst : corpus.attributed_institutions(*pub)) {
      // Count only through authors whose SDS belongs to this UDA.
      bool in_uda = false;
      for (const InstSds& pair : corpus.attributed_pairs(*pub))
        if (pair.first == inst && corpus.taxonomy.uda_of(pair.second) == set.uda_id)
          in_uda = true;
      if (in_uda) ne_i[inst] += 1;
    }
  }

  long long ne = static_cast<long long>(set.pub_ids.size());
  std::vector<ExcellenceScore> scores;
  for (const auto& [key, rs_i] : corpus.staff_by_inst_uda) {
    if (key.second != set.uda_id || rs_i <= 0.0) continue;
    ExcellenceScore s;
    s.institution_id = key.first;
    s.uda_id = set.uda_id;
    auto it = ne_i.find(key.first);
    s.ne_i = it == ne_i.end() ? 0 : it->second;
    s.ne = ne;
    s.rs_i = rs_i;
    s.rs = rs;
    s.score = (static_cast<double>(s.ne_i) / static_cast<double>(ne)) /
              (rs_i / rs);
    scores.push_back(std::move(s));
  }
  return scores;
}

CreditMap allocate_all_credit(const Corpus& corpus) {
  CreditMap credit;
  for (const Publication& pub : corpus.publications)
    credit.emplace(pub.pub_id, allocate_credit(pub, corpus));
  return credit;
}

std::map<InstSds, SdsProductivity> sds_productivity(const Corpus& corpus,
                                                    const ImpactMap& impact,
                                                    const CreditMap& credit) {
  std::map<InstSds, SdsProductivity> cells;
  for (const auto& [key, rs] : corpus.staff_by_inst_sds) {
    if (rs <= 0.0) continue;
    SdsProductivity cell;
    cell.institution_id = key.first;
    cell.sds_id = key.second;
    cell.rs = rs;
    cells.emplace(key, std::move(cell));
  }

  for (const Publication& pub : corpus.publications) {
    const CreditShare& share = credit.at(pub.pub_id);
    double aii = impact.at(pub.pub_id).aii;
    for (const auto& [key, weight] : share.shares) {
      auto it = cells.find(key);
      if (it == cells.end())
        throw ValidationError("roster inconsistency: publication " + pub.pub_id +
                              " credited to zero-staff cell (" + key.first +
                              ", " + key.second + ")");
      it->second.rp += aii * weight;  // numerator for now
      it->second.n_pubs += 1;
    }
  }
  for (auto& [key, cell] : cells) {
    (void)key;
    cell.rp /= cell.rs;
  }
  return cells;
}

SdsProductivity sds_productivity_cell(const Corpus& corpus,
                                      const ImpactMap& impact,
                                      const CreditMap& credit,
                                      const std::string& institution_id,
                                      const std::string& sds_id) {
  auto cells = sds_productivity(corpus, impact, credit);
  auto it = cells.find({institution_id, sds_id});
  if (it == cells.end())
    throw ComputationError("no staff for (" + institution_id + ", " + sds_id + ")");
  return it->second;
}

std::map<std::string, double> national_sds_productivity(
    const Corpus& corpus, const std::map<InstSds, SdsProductivity>& cells,
    NationalMean mode) {
  std::map<std::string, double> out;
  if (mode == NationalMean::weighted) {
    // Total credited impact of the SDS over total national staff; staff
    // weights and rp denominators cancel per cell.
    std::map<std::string, double> impact_total;
    for (const auto& [key, cell] : cells)
      impact_total[key.second] += cell.rs * cell.rp;
    for (const auto& [sds, total] : impact_total)
      out[sds] = total / corpus.staff_by_sds.at(sds);
  } else {
    std::map<std::string, std::pair<double, long long>> acc;
    for (const auto& [key, cell] : cells) {
      acc[key.second].first += cell.rp;
      acc[key.second].second += 1;
    }
    for (const auto& [sds, pair] : acc)
      out[sds] = pair.first / static_cast<double>(pair.second);
  }
  return out;
}

UdaProductivity uda_productivity_cell(
    const Corpus& corpus, const std::map<InstSds, SdsProductivity>& cells,
    const std::map<std::string, double>& national,
    const std::string& institution_id, const std::string& uda_id) {
  auto rs_it = corpus.staff_by_inst_uda.find({institution_id, uda_id});
  if (rs_it == corpus.staff_by_inst_uda.end() || rs_it->second <= 0.0)
    throw ComputationError("no staff for (" + institution_id + ", " + uda_id + ")");

  UdaProductivity out;
  out.institution_id = institution_id;
  out.uda_id = uda_id;
  out.rs = rs_it->second;

  // Gather the institution's SDS cells of this UDA whose national mean is
  // positive; their staff weights are renormalized to sum 1.
  double included_staff = 0.0;
  std::vector<const SdsProductivity*> included;
  for (const std::string& sds : corpus.taxonomy.uda_sds.at(uda_id)) {
    auto it = cells.find({institution_id, sds});
    if (it == cells.end()) continue;
    auto nat = national.find(sds);
    if (nat == national.end() || nat->second <= 0.0) continue;
    included.push_back(&it->second);
    included_staff += it->second.rs;
  }
  if (included_staff <= 0.0) {
    out.rp = 0.0;
    return out;
  }
  for (const SdsProductivity* cell : included) {
    UdaComponent comp;
    comp.sds_id = cell->sds_id;
    comp.rp_is = cell->rp;
    comp.rp_s = national.at(cell->sds_id);
    comp.staff_weight = cell->rs / included_staff;
    out.rp += (comp.rp_is / comp.rp_s) * comp.staff_weight;
    out.components.push_back(std::move(comp));
  }
  return out;
}

std::map<InstUda, UdaProductivity> uda_productivity(
    const Corpus& corpus, const std::map<InstSds, SdsProductivity>& cells,
    const std::map<std::string, double>& national) {
  std::map<InstUda, UdaProductivity> out;
  for (const auto& [key, rs] : corpus.staff_by_inst_uda) {
    if (rs <= 0.0) continue;
    out.emplace(key, uda_productivity_cell(corpus, cells, national, key.first,
                                           key.second));
  }
  return out;
}

std::string excellence_csv(const std::vector<ExcellenceScore>& scores) {
  std::string out = "institution_id,uda_id,ne_i,ne,rs_i,rs,I\n";
  for (const ExcellenceScore& s : scores)
    out += csv::join_row({s.institution_id, s.uda_id, std::to_string(s.ne_i),
                          std::to_string(s.ne), csv::format_double(s.rs_i),
                          csv::format_double(s.rs), csv::format_double(s.score)});
  return out;
}

std::string productivity_sds_csv(const std::map<InstSds, SdsProductivity>& cells) {
  std::string out = "institution_id,sds_id,rs,n_pubs,rp\n";
  for (const auto& [key, cell] : cells)
    out += csv::join_row({key.first, key.second, csv::format_double(cell.rs),
                          std::to_string(cell.n_pubs), csv::format_double(cell.rp)});
  return out;
}

std::string productivity_uda_csv(const std::map<InstUda, UdaProductivity>& cells) {
  std::string out = "institution_id,uda_id,rs,rp\n";
  for (const auto& [key, cell] : cells)
    out += csv::join_row({key.first, key.second, csv::format_double(cell.rs),
                          csv::format_double(cell.rp)});
  return out;
}

std::string staff_uda_csv(const Corpus& corpus) {
  std::string out = "institution_id,uda_id,staff\n";
  for (const auto& [key, staff] : corpus.staff_by_inst_uda)
    out += csv::join_row({key.first, key.second, csv::format_double(staff)});
  return out;
}

}  // namespace bibliorank
