#include "bibliorank/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include <json.hpp>

#include "bibliorank/csv.hpp"
#include "bibliorank/errors.hpp"
#include "bibliorank/ranklab.hpp"

namespace bibliorank {

using nlohmann::json;

SubmissionStrategy strategy_from_string(const std::string& s) {
  if (s == "best_aii") return SubmissionStrategy::best_aii;
  if (s == "random") return SubmissionStrategy::random;
  if (s == "worst_aii") return SubmissionStrategy::worst_aii;
  throw ValidationError("submission strategy must be best_aii/random/worst_aii, got '" + s + "'");
}

std::string strategy_name(SubmissionStrategy s) {
  switch (s) {
    case SubmissionStrategy::best_aii: return "best_aii";
    case SubmissionStrategy::random: return "random";
    case SubmissionStrategy::worst_aii: return "worst_aii";
  }
  return "?";
}

void check_config(const SynthConfig& cfg) {
  auto prob = [](double p, const char* name) {
    if (p < 0.0 || p > 1.0)
      throw ValidationError(std::string(name) + " must be in [0,1]");
  };
  if (cfg.n_udas < 1 || cfg.sds_per_uda < 1 || cfg.n_institutions < 1)
    throw ValidationError("n_udas, sds_per_uda and n_institutions must be >= 1");
  prob(cfg.staff_per_cell.uda_active_prob, "staff_per_cell.uda_active_prob");
  prob(cfg.staff_per_cell.cell_active_prob, "staff_per_cell.cell_active_prob");
  if (cfg.staff_per_cell.mean < 1.0)
    throw ValidationError("staff_per_cell.mean must be >= 1");
  if (cfg.pubs_per_researcher < 0.0)
    throw ValidationError("pubs_per_researcher must be >= 0");
  if (cfg.coauthors.mean < 1.0)
    throw ValidationError("coauthors.mean must be >= 1");
  prob(cfg.coauthors.external_prob, "coauthors.external_prob");
  prob(cfg.coauthors.cross_institution_prob, "coauthors.cross_institution_prob");
  prob(cfg.coauthors.cross_uda_prob, "coauthors.cross_uda_prob");
  if (cfg.coauthors.external_prob + cfg.coauthors.cross_institution_prob +
          cfg.coauthors.cross_uda_prob > 1.0)
    throw ValidationError("coauthor slot probabilities sum above 1");
  prob(cfg.peer_noise, "peer_noise");
  if (cfg.submission_rate <= 0.0 || cfg.submission_rate > 1.0)
    throw ValidationError("submission_rate must be in (0,1]");
  if (!(cfg.rating_cuts[0] > cfg.rating_cuts[1] &&
        cfg.rating_cuts[1] > cfg.rating_cuts[2] && cfg.rating_cuts[2] >= 0.0 &&
        cfg.rating_cuts[0] < 1.0))
    throw ValidationError("rating_cuts must satisfy 1 > E > G > A >= 0");
  if (cfg.year_min > cfg.year_max)
    throw ValidationError("year_min must be <= year_max");
  for (int idx : cfg.life_science_udas)
    if (idx < 1 || idx > cfg.n_udas)
      throw ValidationError("life_science_udas indices must be in 1..n_udas");
}

namespace {

std::string padded(const char* prefix, int value, int width) {
  std::string digits = std::to_string(value);
  std::string out = prefix;
  out.append(static_cast<std::size_t>(width) - std::min<std::size_t>(
                 static_cast<std::size_t>(width), digits.size()),
             '0');
  out += digits;
  return out;
}

int digits_for(int n) {
  int d = 1;
  while (n >= 10) {
    n /= 10;
    ++d;
  }
  return d;
}

}  // namespace

Corpus generate_corpus(const SynthConfig& cfg) {
  check_config(cfg);
  Rng rng(cfg.seed);
  Corpus corpus;

  const int uda_w = digits_for(cfg.n_udas);
  const int sds_w = digits_for(cfg.sds_per_uda);
  const int inst_w = digits_for(cfg.n_institutions);

  // Taxonomy: one subject category shadows each SDS; categories of the
  // flagged UDAs form the life-science set.
  std::vector<std::string> udas;
  std::map<std::string, std::string> category_of_sds;
  for (int u = 1; u <= cfg.n_udas; ++u) {
    std::string uda = padded("U", u, uda_w);
    udas.push_back(uda);
    bool life = std::find(cfg.life_science_udas.begin(),
                          cfg.life_science_udas.end(), u) !=
                cfg.life_science_udas.end();
    for (int s = 1; s <= cfg.sds_per_uda; ++s) {
      std::string sds = padded("S", u, uda_w) + "_" + padded("", s, sds_w);
      std::string cat = "CAT_" + sds;
      corpus.taxonomy.sds_to_uda[sds] = uda;
      corpus.taxonomy.uda_sds[uda].push_back(sds);
      category_of_sds[sds] = cat;
      if (life) corpus.taxonomy.life_science_categories.insert(cat);
    }
  }

  std::vector<std::string> institutions;
  std::map<std::string, double> quality;  // institution -> citation offset
  for (int i = 1; i <= cfg.n_institutions; ++i) {
    std::string inst = padded("I", i, inst_w);
    institutions.push_back(inst);
    quality[inst] = rng.normal(0.0, cfg.institution_quality_sigma);
  }

  // Roster. Iteration is institution -> uda -> sds, all in id order.
  std::map<InstSds, std::vector<std::string>> cell_members;
  std::map<std::string, std::vector<std::string>> sds_members;
  std::vector<std::string> all_researchers;
  for (const std::string& inst : institutions) {
    for (const std::string& uda : udas) {
      if (rng.uniform01() >= cfg.staff_per_cell.uda_active_prob) continue;
      for (const std::string& sds : corpus.taxonomy.uda_sds[uda]) {
        if (rng.uniform01() >= cfg.staff_per_cell.cell_active_prob) continue;
        long long count = 1 + rng.poisson(cfg.staff_per_cell.mean - 1.0);
        for (long long k = 1; k <= count; ++k) {
          RosterRow row;
          row.researcher_id = "R_" + inst + "_" + sds + "_" + padded("", static_cast<int>(k), 3);
          row.institution_id = inst;
          row.sds_id = sds;
          row.fte = 1.0;
          cell_members[{inst, sds}].push_back(row.researcher_id);
          sds_members[sds].push_back(row.researcher_id);
          all_researchers.push_back(row.researcher_id);
          corpus.roster.push_back(std::move(row));
        }
      }
    }
  }
  if (all_researchers.empty())
    throw ComputationError("configuration generated an empty roster");
  std::sort(all_researchers.begin(), all_researchers.end());
  for (auto& [key, members] : sds_members) {
    (void)key;
    std::sort(members.begin(), members.end());
  }

  // Per (year, category) location jitter, drawn in sorted key order.
  std::map<std::pair<int, std::string>, double> jitter;
  for (int year = cfg.year_min; year <= cfg.year_max; ++year)
    for (const auto& [sds, cat] : category_of_sds) {
      (void)sds;
      jitter[{year, cat}] =
          rng.uniform(-cfg.citation.location_jitter, cfg.citation.location_jitter);
    }

  // Publications: each researcher leads Poisson(pubs_per_researcher) works.
  const int n_years = cfg.year_max - cfg.year_min + 1;
  long long pub_counter = 0;
  for (const RosterRow& lead : corpus.roster) {
    long long n_pubs = rng.poisson(cfg.pubs_per_researcher);
    for (long long p = 0; p < n_pubs; ++p) {
      Publication pub;
      pub.pub_id = "P" + std::to_string(100000000 + ++pub_counter).substr(1);
      pub.year = cfg.year_min + static_cast<int>(rng.below(static_cast<std::uint64_t>(n_years)));
      pub.categories.push_back(category_of_sds.at(lead.sds_id));

      long long byline = 1 + rng.poisson(cfg.coauthors.mean - 1.0);
      pub.authors.push_back({1, lead.researcher_id});
      for (long long slot = 2; slot <= byline; ++slot) {
        double pick = rng.uniform01();
        AuthorSlot author;
        author.position = static_cast<int>(slot);
        if (pick < cfg.coauthors.external_prob) {
          // unlinked
        } else if (pick < cfg.coauthors.external_prob + cfg.coauthors.cross_uda_prob) {
          author.researcher_id =
              all_researchers[rng.below(all_researchers.size())];
        } else if (pick < cfg.coauthors.external_prob + cfg.coauthors.cross_uda_prob +
                              cfg.coauthors.cross_institution_prob) {
          const auto& pool = sds_members.at(lead.sds_id);
          author.researcher_id = pool[rng.below(pool.size())];
        } else {
          const auto& pool = cell_members.at({lead.institution_id, lead.sds_id});
          author.researcher_id = pool[rng.below(pool.size())];
        }
        pub.authors.push_back(std::move(author));
      }

      double location = cfg.citation.location + quality.at(lead.institution_id) +
                        jitter.at({pub.year, pub.categories.front()});
      double draw = std::exp(rng.normal(location, cfg.citation.scale));
      pub.citations = static_cast<long long>(std::floor(draw));
      corpus.publications.push_back(std::move(pub));
    }
  }

  corpus.finalize();

  // Size classes by staff quartile within each UDA (largest staff = very
  // large), competition-ranked like every other list.
  for (const std::string& uda : udas) {
    std::map<std::string, double> staff;
    for (const auto& [key, value] : corpus.staff_by_inst_uda)
      if (key.second == uda && value > 0.0) staff[key.first] = value;
    if (staff.empty()) continue;
    RankList ranked = build_ranklist(staff, uda);
    for (const RankRow& row : ranked.rows) {
      SizeClass cls = static_cast<SizeClass>(row.quartile - 1);
      corpus.size_classes[{row.institution_id, uda}] = cls;
    }
  }

  ImpactMap impact = article_impact(corpus);
  corpus.peer_outcomes =
      generate_submissions(corpus, impact, cfg, cfg.submission_strategy, rng);
  return corpus;
}

std::vector<PeerOutcome> generate_submissions(const Corpus& corpus,
                                              const ImpactMap& impact,
                                              const SynthConfig& cfg,
                                              SubmissionStrategy strategy,
                                              Rng& rng) {
  // Publications of each institution x UDA cell, and the UDA-wide pool used
  // for percentile cuts. All orderings follow the (AII, citations, pub_id)
  // descending total order, so ranks are unique.
  auto order_key = [&](const std::string& pub_id) {
    const Publication* pub = corpus.find_publication(pub_id);
    return std::make_tuple(impact.at(pub_id).aii, pub->citations, pub_id);
  };
  auto sort_desc = [&](std::vector<std::string>& ids) {
    std::sort(ids.begin(), ids.end(),
              [&](const std::string& a, const std::string& b) {
                return order_key(a) > order_key(b);
              });
  };

  std::map<InstUda, std::vector<std::string>> cell_pubs;
  std::map<std::string, std::vector<std::string>> uda_pool;
  for (const Publication& pub : corpus.publications) {
    std::map<InstUda, bool> seen;
    for (const InstSds& pair : corpus.attributed_pairs(pub)) {
      InstUda key{pair.first, corpus.taxonomy.uda_of(pair.second)};
      if (!seen.emplace(key, true).second) continue;
      cell_pubs[key].push_back(pub.pub_id);
    }
    for (const std::string& uda : corpus.attributed_udas(pub))
      uda_pool[uda].push_back(pub.pub_id);
  }

  // Percentile of each publication within its UDA pool, in [0, 1).
  std::map<std::string, std::map<std::string, double>> uda_percentile;
  for (auto& [uda, pool] : uda_pool) {
    sort_desc(pool);
    const double n = static_cast<double>(pool.size());
    for (std::size_t r = 0; r < pool.size(); ++r)
      uda_percentile[uda][pool[r]] = 1.0 - static_cast<double>(r + 1) / n;
  }

  std::vector<PeerOutcome> outcomes;
  for (auto& [key, pubs] : cell_pubs) {
    auto staff_it = corpus.staff_by_inst_uda.find(key);
    if (staff_it == corpus.staff_by_inst_uda.end() || staff_it->second <= 0.0)
      continue;
    auto quota = static_cast<std::size_t>(
        std::ceil(staff_it->second * cfg.submission_rate));
    quota = std::max<std::size_t>(quota, 1);
    quota = std::min(quota, pubs.size());

    std::vector<std::string> selected;
    switch (strategy) {
      case SubmissionStrategy::best_aii:
        sort_desc(pubs);
        selected.assign(pubs.begin(), pubs.begin() + static_cast<long>(quota));
        break;
      case SubmissionStrategy::worst_aii:
        sort_desc(pubs);
        selected.assign(pubs.end() - static_cast<long>(quota), pubs.end());
        break;
      case SubmissionStrategy::random:
        std::sort(pubs.begin(), pubs.end());
        rng.shuffle(pubs);
        selected.assign(pubs.begin(), pubs.begin() + static_cast<long>(quota));
        break;
    }

    for (const std::string& pub_id : selected) {
      double pct = uda_percentile.at(key.second).at(pub_id);
      Rating deterministic;
      if (pct >= cfg.rating_cuts[0]) deterministic = Rating::E;
      else if (pct >= cfg.rating_cuts[1]) deterministic = Rating::G;
      else if (pct >= cfg.rating_cuts[2]) deterministic = Rating::A;
      else deterministic = Rating::L;

      Rating rating;
      if (rng.uniform01() < cfg.peer_noise) {
        rating = deterministic;
      } else {
        rating = static_cast<Rating>(rng.below(4));
      }
      outcomes.push_back({key.first, key.second, rating});
    }
  }
  return outcomes;
}

void generate(const SynthConfig& cfg, const std::filesystem::path& dir) {
  Corpus corpus = generate_corpus(cfg);
  write_corpus(corpus, dir);
}

namespace {

template <typename T>
void read_if_present(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

SynthConfig config_from_json_file(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(csv::read_file(path));
  } catch (const json::exception& e) {
    throw ValidationError(path.string() + ": bad JSON: " + e.what());
  }
  SynthConfig cfg;
  try {
    read_if_present(j, "seed", cfg.seed);
    read_if_present(j, "n_udas", cfg.n_udas);
    read_if_present(j, "sds_per_uda", cfg.sds_per_uda);
    read_if_present(j, "n_institutions", cfg.n_institutions);
    if (j.contains("staff_per_cell")) {
      const json& s = j.at("staff_per_cell");
      read_if_present(s, "uda_active_prob", cfg.staff_per_cell.uda_active_prob);
      read_if_present(s, "cell_active_prob", cfg.staff_per_cell.cell_active_prob);
      read_if_present(s, "mean", cfg.staff_per_cell.mean);
    }
    read_if_present(j, "pubs_per_researcher", cfg.pubs_per_researcher);
    if (j.contains("citation")) {
      const json& c = j.at("citation");
      read_if_present(c, "location", cfg.citation.location);
      read_if_present(c, "scale", cfg.citation.scale);
      read_if_present(c, "location_jitter", cfg.citation.location_jitter);
    }
    if (j.contains("coauthors")) {
      const json& c = j.at("coauthors");
      read_if_present(c, "mean", cfg.coauthors.mean);
      read_if_present(c, "external_prob", cfg.coauthors.external_prob);
      read_if_present(c, "cross_institution_prob",
                      cfg.coauthors.cross_institution_prob);
      read_if_present(c, "cross_uda_prob", cfg.coauthors.cross_uda_prob);
    }
    read_if_present(j, "institution_quality_sigma", cfg.institution_quality_sigma);
    read_if_present(j, "life_science_udas", cfg.life_science_udas);
    read_if_present(j, "peer_noise", cfg.peer_noise);
    read_if_present(j, "submission_rate", cfg.submission_rate);
    if (j.contains("submission_strategy"))
      cfg.submission_strategy =
          strategy_from_string(j.at("submission_strategy").get<std::string>());
    if (j.contains("rating_cuts")) {
      auto cuts = j.at("rating_cuts").get<std::vector<double>>();
      if (cuts.size() != 3)
        throw ValidationError("rating_cuts must have exactly 3 entries");
      cfg.rating_cuts = {cuts[0], cuts[1], cuts[2]};
    }
    read_if_present(j, "year_min", cfg.year_min);
    read_if_present(j, "year_max", cfg.year_max);
  } catch (const json::exception& e) {
    throw ValidationError(path.string() + ": bad config value: " + e.what());
  }
  check_config(cfg);
  return cfg;
}

std::string config_to_json(const SynthConfig& cfg) {
  json j;
  j["seed"] = cfg.seed;
  j["n_udas"] = cfg.n_udas;
  j["sds_per_uda"] = cfg.sds_per_uda;
  j["n_institutions"] = cfg.n_institutions;
  j["staff_per_cell"] = {{"uda_active_prob", cfg.staff_per_cell.uda_active_prob},
                         {"cell_active_prob", cfg.staff_per_cell.cell_active_prob},
                         {"mean", cfg.staff_per_cell.mean}};
  j["pubs_per_researcher"] = cfg.pubs_per_researcher;
  j["citation"] = {{"location", cfg.citation.location},
                   {"scale", cfg.citation.scale},
                   {"location_jitter", cfg.citation.location_jitter}};
  j["coauthors"] = {{"mean", cfg.coauthors.mean},
                    {"external_prob", cfg.coauthors.external_prob},
                    {"cross_institution_prob", cfg.coauthors.cross_institution_prob},
                    {"cross_uda_prob", cfg.coauthors.cross_uda_prob}};
  j["institution_quality_sigma"] = cfg.institution_quality_sigma;
  j["life_science_udas"] = cfg.life_science_udas;
  j["peer_noise"] = cfg.peer_noise;
  j["submission_rate"] = cfg.submission_rate;
  j["submission_strategy"] = strategy_name(cfg.submission_strategy);
  j["rating_cuts"] = {cfg.rating_cuts[0], cfg.rating_cuts[1], cfg.rating_cuts[2]};
  j["year_min"] = cfg.year_min;
  j["year_max"] = cfg.year_max;
  return j.dump(2) + "\n";
}

}  // namespace bibliorank
