#include "bibliorank/peer_eval.hpp"

#include <algorithm>

#include "bibliorank/csv.hpp"
#include "bibliorank/errors.hpp"
#include "bibliorank/ranklab.hpp"

namespace bibliorank {

PeerSummary peer_score(const std::string& institution_id,
                       const std::string& uda_id,
                       const std::vector<Rating>& ratings) {
  if (ratings.empty())
    throw ComputationError("peer score undefined: no rated outputs for " +
                           institution_id + " / " + uda_id);
  PeerSummary s;
  s.institution_id = institution_id;
  s.uda_id = uda_id;
  for (Rating r : ratings) {
    switch (r) {
      case Rating::E: ++s.e; break;
      case Rating::G: ++s.g; break;
      case Rating::A: ++s.a; break;
      case Rating::L: ++s.l; break;
    }
  }
  s.t = s.e + s.g + s.a + s.l;
  s.r = (static_cast<double>(s.e) + 0.8 * static_cast<double>(s.g) +
         0.6 * static_cast<double>(s.a) + 0.2 * static_cast<double>(s.l)) /
        static_cast<double>(s.t);
  return s;
}

std::map<InstUda, PeerSummary> aggregate_peer_outcomes(const Corpus& corpus) {
  std::map<InstUda, std::vector<Rating>> cells;
  for (const PeerOutcome& po : corpus.peer_outcomes)
    cells[{po.institution_id, po.uda_id}].push_back(po.rating);
  std::map<InstUda, PeerSummary> out;
  for (const auto& [key, ratings] : cells)
    out.emplace(key, peer_score(key.first, key.second, ratings));
  return out;
}

PeerTable peer_rank_table(const Corpus& corpus, const std::string& uda_id) {
  std::map<InstUda, PeerSummary> cells = aggregate_peer_outcomes(corpus);
  std::map<std::string, PeerSummary> in_uda;
  for (const auto& [key, summary] : cells)
    if (key.second == uda_id) in_uda.emplace(key.first, summary);
  if (in_uda.empty())
    throw ComputationError("no peer data for uda " + uda_id);

  std::map<std::string, double> scores;
  for (const auto& [inst, summary] : in_uda) scores[inst] = summary.r;
  RankList ranked = build_ranklist(scores, uda_id);

  PeerTable table;
  table.uda_id = uda_id;
  for (const RankRow& row : ranked.rows) {
    PeerTableRow out;
    out.summary = in_uda.at(row.institution_id);
    out.rank = row.rank;
    out.percentile = row.percentile;
    auto cls = corpus.size_classes.find({row.institution_id, uda_id});
    if (cls != corpus.size_classes.end()) out.size_class = cls->second;
    table.rows.push_back(std::move(out));
  }

  // Within-class competition ranks, only where classes are known.
  for (SizeClass cls : {SizeClass::very_large, SizeClass::large,
                        SizeClass::medium, SizeClass::small}) {
    int pos = 0, rank = 0;
    double prev = 2.0;
    for (PeerTableRow& row : table.rows) {
      if (!row.size_class || *row.size_class != cls) continue;
      ++pos;
      if (row.summary.r != prev) rank = pos;
      prev = row.summary.r;
      row.class_rank = rank;
    }
  }
  return table;
}

std::vector<std::string> peer_udas(const Corpus& corpus) {
  std::vector<std::string> udas;
  for (const PeerOutcome& po : corpus.peer_outcomes) udas.push_back(po.uda_id);
  std::sort(udas.begin(), udas.end());
  udas.erase(std::unique(udas.begin(), udas.end()), udas.end());
  return udas;
}

std::string peer_table_csv(const std::vector<PeerTable>& tables) {
  std::string out = "institution_id,uda_id,E,G,A,L,T,R,rank,class,class_rank\n";
  for (const PeerTable& table : tables) {
    for (const PeerTableRow& row : table.rows) {
      const PeerSummary& s = row.summary;
      out += csv::join_row(
          {s.institution_id, s.uda_id, std::to_string(s.e), std::to_string(s.g),
           std::to_string(s.a), std::to_string(s.l), std::to_string(s.t),
           csv::format_double(s.r), std::to_string(row.rank),
           row.size_class ? size_class_name(*row.size_class) : "",
           row.class_rank > 0 ? std::to_string(row.class_rank) : ""});
    }
  }
  return out;
}

}  // namespace bibliorank
