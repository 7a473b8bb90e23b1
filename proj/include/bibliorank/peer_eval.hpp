#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bibliorank/corpus.hpp"

namespace bibliorank {

// One institution x UDA cell of the peer exercise. The quality score is
//   R = (E + 0.8 G + 0.6 A + 0.2 L) / T,   T = E + G + A + L,
// so 0.2 <= R <= 1 whenever anything was submitted.
struct PeerSummary {
  std::string institution_id;
  std::string uda_id;
  long long e = 0, g = 0, a = 0, l = 0;
  long long t = 0;
  double r = 0.0;
};

PeerSummary peer_score(const std::string& institution_id,
                       const std::string& uda_id,
                       const std::vector<Rating>& ratings);

// All cells with at least one rated output, aggregated from per-output rows.
std::map<InstUda, PeerSummary> aggregate_peer_outcomes(const Corpus& corpus);

struct PeerTableRow {
  PeerSummary summary;
  int rank = 0;  // competition rank on R within the UDA
  double percentile = 0.0;
  std::optional<SizeClass> size_class;
  int class_rank = 0;  // competition rank within the size class, 0 if none
};

struct PeerTable {
  std::string uda_id;
  std::vector<PeerTableRow> rows;  // R desc
};

PeerTable peer_rank_table(const Corpus& corpus, const std::string& uda_id);

// UDAs with any peer data, sorted.
std::vector<std::string> peer_udas(const Corpus& corpus);

// institution_id,uda_id,E,G,A,L,T,R,rank,class,class_rank
std::string peer_table_csv(const std::vector<PeerTable>& tables);

}  // namespace bibliorank
