#pragma once

#include <map>
#include <string>
#include <vector>

#include "bibliorank/corpus.hpp"
#include "bibliorank/credit.hpp"
#include "bibliorank/impact.hpp"

namespace bibliorank {

enum class Scenario { A, B };

Scenario scenario_from_string(const std::string& s);
std::string scenario_name(Scenario s);

// Excellent-publication set of one UDA. Scenario A sizes it as 10% of the
// UDA's national publication pool; scenario B as 25% of the UDA's national
// research staff. Both round half-up and clamp to the pool size. Selection
// order is descending (AII, citations, pub_id): a fixed total order, so the
// set is always a prefix and ties at the cutoff resolve deterministically.
struct ExcellentSet {
  std::string uda_id;
  Scenario scenario = Scenario::A;
  std::size_t k = 0;
  std::vector<std::string> pub_ids;  // in selection order
  double threshold_aii = 0.0;       // AII of the last selected, 0 when k = 0
};

ExcellentSet select_excellent(const Corpus& corpus, const ImpactMap& impact,
                              const std::string& uda_id, Scenario scenario);

// Pool and ordering helpers, exposed for enumeration-style tests.
std::vector<std::string> uda_publication_pool(const Corpus& corpus,
                                              const std::string& uda_id);
std::vector<std::string> select_top_k(const Corpus& corpus,
                                      const ImpactMap& impact,
                                      std::vector<std::string> pool,
                                      std::size_t k);

struct ExcellenceScore {
  std::string institution_id;
  std::string uda_id;
  long long ne_i = 0;  // excellent publications with >= 1 author of i (full counting)
  long long ne = 0;    // national excellent count in the UDA
  double rs_i = 0.0;
  double rs = 0.0;
  double score = 0.0;  // (ne_i/ne) / (rs_i/rs)
};

// One row per institution with staff in the UDA; cells with zero staff are
// skipped (the indicator is undefined there).
std::vector<ExcellenceScore> excellence_scores(const Corpus& corpus,
                                               const ExcellentSet& set);

struct SdsProductivity {
  std::string institution_id;
  std::string sds_id;
  double rs = 0.0;      // RS_{i,s}
  long long n_pubs = 0; // publications with >= 1 linked author in (i,s)
  double rp = 0.0;      // (1/RS_{i,s}) * sum_j AII_j * n_{j,i,s}
};

using CreditMap = std::map<std::string, CreditShare>;

CreditMap allocate_all_credit(const Corpus& corpus);

// Every (institution, sds) cell with positive staff. Throws when credited
// publications land on a zero-staff cell (roster inconsistency).
std::map<InstSds, SdsProductivity> sds_productivity(const Corpus& corpus,
                                                    const ImpactMap& impact,
                                                    const CreditMap& credit);

SdsProductivity sds_productivity_cell(const Corpus& corpus,
                                      const ImpactMap& impact,
                                      const CreditMap& credit,
                                      const std::string& institution_id,
                                      const std::string& sds_id);

enum class NationalMean { weighted, unweighted };

// RP_s: national productivity of an SDS. Weighted (default) is the
// staff-weighted mean = total credited impact / national staff; unweighted
// averages RP_{i,s} over institutions active in s.
std::map<std::string, double> national_sds_productivity(
    const Corpus& corpus, const std::map<InstSds, SdsProductivity>& cells,
    NationalMean mode = NationalMean::weighted);

struct UdaComponent {
  std::string sds_id;
  double rp_is = 0.0;
  double rp_s = 0.0;
  double staff_weight = 0.0;  // RS_{i,s} / sum of included RS_{i,s}
};

struct UdaProductivity {
  std::string institution_id;
  std::string uda_id;
  double rs = 0.0;  // RS_{i,u}
  double rp = 0.0;  // sum_s (RP_{i,s}/RP_s) * staff_weight_s
  std::vector<UdaComponent> components;
};

// SDSs with RP_s = 0 are excluded and the remaining staff weights are
// renormalized to sum 1; an institution whose SDSs are all excluded gets 0.
std::map<InstUda, UdaProductivity> uda_productivity(
    const Corpus& corpus, const std::map<InstSds, SdsProductivity>& cells,
    const std::map<std::string, double>& national);

UdaProductivity uda_productivity_cell(
    const Corpus& corpus, const std::map<InstSds, SdsProductivity>& cells,
    const std::map<std::string, double>& national,
    const std::string& institution_id, const std::string& uda_id);

// institution_id,uda_id,ne_i,ne,rs_i,rs,I
std::string excellence_csv(const std::vector<ExcellenceScore>& scores);
// institution_id,sds_id,rs,n_pubs,rp
std::string productivity_sds_csv(const std::map<InstSds, SdsProductivity>& cells);
// institution_id,uda_id,rs,rp
std::string productivity_uda_csv(const std::map<InstUda, UdaProductivity>& cells);
// institution_id,uda_id,staff
std::string staff_uda_csv(const Corpus& corpus);

}  // namespace bibliorank
