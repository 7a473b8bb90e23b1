#pragma once

#include <map>
#include <string>
#include <vector>

#include "bibliorank/corpus.hpp"

namespace bibliorank {

enum class CreditScheme { uniform, positional };

// Fractional credit n_{j,i,s} of one publication across (institution, SDS)
// pairs. Weights over all author slots always sum to 1; slots without a
// roster link accumulate into external_share.
struct CreditShare {
  std::string pub_id;
  std::map<InstSds, double> shares;
  double external_share = 0.0;
  CreditScheme scheme = CreditScheme::uniform;
};

// Per-slot weights for a byline of `n_authors`.
//
// Uniform: every slot gets 1/A.
//
// Positional (life-science categories): if first and last author are both
// linked and belong to the same institution, first and last get 0.40 each
// and the remaining 0.20 is split over the middle slots; otherwise first
// and last get 0.30, second and second-to-last 0.15, and the remaining
// 0.10 is split over the rest. With fewer than four authors the named
// positions coincide; a slot accumulates the sum of its role weights and
// the vector is renormalized to sum to 1 (also covers bylines that leave a
// residual with no middle slot to receive it).
std::vector<double> positional_weights(std::size_t n_authors,
                                       bool first_last_same_institution);

std::vector<double> uniform_weights(std::size_t n_authors);

CreditShare allocate_credit(const Publication& pub, const Corpus& corpus);

double institution_fraction(const CreditShare& share,
                            const std::string& institution_id,
                            const std::string& sds_id);

std::string scheme_name(CreditScheme s);

// pub_id,institution_id,sds_id,weight,scheme; external share appears under
// the reserved institution id "_external" with an empty sds.
std::string credit_audit_csv(const std::vector<CreditShare>& shares);

}  // namespace bibliorank
