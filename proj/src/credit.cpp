#include "bibliorank/credit.hpp"

#include "bibliorank/csv.hpp"

namespace bibliorank {

std::vector<double> uniform_weights(std::size_t n_authors) {
  return std::vector<double>(n_authors, 1.0 / static_cast<double>(n_authors));
}

std::vector<double> positional_weights(std::size_t n_authors,
                                       bool first_last_same_institution) {
  const std::size_t a = n_authors;
  std::vector<double> w(a, 0.0);
  std::vector<bool> named(a, false);

  auto assign = [&](std::size_t pos, double weight) {
    w[pos] += weight;
    named[pos] = true;
  };

  if (first_last_same_institution) {
    assign(0, 0.40);
    assign(a - 1, 0.40);
  } else {
    assign(0, 0.30);
    assign(a - 1, 0.30);
    if (a >= 2) {
      assign(1, 0.15);      // second
      assign(a - 2, 0.15);  // second-to-last
    }
  }

  std::size_t others = 0;
  for (std::size_t i = 0; i < a; ++i)
    if (!named[i]) ++others;
  if (others > 0) {
    double residual = first_last_same_institution ? 0.20 : 0.10;
    double each = residual / static_cast<double>(others);
    for (std::size_t i = 0; i < a; ++i)
      if (!named[i]) w[i] = each;
  }

  double total = 0.0;
  for (double v : w) total += v;
  for (double& v : w) v /= total;
  return w;
}

CreditShare allocate_credit(const Publication& pub, const Corpus& corpus) {
  CreditShare share;
  share.pub_id = pub.pub_id;
  share.scheme = corpus.is_life_science(pub) ? CreditScheme::positional
                                             : CreditScheme::uniform;

  const std::size_t a = pub.authors.size();
  std::vector<double> weights;
  if (share.scheme == CreditScheme::uniform) {
    weights = uniform_weights(a);
  } else {
    // "Same institution" requires both endpoints linked; an unknown
    // affiliation cannot be presumed equal.
    const RosterRow* first = pub.authors.front().researcher_id
        ? corpus.find_researcher(*pub.authors.front().researcher_id)
        : nullptr;
    const RosterRow* last = pub.authors.back().researcher_id
        ? corpus.find_researcher(*pub.authors.back().researcher_id)
        : nullptr;
    bool same = first && last && first->institution_id == last->institution_id;
    weights = positional_weights(a, same);
  }

  for (std::size_t i = 0; i < a; ++i) {
    const AuthorSlot& slot = pub.authors[i];
    if (slot.researcher_id) {
      const RosterRow* row = corpus.find_researcher(*slot.researcher_id);
      share.shares[{row->institution_id, row->sds_id}] += weights[i];
    } else {
      share.external_share += weights[i];
    }
  }
  return share;
}

double institution_fraction(const CreditShare& share,
                            const std::string& institution_id,
                            const std::string& sds_id) {
  auto it = share.shares.find({institution_id, sds_id});
  return it == share.shares.end() ? 0.0 : it->second;
}

std::string scheme_name(CreditScheme s) {
  return s == CreditScheme::uniform ? "uniform" : "positional";
}

std::string credit_audit_csv(const std::vector<CreditShare>& shares) {
  std::string out = "pub_id,institution_id,sds_id,weight,scheme\n";
  for (const CreditShare& share : shares) {
    for (const auto& [key, weight] : share.shares)
      out += csv::join_row({share.pub_id, key.first, key.second,
                            csv::format_double(weight), scheme_name(share.scheme)});
    if (share.external_share > 0.0)
      out += csv::join_row({share.pub_id, "_external", "",
                            csv::format_double(share.external_share),
                            scheme_name(share.scheme)});
  }
  return out;
}

}  // namespace bibliorank
