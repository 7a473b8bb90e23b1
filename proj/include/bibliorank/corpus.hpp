#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace bibliorank {

// SDS = fine-grained disciplinary sector, UDA = top-level disciplinary area.
// Every SDS belongs to exactly one UDA; researchers carry an SDS, and
// publications reach UDAs only through their authors' SDSs.
struct Taxonomy {
  std::map<std::string, std::string> sds_to_uda;
  std::map<std::string, std::vector<std::string>> uda_sds;  // sorted per UDA
  std::set<std::string> life_science_categories;

  bool has_sds(const std::string& sds) const { return sds_to_uda.count(sds) > 0; }
  bool has_uda(const std::string& uda) const { return uda_sds.count(uda) > 0; }
  const std::string& uda_of(const std::string& sds) const;
  std::size_t sds_count(const std::string& uda) const;  // n_u
};

struct RosterRow {
  std::string researcher_id;
  std::string institution_id;
  std::string sds_id;
  double fte = 1.0;  // person-fraction in [0,1]
};

struct AuthorSlot {
  int position = 0;  // 1-based byline position
  std::optional<std::string> researcher_id;  // absent = external author
};

struct Publication {
  std::string pub_id;
  int year = 0;
  std::vector<std::string> categories;
  long long citations = 0;
  std::vector<AuthorSlot> authors;  // ordered by position
};

enum class Rating { E, G, A, L };

Rating rating_from_string(const std::string& s);
char rating_letter(Rating r);

struct PeerOutcome {
  std::string institution_id;
  std::string uda_id;
  Rating rating = Rating::E;
};

enum class SizeClass { very_large, large, medium, small };

SizeClass size_class_from_string(const std::string& s);
std::string size_class_name(SizeClass c);

using InstSds = std::pair<std::string, std::string>;
using InstUda = std::pair<std::string, std::string>;

struct Corpus {
  Taxonomy taxonomy;
  std::vector<RosterRow> roster;          // sorted by researcher_id
  std::vector<Publication> publications;  // sorted by pub_id
  std::vector<PeerOutcome> peer_outcomes;
  std::map<InstUda, SizeClass> size_classes;

  // Caches derived by finalize(). Staff totals are fte sums accumulated in
  // sorted roster order so the floating-point results are reproducible.
  std::map<std::string, std::size_t> researcher_index;
  std::map<InstSds, double> staff_by_inst_sds;   // RS_{i,s}
  std::map<InstUda, double> staff_by_inst_uda;   // RS_{i,u}
  std::map<std::string, double> staff_by_sds;    // RS_s
  std::map<std::string, double> staff_by_uda;    // RS_u
  std::map<std::string, double> staff_by_institution;
  std::set<std::string> institutions;

  void finalize();  // sorts, validates cross-references, rebuilds caches

  const RosterRow* find_researcher(const std::string& id) const;
  const Publication* find_publication(const std::string& pub_id) const;

  // Distinct (institution, sds) pairs of the linked authors, sorted.
  // Multi-assignment: the publication belongs to every pair returned.
  std::vector<InstSds> attributed_pairs(const Publication& pub) const;
  std::vector<std::string> attributed_udas(const Publication& pub) const;
  std::vector<std::string> attributed_institutions(const Publication& pub) const;

  bool is_life_science(const Publication& pub) const;
};

struct StaffScope {
  std::optional<std::string> institution;
  std::optional<std::string> sds;
  std::optional<std::string> uda;
};

// Sum of fte over roster rows matching every given filter.
// Throws ValidationError when a given identifier does not exist.
double staff(const Corpus& corpus, const StaffScope& scope);

struct Finding {
  enum class Level { warning, error };
  Level level = Level::warning;
  std::string message;
};

// Loads and fully validates the canonical on-disk layout:
//   taxonomy.csv, life_science.txt, researchers.csv, publications.jsonl,
//   peer_outputs.csv (optional), size_classes.csv (optional).
Corpus load_corpus(const std::filesystem::path& dir);

// Inverse of load_corpus: load_corpus(write_corpus(c)) == c on all fields.
void write_corpus(const Corpus& corpus, const std::filesystem::path& dir);

// Soft checks on an already-loaded corpus. Empty result = clean.
std::vector<Finding> validate(const Corpus& corpus);

}  // namespace bibliorank
