#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "bibliorank/corpus.hpp"
#include "bibliorank/impact.hpp"
#include "bibliorank/rng.hpp"

namespace bibliorank {

// Synthetic corpus generator. Everything is drawn from one seeded stream in
// a fixed iteration order, so a (config, seed) pair maps to byte-identical
// output directories.
struct StaffPerCell {
  double uda_active_prob = 0.85;   // institution participates in a UDA
  double cell_active_prob = 0.70;  // active UDA cell covers a given SDS
  double mean = 4.2;               // staff of an active cell: 1 + Poisson(mean-1)
};

struct CitationModel {
  double location = 1.1;        // lognormal location, exp(location) ~ median
  double scale = 1.0;           // lognormal scale; keeps mean > median (skew)
  double location_jitter = 0.3; // per (year, category) location offset, U(-j, j)
};

struct CoauthorModel {
  double mean = 4.0;                  // byline length: 1 + Poisson(mean-1)
  double external_prob = 0.25;        // slot has no roster link
  double cross_institution_prob = 0.20;  // linked, same SDS, other institution
  double cross_uda_prob = 0.05;          // linked, anywhere in the roster
};

enum class SubmissionStrategy { best_aii, random, worst_aii };

SubmissionStrategy strategy_from_string(const std::string& s);
std::string strategy_name(SubmissionStrategy s);

struct SynthConfig {
  std::uint64_t seed = 42;
  int n_udas = 8;
  int sds_per_uda = 23;
  int n_institutions = 69;
  StaffPerCell staff_per_cell;
  double pubs_per_researcher = 2.64;
  CitationModel citation;
  CoauthorModel coauthors;
  // Spread of per-institution quality offsets added to the citation
  // location; this is what makes peer and bibliometric rankings agree when
  // peer_noise = 1.
  double institution_quality_sigma = 0.8;
  std::vector<int> life_science_udas = {5, 6};  // 1-based UDA indices
  // Agreement dial: probability that a rating is the deterministic monotone
  // function of the output's AII percentile; otherwise uniform over EGAL.
  double peer_noise = 1.0;
  double submission_rate = 0.25;  // outputs per researcher (one per four)
  SubmissionStrategy submission_strategy = SubmissionStrategy::best_aii;
  std::array<double, 3> rating_cuts = {0.8, 0.5, 0.2};  // E/G/A percentile cuts
  int year_min = 2001;
  int year_max = 2003;
};

SynthConfig config_from_json_file(const std::filesystem::path& path);
std::string config_to_json(const SynthConfig& cfg);
void check_config(const SynthConfig& cfg);

// Builds the corpus in memory: taxonomy, roster, publications, size classes
// and peer outputs (submission selection + rating draw included).
Corpus generate_corpus(const SynthConfig& cfg);

// Writes generate_corpus() output to `dir` in the canonical corpus layout.
void generate(const SynthConfig& cfg, const std::filesystem::path& dir);

// Submission model: every institution x UDA cell with staff submits
// ceil(staff * submission_rate) of its attributed outputs (at least one),
// picked by strategy; ratings follow the AII percentile cuts blended with
// uniform noise by `peer_noise`.
std::vector<PeerOutcome> generate_submissions(const Corpus& corpus,
                                              const ImpactMap& impact,
                                              const SynthConfig& cfg,
                                              SubmissionStrategy strategy,
                                              Rng& rng);

}  // namespace bibliorank
