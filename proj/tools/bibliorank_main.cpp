// bibliorank: research-assessment toolkit over publication corpora.
// Subcommands wire the library modules together:
//   synth -> corpus generation, peer -> quality-index tables,
//   excellence / productivity -> bibliometric indicators,
//   compare -> rank-shift statistics, fund -> selective funding simulation.

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bibliorank/corpus.hpp"
#include "bibliorank/csv.hpp"
#include "bibliorank/errors.hpp"
#include "bibliorank/funding.hpp"
#include "bibliorank/impact.hpp"
#include "bibliorank/indicators.hpp"
#include "bibliorank/manifest.hpp"
#include "bibliorank/peer_eval.hpp"
#include "bibliorank/ranklab.hpp"
#include "bibliorank/synthgen.hpp"
#include "bibliorank/version.hpp"

namespace fs = std::filesystem;
using namespace bibliorank;

namespace {

std::string now_iso8601() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Collects output files, writes them atomically, then drops the manifest
// sidecar listing every file written.
class Run {
 public:
  Run(std::string command, std::vector<std::string> arguments, fs::path out_dir)
      : command_(std::move(command)),
        arguments_(std::move(arguments)),
        out_dir_(std::move(out_dir)) {
    fs::create_directories(out_dir_);
  }

  void set_corpus_digest(std::string digest) { corpus_digest_ = std::move(digest); }

  void add_input(const fs::path& path) {
    inputs_.push_back({path.generic_string(), digest_file(path)});
  }

  void emit(const std::string& name, const std::string& content) {
    fs::path path = out_dir_ / name;
    csv::write_file_atomic(path, content);
    outputs_.push_back({name, digest_bytes(content)});
  }

  void finish() {
    RunManifest m;
    m.command = command_;
    m.arguments = arguments_;
    m.corpus_digest = corpus_digest_;
    m.inputs = inputs_;
    m.outputs = outputs_;
    m.tool_version = kVersion;
    m.timestamp = now_iso8601();
    write_manifest(m, out_dir_);
  }

 private:
  std::string command_;
  std::vector<std::string> arguments_;
  fs::path out_dir_;
  std::string corpus_digest_;
  std::vector<FileDigest> inputs_;
  std::vector<FileDigest> outputs_;
};

void print_findings(const Corpus& corpus) {
  for (const Finding& f : validate(corpus)) {
    const char* level = f.level == Finding::Level::error ? "error" : "warning";
    std::cerr << "[" << level << "] " << f.message << "\n";
  }
}

// uda -> institution -> score, read from any CSV carrying institution_id,
// uda_id and a score column (R, I, rp or score unless named explicitly).
std::map<std::string, std::map<std::string, double>> read_score_table(
    const fs::path& path, const std::string& score_column) {
  csv::Table table = csv::read_csv(path);
  int inst_col = table.column("institution_id");
  int uda_col = table.column("uda_id");
  if (inst_col < 0 || uda_col < 0)
    throw ValidationError(path.string() + ": needs institution_id and uda_id columns");
  int score_col = -1;
  if (!score_column.empty()) {
    score_col = table.column(score_column);
    if (score_col < 0)
      throw ValidationError(path.string() + ": no column named '" + score_column + "'");
  } else {
    for (const char* candidate : {"R", "I", "rp", "score"}) {
      score_col = table.column(candidate);
      if (score_col >= 0) break;
    }
    if (score_col < 0)
      throw ValidationError(path.string() +
                            ": no score column (tried R, I, rp, score); use --left-score/--right-score");
  }
  std::map<std::string, std::map<std::string, double>> out;
  for (const auto& row : table.rows) {
    try {
      out[row[static_cast<std::size_t>(uda_col)]]
         [row[static_cast<std::size_t>(inst_col)]] =
             std::stod(row[static_cast<std::size_t>(score_col)]);
    } catch (const std::exception&) {
      throw ValidationError(path.string() + ": bad score value '" +
                            row[static_cast<std::size_t>(score_col)] + "'");
    }
  }
  return out;
}

std::vector<std::string> collect_args(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return args;
}

int cmd_synth(const std::vector<std::string>& raw_args, const std::string& config_path,
              bool seed_given, std::uint64_t seed, const fs::path& out) {
  SynthConfig cfg;
  if (!config_path.empty()) cfg = config_from_json_file(config_path);
  if (seed_given) cfg.seed = seed;
  check_config(cfg);

  Run run("synth", raw_args, out);
  if (!config_path.empty()) run.add_input(config_path);
  Corpus corpus = generate_corpus(cfg);
  write_corpus(corpus, out);
  run.emit("synth.config.json", config_to_json(cfg));
  run.set_corpus_digest(digest_directory(out));
  run.finish();
  std::cout << "generated " << corpus.roster.size() << " researchers, "
            << corpus.publications.size() << " publications, "
            << corpus.peer_outcomes.size() << " peer outputs in "
            << out.string() << "\n";
  return 0;
}

int cmd_peer(const std::vector<std::string>& raw_args, const fs::path& corpus_dir,
             const fs::path& out) {
  Corpus corpus = load_corpus(corpus_dir);
  print_findings(corpus);
  if (corpus.peer_outcomes.empty())
    throw ComputationError("corpus has no peer outputs");

  std::vector<PeerTable> tables;
  for (const std::string& uda : peer_udas(corpus))
    tables.push_back(peer_rank_table(corpus, uda));

  Run run("peer", raw_args, out);
  run.set_corpus_digest(digest_directory(corpus_dir));
  run.emit("peer.csv", peer_table_csv(tables));
  run.finish();
  return 0;
}

int cmd_excellence(const std::vector<std::string>& raw_args, const fs::path& corpus_dir,
                   const std::string& scenario_str, const fs::path& out) {
  Scenario scenario = scenario_from_string(scenario_str);
  Corpus corpus = load_corpus(corpus_dir);
  print_findings(corpus);
  ImpactMap impact = article_impact(corpus);

  std::vector<ExcellenceScore> all_scores;
  for (const auto& [uda, staff] : corpus.staff_by_uda) {
    if (staff <= 0.0) continue;
    if (uda_publication_pool(corpus, uda).empty()) {
      std::cerr << "[warning] uda " << uda << " has no attributed publications, skipped\n";
      continue;
    }
    ExcellentSet set = select_excellent(corpus, impact, uda, scenario);
    if (set.pub_ids.empty()) {
      std::cerr << "[warning] uda " << uda << " selects an empty excellent set, skipped\n";
      continue;
    }
    for (ExcellenceScore& s : excellence_scores(corpus, set))
      all_scores.push_back(std::move(s));
  }
  if (all_scores.empty())
    throw ComputationError("no uda produced excellence scores");

  Run run("excellence", raw_args, out);
  run.set_corpus_digest(digest_directory(corpus_dir));
  run.emit("excellence_" + scenario_name(scenario) + ".csv", excellence_csv(all_scores));
  run.emit("aii.csv", impact_csv(impact));
  run.emit("aii_audit.csv", impact_audit_csv(impact));
  run.emit("staff_uda.csv", staff_uda_csv(corpus));
  run.finish();
  return 0;
}

int cmd_productivity(const std::vector<std::string>& raw_args, const fs::path& corpus_dir,
                     const std::string& national_mode, const fs::path& out) {
  NationalMean mode;
  if (national_mode == "weighted") mode = NationalMean::weighted;
  else if (national_mode == "unweighted") mode = NationalMean::unweighted;
  else throw ValidationError("--rp-national must be weighted or unweighted");

  Corpus corpus = load_corpus(corpus_dir);
  print_findings(corpus);
  ImpactMap impact = article_impact(corpus);
  CreditMap credit = allocate_all_credit(corpus);
  auto cells = sds_productivity(corpus, impact, credit);
  auto national = national_sds_productivity(corpus, cells, mode);
  auto uda_cells = uda_productivity(corpus, cells, national);

  std::vector<CreditShare> shares;
  shares.reserve(credit.size());
  for (const auto& [pub_id, share] : credit) {
    (void)pub_id;
    shares.push_back(share);
  }

  Run run("productivity", raw_args, out);
  run.set_corpus_digest(digest_directory(corpus_dir));
  run.emit("productivity_sds.csv", productivity_sds_csv(cells));
  run.emit("productivity_uda.csv", productivity_uda_csv(uda_cells));
  run.emit("credit_audit.csv", credit_audit_csv(shares));
  run.emit("aii.csv", impact_csv(impact));
  run.emit("aii_audit.csv", impact_audit_csv(impact));
  run.emit("staff_uda.csv", staff_uda_csv(corpus));
  run.finish();
  return 0;
}

int cmd_compare(const std::vector<std::string>& raw_args, const fs::path& left_path,
                const fs::path& right_path, const std::string& left_score,
                const std::string& right_score, const fs::path& out) {
  auto left = read_score_table(left_path, left_score);
  auto right = read_score_table(right_path, right_score);

  std::vector<std::string> udas;
  for (const auto& [uda, scores] : left) {
    (void)scores;
    if (right.count(uda)) udas.push_back(uda);
  }
  if (udas.empty())
    throw ComputationError("the two score tables share no uda");

  Run run("compare", raw_args, out);
  run.add_input(left_path);
  run.add_input(right_path);

  std::string md;
  md += "# Rank list comparison\n\n";
  md += "Left: `" + left_path.generic_string() + "`, right: `" +
        right_path.generic_string() + "`.\n\n";
  md += "Competition ranks drive percentiles (100*(N-rank)/(N-1)) and quartiles; "
        "the Spearman statistic uses tie-averaged ranks. Shift statistics are "
        "absolute values over the institutions common to both lists. "
        "Significance: *** p<0.01, ** p<0.05.\n\n";
  md += "| UDA | Univ. | Correlation | p-value | Sig. | %Var pct | Max pct | Mean pct | Median pct | %Var qrt | Max qrt | Mean qrt | Median qrt |\n";
  md += "|---|---|---|---|---|---|---|---|---|---|---|---|---|\n";

  std::string excluded = "uda_id,institution_id,side\n";
  for (const std::string& uda : udas) {
    RankList l = build_ranklist(left.at(uda), uda);
    RankList r = build_ranklist(right.at(uda), uda);
    ShiftReport report = shift_report(l, r);
    md += "| " + uda + " | " + std::to_string(report.n) + " | " +
          csv::format_fixed(report.correlation.rho, 3) + " | " +
          csv::format_fixed(report.correlation.p, 3) + " | " +
          report.correlation.stars + " | " +
          csv::format_fixed(report.percentile.var_pct, 0) + "% | " +
          csv::format_fixed(report.percentile.max, 0) + " | " +
          csv::format_fixed(report.percentile.mean, 0) + " | " +
          csv::format_fixed(report.percentile.median, 0) + " | " +
          csv::format_fixed(report.quartile.var_pct, 0) + "% | " +
          csv::format_fixed(report.quartile.max, 0) + " | " +
          csv::format_fixed(report.quartile.mean, 0) + " | " +
          csv::format_fixed(report.quartile.median, 0) + " |\n";

    std::string leap = "leap,count,risers,fallers\n";
    for (int d = 0; d <= 3; ++d) {
      std::string risers = d == 3 ? std::to_string(report.leaps.risers3) : "";
      std::string fallers = d == 3 ? std::to_string(report.leaps.fallers3) : "";
      leap += csv::join_row({std::to_string(d),
                             std::to_string(report.leaps.counts[static_cast<std::size_t>(d)]),
                             risers, fallers});
    }
    run.emit("leap_" + uda + ".csv", leap);

    for (const std::string& inst : report.left_only)
      excluded += csv::join_row({uda, inst, "left_only"});
    for (const std::string& inst : report.right_only)
      excluded += csv::join_row({uda, inst, "right_only"});
  }
  run.emit("compare.md", md);
  run.emit("compare_excluded.csv", excluded);
  run.finish();
  return 0;
}

int cmd_fund(const std::vector<std::string>& raw_args, const fs::path& rank_path,
             const fs::path& staff_path, double budget,
             const std::vector<double>& weights_in, const std::string& uda_filter,
             const std::string& score_column, const fs::path& rank_right_path,
             const fs::path& out) {
  if (budget <= 0.0) throw ValidationError("--budget must be positive");
  std::array<double, 4> weights = kDefaultFundingWeights;
  if (!weights_in.empty()) {
    if (weights_in.size() != 4)
      throw ValidationError("--weights needs exactly 4 comma-separated values");
    std::copy(weights_in.begin(), weights_in.end(), weights.begin());
  }

  auto pick_uda = [&](const std::map<std::string, std::map<std::string, double>>& table,
                      const fs::path& path) {
    if (!uda_filter.empty()) {
      auto it = table.find(uda_filter);
      if (it == table.end())
        throw ValidationError(path.string() + ": no rows for uda " + uda_filter);
      return *it;
    }
    if (table.size() != 1)
      throw ValidationError(path.string() +
                            ": contains several udas; select one with --uda");
    return *table.begin();
  };

  auto [uda, scores] = pick_uda(read_score_table(rank_path, score_column), rank_path);

  csv::Table staff_table =
      csv::read_csv(staff_path, {"institution_id", "uda_id", "staff"});
  std::map<std::string, double> staff;
  for (const auto& row : staff_table.rows) {
    if (row[1] != uda) continue;
    try {
      staff[row[0]] = std::stod(row[2]);
    } catch (const std::exception&) {
      throw ValidationError(staff_path.string() + ": bad staff value '" + row[2] + "'");
    }
  }

  Run run("fund", raw_args, out);
  run.add_input(rank_path);
  run.add_input(staff_path);

  FundingOutcome outcome = allocate(build_ranklist(scores, uda), staff, budget, weights);
  run.emit("funding.csv", funding_csv(outcome));

  if (!rank_right_path.empty()) {
    run.add_input(rank_right_path);
    auto [uda_r, scores_r] =
        pick_uda(read_score_table(rank_right_path, score_column), rank_right_path);
    if (uda_r != uda)
      throw ValidationError("--rank-right covers uda " + uda_r + ", expected " + uda);
    FundingOutcome right = allocate(build_ranklist(scores_r, uda), staff, budget, weights);
    run.emit("funding_right.csv", funding_csv(right));
    run.emit("funding_delta.csv", funding_delta_csv(funding_delta(outcome, right)));
  }
  run.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bibliorank: peer-review and bibliometric assessment toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  std::vector<std::string> raw_args = collect_args(argc, argv);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a seeded synthetic corpus");
  std::string synth_config;
  std::uint64_t synth_seed = 0;
  std::string synth_out;
  synth->add_option("--config", synth_config, "JSON config (defaults otherwise)");
  auto* seed_opt = synth->add_option("--seed", synth_seed, "seed override");
  synth->add_option("--out", synth_out, "output corpus directory")->required();

  // peer
  auto* peer = app.add_subcommand("peer", "peer quality-index rank tables");
  std::string peer_corpus, peer_out;
  peer->add_option("--corpus", peer_corpus, "corpus directory")->required();
  peer->add_option("--out", peer_out, "output directory")->required();

  // excellence
  auto* exc = app.add_subcommand("excellence", "excellence indicator per uda");
  std::string exc_corpus, exc_scenario = "A", exc_out;
  exc->add_option("--corpus", exc_corpus, "corpus directory")->required();
  exc->add_option("--scenario", exc_scenario, "A (top 10% of publications) or B (25% of staff)")
      ->check(CLI::IsMember({"A", "B"}));
  exc->add_option("--out", exc_out, "output directory")->required();

  // productivity
  auto* prod = app.add_subcommand("productivity", "research productivity per sds and uda");
  std::string prod_corpus, prod_out, prod_national = "weighted";
  prod->add_option("--corpus", prod_corpus, "corpus directory")->required();
  prod->add_option("--rp-national", prod_national, "national mean: weighted|unweighted")
      ->check(CLI::IsMember({"weighted", "unweighted"}));
  prod->add_option("--out", prod_out, "output directory")->required();

  // compare
  auto* cmp = app.add_subcommand("compare", "rank-shift statistics between two score tables");
  std::string cmp_left, cmp_right, cmp_left_score, cmp_right_score, cmp_out;
  cmp->add_option("--left", cmp_left, "left score CSV")->required();
  cmp->add_option("--right", cmp_right, "right score CSV")->required();
  cmp->add_option("--left-score", cmp_left_score, "left score column name");
  cmp->add_option("--right-score", cmp_right_score, "right score column name");
  cmp->add_option("--out", cmp_out, "output directory")->required();

  // fund
  auto* fund = app.add_subcommand("fund", "selective funding over a four-class ranking");
  std::string fund_rank, fund_staff, fund_uda, fund_score, fund_rank_right, fund_out;
  double fund_budget = 0.0;
  std::vector<double> fund_weights;
  fund->add_option("--rank", fund_rank, "score CSV defining the ranking")->required();
  fund->add_option("--staff", fund_staff, "institution_id,uda_id,staff CSV")->required();
  fund->add_option("--budget", fund_budget, "total budget")->required();
  fund->add_option("--weights", fund_weights, "4 class weights, default 9,3,1,0")
      ->delimiter(',');
  fund->add_option("--uda", fund_uda, "uda to fund when the table has several");
  fund->add_option("--score", fund_score, "score column name");
  fund->add_option("--rank-right", fund_rank_right, "second ranking for a funding delta");
  fund->add_option("--out", fund_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage problems map to exit 1
  }

  try {
    if (synth->parsed())
      return cmd_synth(raw_args, synth_config, !seed_opt->empty(), synth_seed, synth_out);
    if (peer->parsed()) return cmd_peer(raw_args, peer_corpus, peer_out);
    if (exc->parsed()) return cmd_excellence(raw_args, exc_corpus, exc_scenario, exc_out);
    if (prod->parsed())
      return cmd_productivity(raw_args, prod_corpus, prod_national, prod_out);
    if (cmp->parsed())
      return cmd_compare(raw_args, cmp_left, cmp_right, cmp_left_score,
                         cmp_right_score, cmp_out);
    if (fund->parsed())
      return cmd_fund(raw_args, fund_rank, fund_staff, fund_budget, fund_weights,
                      fund_uda, fund_score, fund_rank_right, fund_out);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ComputationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
