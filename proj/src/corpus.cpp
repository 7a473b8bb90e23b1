#include "bibliorank/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bibliorank/csv.hpp"
#include "bibliorank/errors.hpp"

namespace bibliorank {

namespace fs = std::filesystem;
using nlohmann::json;

const std::string& Taxonomy::uda_of(const std::string& sds) const {
  auto it = sds_to_uda.find(sds);
  if (it == sds_to_uda.end())
    throw ValidationError("unknown sds_id: " + sds);
  return it->second;
}

std::size_t Taxonomy::sds_count(const std::string& uda) const {
  auto it = uda_sds.find(uda);
  return it == uda_sds.end() ? 0 : it->second.size();
}

Rating rating_from_string(const std::string& s) {
  if (s == "E") return Rating::E;
  if (s == "G") return Rating::G;
  if (s == "A") return Rating::A;
  if (s == "L") return Rating::L;
  throw ValidationError("rating must be one of E,G,A,L, got '" + s + "'");
}

char rating_letter(Rating r) {
  switch (r) {
    case Rating::E: return 'E';
    case Rating::G: return 'G';
    case Rating::A: return 'A';
    case Rating::L: return 'L';
  }
  return '?';
}

SizeClass size_class_from_string(const std::string& s) {
  if (s == "very_large") return SizeClass::very_large;
  if (s == "large") return SizeClass::large;
  if (s == "medium") return SizeClass::medium;
  if (s == "small") return SizeClass::small;
  throw ValidationError("size class must be very_large/large/medium/small, got '" + s + "'");
}

std::string size_class_name(SizeClass c) {
  switch (c) {
    case SizeClass::very_large: return "very_large";
    case SizeClass::large: return "large";
    case SizeClass::medium: return "medium";
    case SizeClass::small: return "small";
  }
  return "?";
}

void Corpus::finalize() {
  std::sort(roster.begin(), roster.end(),
            [](const RosterRow& a, const RosterRow& b) {
              return a.researcher_id < b.researcher_id;
            });
  std::sort(publications.begin(), publications.end(),
            [](const Publication& a, const Publication& b) {
              return a.pub_id < b.pub_id;
            });

  researcher_index.clear();
  staff_by_inst_sds.clear();
  staff_by_inst_uda.clear();
  staff_by_sds.clear();
  staff_by_uda.clear();
  staff_by_institution.clear();
  institutions.clear();

  for (std::size_t i = 0; i < roster.size(); ++i) {
    const RosterRow& row = roster[i];
    if (!researcher_index.emplace(row.researcher_id, i).second)
      throw ValidationError("duplicate researcher_id: " + row.researcher_id);
    if (!taxonomy.has_sds(row.sds_id))
      throw ValidationError("researcher " + row.researcher_id +
                            " references unknown sds_id: " + row.sds_id);
    const std::string& uda = taxonomy.uda_of(row.sds_id);
    staff_by_inst_sds[{row.institution_id, row.sds_id}] += row.fte;
    staff_by_inst_uda[{row.institution_id, uda}] += row.fte;
    staff_by_sds[row.sds_id] += row.fte;
    staff_by_uda[uda] += row.fte;
    staff_by_institution[row.institution_id] += row.fte;
    institutions.insert(row.institution_id);
  }

  for (const Publication& pub : publications) {
    if (pub.authors.empty())
      throw ValidationError("publication " + pub.pub_id + " has empty author list");
    if (pub.categories.empty())
      throw ValidationError("publication " + pub.pub_id + " has no categories");
    if (pub.citations < 0)
      throw ValidationError("publication " + pub.pub_id + " has negative citations");
    for (std::size_t i = 0; i < pub.authors.size(); ++i) {
      const AuthorSlot& slot = pub.authors[i];
      if (slot.position != static_cast<int>(i) + 1)
        throw ValidationError("publication " + pub.pub_id +
                              ": author positions must be exactly 1.." +
                              std::to_string(pub.authors.size()));
      if (slot.researcher_id && !researcher_index.count(*slot.researcher_id))
        throw ValidationError("publication " + pub.pub_id +
                              " references unknown researcher_id: " +
                              *slot.researcher_id);
    }
  }

  for (const PeerOutcome& po : peer_outcomes) {
    if (!taxonomy.has_uda(po.uda_id))
      throw ValidationError("peer outcome references unknown uda_id: " + po.uda_id);
  }
  for (const auto& [key, cls] : size_classes) {
    (void)cls;
    if (!taxonomy.has_uda(key.second))
      throw ValidationError("size class references unknown uda_id: " + key.second);
  }
}

const RosterRow* Corpus::find_researcher(const std::string& id) const {
  auto it = researcher_index.find(id);
  return it == researcher_index.end() ? nullptr : &roster[it->second];
}

const Publication* Corpus::find_publication(const std::string& pub_id) const {
  auto it = std::lower_bound(publications.begin(), publications.end(), pub_id,
                             [](const Publication& p, const std::string& id) {
                               return p.pub_id < id;
                             });
  if (it == publications.end() || it->pub_id != pub_id) return nullptr;
  return &*it;
}

std::vector<InstSds> Corpus::attributed_pairs(const Publication& pub) const {
  std::vector<InstSds> pairs;
  for (const AuthorSlot& slot : pub.authors) {
    if (!slot.researcher_id) continue;
    const RosterRow* row = find_researcher(*slot.researcher_id);
    if (!row)
      throw ValidationError("publication " + pub.pub_id +
                            " references unknown researcher_id: " +
                            *slot.researcher_id);
    pairs.emplace_back(row->institution_id, row->sds_id);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

std::vector<std::string> Corpus::attributed_udas(const Publication& pub) const {
  std::vector<std::string> udas;
  for (const InstSds& pair : attributed_pairs(pub))
    udas.push_back(taxonomy.uda_of(pair.second));
  std::sort(udas.begin(), udas.end());
  udas.erase(std::unique(udas.begin(), udas.end()), udas.end());
  return udas;
}

std::vector<std::string> Corpus::attributed_institutions(const Publication& pub) const {
  std::vector<std::string> insts;
  for (const InstSds& pair : attributed_pairs(pub)) insts.push_back(pair.first);
  std::sort(insts.begin(), insts.end());
  insts.erase(std::unique(insts.begin(), insts.end()), insts.end());
  return insts;
}

bool Corpus::is_life_science(const Publication& pub) const {
  for (const std::string& cat : pub.categories)
    if (taxonomy.life_science_categories.count(cat)) return true;
  return false;
}

double staff(const Corpus& corpus, const StaffScope& scope) {
  if (scope.institution && !corpus.institutions.count(*scope.institution))
    throw ValidationError("unknown institution_id: " + *scope.institution);
  if (scope.sds && !corpus.taxonomy.has_sds(*scope.sds))
    throw ValidationError("unknown sds_id: " + *scope.sds);
  if (scope.uda && !corpus.taxonomy.has_uda(*scope.uda))
    throw ValidationError("unknown uda_id: " + *scope.uda);
  double total = 0.0;
  for (const RosterRow& row : corpus.roster) {
    if (scope.institution && row.institution_id != *scope.institution) continue;
    if (scope.sds && row.sds_id != *scope.sds) continue;
    if (scope.uda && corpus.taxonomy.uda_of(row.sds_id) != *scope.uda) continue;
    total += row.fte;
  }
  return total;
}

namespace {

double parse_fte(const std::string& text, const fs::path& path, std::size_t lineno) {
  if (text.empty()) return 1.0;
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw ValidationError(path.string() + ":" + std::to_string(lineno) +
                          ": bad fte value '" + text + "'");
  if (v < 0.0 || v > 1.0)
    throw ValidationError(path.string() + ":" + std::to_string(lineno) +
                          ": fte must be in [0,1], got " + text);
  return v;
}

Taxonomy load_taxonomy(const fs::path& dir) {
  Taxonomy tax;
  csv::Table table = csv::read_csv(dir / "taxonomy.csv", {"sds_id", "uda_id"});
  std::size_t lineno = 1;
  for (const auto& row : table.rows) {
    ++lineno;
    const std::string& sds = row[0];
    const std::string& uda = row[1];
    if (sds.empty() || uda.empty())
      throw ValidationError((dir / "taxonomy.csv").string() + ":" +
                            std::to_string(lineno) + ": empty identifier");
    if (!tax.sds_to_uda.emplace(sds, uda).second)
      throw ValidationError((dir / "taxonomy.csv").string() + ":" +
                            std::to_string(lineno) + ": duplicate sds_id " + sds);
    tax.uda_sds[uda].push_back(sds);
  }
  for (auto& [uda, list] : tax.uda_sds) {
    (void)uda;
    std::sort(list.begin(), list.end());
  }

  fs::path ls = dir / "life_science.txt";
  std::ifstream in(ls);
  if (!in) throw ValidationError("missing file: " + ls.string());
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) tax.life_science_categories.insert(line);
  }
  return tax;
}

std::vector<Publication> load_publications(const fs::path& dir) {
  fs::path path = dir / "publications.jsonl";
  std::ifstream in(path);
  if (!in) throw ValidationError("missing file: " + path.string());
  std::vector<Publication> pubs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ValidationError(path.string() + ":" + std::to_string(lineno) +
                            ": bad JSON: " + e.what());
    }
    try {
      Publication pub;
      pub.pub_id = j.at("pub_id").get<std::string>();
      pub.year = j.at("year").get<int>();
      pub.citations = j.at("citations").get<long long>();
      for (const auto& c : j.at("categories"))
        pub.categories.push_back(c.get<std::string>());
      for (const auto& a : j.at("authors")) {
        AuthorSlot slot;
        slot.position = a.at("position").get<int>();
        const auto& rid = a.at("researcher_id");
        if (!rid.is_null()) slot.researcher_id = rid.get<std::string>();
        pub.authors.push_back(std::move(slot));
      }
      pubs.push_back(std::move(pub));
    } catch (const json::exception& e) {
      throw ValidationError(path.string() + ":" + std::to_string(lineno) +
                            ": bad publication record: " + e.what());
    }
  }
  return pubs;
}

}  // namespace

Corpus load_corpus(const fs::path& dir) {
  if (!fs::is_directory(dir))
    throw ValidationError("corpus directory not found: " + dir.string());

  Corpus corpus;
  corpus.taxonomy = load_taxonomy(dir);

  {
    fs::path path = dir / "researchers.csv";
    csv::Table table =
        csv::read_csv(path, {"researcher_id", "institution_id", "sds_id", "fte"});
    std::size_t lineno = 1;
    for (const auto& row : table.rows) {
      ++lineno;
      RosterRow r;
      r.researcher_id = row[0];
      r.institution_id = row[1];
      r.sds_id = row[2];
      if (r.researcher_id.empty() || r.institution_id.empty() || r.sds_id.empty())
        throw ValidationError(path.string() + ":" + std::to_string(lineno) +
                              ": empty identifier");
      r.fte = parse_fte(row[3], path, lineno);
      corpus.roster.push_back(std::move(r));
    }
  }

  corpus.publications = load_publications(dir);

  if (fs::exists(dir / "peer_outputs.csv")) {
    csv::Table table = csv::read_csv(dir / "peer_outputs.csv",
                                     {"institution_id", "uda_id", "rating"});
    for (const auto& row : table.rows)
      corpus.peer_outcomes.push_back(
          {row[0], row[1], rating_from_string(row[2])});
  }

  if (fs::exists(dir / "size_classes.csv")) {
    fs::path path = dir / "size_classes.csv";
    csv::Table table = csv::read_csv(path, {"institution_id", "uda_id", "class"});
    std::size_t lineno = 1;
    for (const auto& row : table.rows) {
      ++lineno;
      InstUda key{row[0], row[1]};
      if (!corpus.size_classes.emplace(key, size_class_from_string(row[2])).second)
        throw ValidationError(path.string() + ":" + std::to_string(lineno) +
                              ": duplicate (institution, uda) size class");
    }
  }

  corpus.finalize();
  return corpus;
}

void write_corpus(const Corpus& corpus, const fs::path& dir) {
  fs::create_directories(dir);

  {
    std::string out = "sds_id,uda_id\n";
    // sds_to_uda is an ordered map: stable byte output.
    for (const auto& [sds, uda] : corpus.taxonomy.sds_to_uda)
      out += csv::join_row({sds, uda});
    csv::write_file_atomic(dir / "taxonomy.csv", out);
  }
  {
    std::string out;
    for (const auto& cat : corpus.taxonomy.life_science_categories)
      out += cat + "\n";
    csv::write_file_atomic(dir / "life_science.txt", out);
  }
  {
    std::string out = "researcher_id,institution_id,sds_id,fte\n";
    for (const RosterRow& r : corpus.roster) {
      std::string fte = r.fte == 1.0 ? "" : csv::format_double(r.fte);
      out += csv::join_row({r.researcher_id, r.institution_id, r.sds_id, fte});
    }
    csv::write_file_atomic(dir / "researchers.csv", out);
  }
  {
    std::string out;
    for (const Publication& pub : corpus.publications) {
      json j;
      j["pub_id"] = pub.pub_id;
      j["year"] = pub.year;
      j["categories"] = pub.categories;
      j["citations"] = pub.citations;
      json authors = json::array();
      for (const AuthorSlot& slot : pub.authors) {
        json a;
        a["position"] = slot.position;
        if (slot.researcher_id)
          a["researcher_id"] = *slot.researcher_id;
        else
          a["researcher_id"] = nullptr;
        authors.push_back(std::move(a));
      }
      j["authors"] = std::move(authors);
      out += j.dump();
      out += '\n';
    }
    csv::write_file_atomic(dir / "publications.jsonl", out);
  }
  if (!corpus.peer_outcomes.empty()) {
    std::string out = "institution_id,uda_id,rating\n";
    for (const PeerOutcome& po : corpus.peer_outcomes)
      out += csv::join_row(
          {po.institution_id, po.uda_id, std::string(1, rating_letter(po.rating))});
    csv::write_file_atomic(dir / "peer_outputs.csv", out);
  }
  if (!corpus.size_classes.empty()) {
    std::string out = "institution_id,uda_id,class\n";
    for (const auto& [key, cls] : corpus.size_classes)
      out += csv::join_row({key.first, key.second, size_class_name(cls)});
    csv::write_file_atomic(dir / "size_classes.csv", out);
  }
}

std::vector<Finding> validate(const Corpus& corpus) {
  std::vector<Finding> findings;
  for (const RosterRow& row : corpus.roster) {
    if (row.fte == 0.0)
      findings.push_back({Finding::Level::warning,
                          "researcher " + row.researcher_id + " has fte = 0"});
  }
  for (const Publication& pub : corpus.publications) {
    bool any_linked = false;
    for (const AuthorSlot& slot : pub.authors)
      if (slot.researcher_id) any_linked = true;
    if (!any_linked)
      findings.push_back(
          {Finding::Level::warning,
           "publication " + pub.pub_id +
               " has no institutional attribution (all authors external); "
               "it still feeds year-category citation pools"});
  }
  for (const PeerOutcome& po : corpus.peer_outcomes) {
    if (!corpus.institutions.count(po.institution_id))
      findings.push_back({Finding::Level::warning,
                          "peer outcome for institution " + po.institution_id +
                              " which has no roster rows"});
  }
  return findings;
}

}  // namespace bibliorank
