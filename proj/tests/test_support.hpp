#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "bibliorank/corpus.hpp"

namespace testsupport {

namespace fs = std::filesystem;

// Fresh scratch directory, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    dir_ = fs::temp_directory_path() /
           ("bibliorank_" + tag + "_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  const fs::path& path() const { return dir_; }

 private:
  fs::path dir_;
};

inline void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
}

// Single researcher, single publication, one-row taxonomy.
inline void write_singleton_corpus(const fs::path& dir) {
  write_file(dir / "taxonomy.csv", "sds_id,uda_id\nS1,U1\n");
  write_file(dir / "life_science.txt", "");
  write_file(dir / "researchers.csv",
             "researcher_id,institution_id,sds_id,fte\nR1,I1,S1,\n");
  write_file(dir / "publications.jsonl",
             "{\"pub_id\":\"P1\",\"year\":2001,\"categories\":[\"C1\"],"
             "\"citations\":3,\"authors\":[{\"position\":1,\"researcher_id\":\"R1\"}]}\n");
}

// In-memory corpus builder for unit tests that do not need files.
struct CorpusBuilder {
  bibliorank::Corpus corpus;

  CorpusBuilder& sds(const std::string& sds_id, const std::string& uda_id) {
    corpus.taxonomy.sds_to_uda[sds_id] = uda_id;
    auto& list = corpus.taxonomy.uda_sds[uda_id];
    list.push_back(sds_id);
    std::sort(list.begin(), list.end());
    return *this;
  }
  CorpusBuilder& life_science(const std::string& category) {
    corpus.taxonomy.life_science_categories.insert(category);
    return *this;
  }
  CorpusBuilder& researcher(const std::string& id, const std::string& inst,
                            const std::string& sds_id, double fte = 1.0) {
    corpus.roster.push_back({id, inst, sds_id, fte});
    return *this;
  }
  // researcher ids; empty string = external author slot
  CorpusBuilder& publication(const std::string& pub_id, int year,
                             std::vector<std::string> categories,
                             long long citations,
                             const std::vector<std::string>& authors) {
    bibliorank::Publication pub;
    pub.pub_id = pub_id;
    pub.year = year;
    pub.categories = std::move(categories);
    pub.citations = citations;
    int pos = 0;
    for (const std::string& rid : authors) {
      bibliorank::AuthorSlot slot;
      slot.position = ++pos;
      if (!rid.empty()) slot.researcher_id = rid;
      pub.authors.push_back(std::move(slot));
    }
    corpus.publications.push_back(std::move(pub));
    return *this;
  }
  CorpusBuilder& outcome(const std::string& inst, const std::string& uda,
                         bibliorank::Rating rating) {
    corpus.peer_outcomes.push_back({inst, uda, rating});
    return *this;
  }
  bibliorank::Corpus build() {
    corpus.finalize();
    return corpus;
  }
};

}  // namespace testsupport
