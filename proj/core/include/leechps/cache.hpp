#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "leechps/fourier.hpp"
#include "leechps/lattice.hpp"

namespace leechps::cache {

// One JSON-lines file: a header line, then one record per line. The header
// carries the lattice hash and the SHA-256 of the record lines, both re-checked
// before anything in the file is used.
struct FileReport {
  std::string file;
  std::string kind;  // "shell" or "coeff"
  std::string lattice_hash;
  nlohmann::json params;
  std::uint64_t records = 0;
  bool ok = true;
  std::string problem;
};

nlohmann::json to_json(const FileReport& r);

class Store : public analytic::CoefficientStore {
 public:
  explicit Store(std::filesystem::path dir);
  ~Store() override;
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  const std::filesystem::path& dir() const { return dir_; }

  // Vectors of the given norm, or nullopt when absent or failing verification.
  std::optional<std::vector<lattice::Coords>> load_shell(const lattice::GramLattice& k, std::int64_t norm);
  void save_shell(const lattice::GramLattice& k, std::int64_t norm, const std::vector<lattice::Coords>& vectors);

  std::optional<analytic::CoeffResult> find(const analytic::CoeffKey& key) override;
  void insert(const analytic::CoeffKey& key, const analytic::CoeffResult& value) override;
  // Writes coefficient files that gained entries since they were loaded.
  void flush();

  std::uint64_t hits() const { return hits_.load(); }
  // Files skipped because verification failed.
  const std::vector<std::string>& rejected() const { return rejected_; }

  std::vector<FileReport> list() const;
  std::vector<FileReport> verify() const;
  std::size_t clear();

 private:
  struct CoeffFile {
    nlohmann::json params;
    std::string lattice_hash;
    std::map<std::pair<std::int64_t, std::int64_t>, analytic::CoeffResult> entries;
    bool dirty = false;
  };
  CoeffFile& coeff_file(const analytic::CoeffKey& key);

  std::filesystem::path dir_;
  std::shared_mutex mutex_;
  std::map<std::string, CoeffFile> coeffs_;  // by file name
  std::atomic<std::uint64_t> hits_{0};
  std::vector<std::string> rejected_;
};

// Default directory: $LEECHPS_CACHE_DIR when set, otherwise empty (caching off).
std::filesystem::path default_dir();

}  // namespace leechps::cache
