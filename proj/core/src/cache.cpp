#include "leechps/cache.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "leechps/error.hpp"

namespace leechps::cache {

namespace fs = std::filesystem;
using analytic::CoeffKey;
using analytic::CoeffResult;

namespace {

constexpr const char* kFormat = "leechps-cache";
constexpr int kVersion = 1;

struct Parsed {
  nlohmann::json header;
  std::vector<std::string> lines;
};

Parsed read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  Parsed p;
  std::string line;
  if (!std::getline(in, line)) throw Error("empty file");
  p.header = nlohmann::json::parse(line);
  while (std::getline(in, line))
    if (!line.empty()) p.lines.push_back(line);
  return p;
}

std::string payload_hash(const std::vector<std::string>& lines) {
  std::string all;
  for (const auto& l : lines) {
    all += l;
    all += '\n';
  }
  return lattice::sha256_hex(all);
}

// Empty string when the file is consistent.
std::string check(const Parsed& p) {
  const auto& h = p.header;
  if (h.value("format", "") != kFormat) return "unknown format";
  if (h.value("version", 0) != kVersion) return "unsupported version";
  if (h.value("records", std::uint64_t{0}) != p.lines.size()) return "record count mismatch";
  if (h.value("payloadSha256", "") != payload_hash(p.lines)) return "payload hash mismatch";
  return "";
}

void write_atomic(const fs::path& path, const nlohmann::json& header, const std::vector<std::string>& lines) {
  fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << header.dump() << '\n';
    for (const auto& l : lines) out << l << '\n';
    if (!out) throw Error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

nlohmann::json make_header(const std::string& kind, const std::string& lattice_hash, nlohmann::json params,
                           const std::vector<std::string>& lines) {
  return {{"format", kFormat},         {"version", kVersion},
          {"kind", kind},              {"latticeHash", lattice_hash},
          {"params", std::move(params)}, {"records", lines.size()},
          {"payloadSha256", payload_hash(lines)}};
}

std::string shell_name(const lattice::GramLattice& k, std::int64_t norm) {
  return "shell-" + k.hash().substr(0, 16) + "-n" + std::to_string(norm) + ".jsonl";
}

std::string g17(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

nlohmann::json coeff_params(const CoeffKey& key) {
  return {{"k", key.k}, {"h", key.h}, {"s", {key.s.real(), key.s.imag()}}, {"nMax", key.n_max}};
}

std::string coeff_name(const CoeffKey& key) {
  const std::string id = key.lattice_hash + "|" + g17(key.k) + "|" + g17(key.h) + "|" + g17(key.s.real()) + "|" +
                         g17(key.s.imag()) + "|" + std::to_string(key.n_max);
  return "coeff-" + key.lattice_hash.substr(0, 16) + "-" + lattice::sha256_hex(id).substr(0, 16) + ".jsonl";
}

nlohmann::json complex_pair(Complex z) { return {z.real(), z.imag()}; }
Complex complex_from(const nlohmann::json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

TailKind tail_kind_from(const std::string& s) {
  if (s == "rigorous") return TailKind::kRigorous;
  if (s == "heuristic") return TailKind::kHeuristic;
  if (s == "none") return TailKind::kNone;
  throw Error("unknown tail kind " + s);
}

std::string coeff_record(std::int64_t half_norm, std::int64_t content, const CoeffResult& c) {
  nlohmann::json j = {{"halfNorm", half_norm},
                      {"content", content},
                      {"aStar", complex_pair(c.a_star)},
                      {"a", complex_pair(c.a)},
                      {"aFirst", complex_pair(c.a_first)},
                      {"tailBound", std::isfinite(c.tail_bound) ? nlohmann::json(c.tail_bound) : nlohmann::json(nullptr)},
                      {"tailKind", tail_kind_name(c.tail_kind)},
                      {"termsUsed", c.terms_used},
                      {"flags", c.flags}};
  return j.dump();
}

}  // namespace

nlohmann::json to_json(const FileReport& r) {
  nlohmann::json j = {{"file", r.file},       {"kind", r.kind},       {"latticeHash", r.lattice_hash},
                      {"params", r.params},   {"records", r.records}, {"ok", r.ok}};
  if (!r.ok) j["problem"] = r.problem;
  return j;
}

fs::path default_dir() {
  const char* env = std::getenv("LEECHPS_CACHE_DIR");
  return env ? fs::path(env) : fs::path();
}

Store::Store(fs::path dir) : dir_(std::move(dir)) {
  if (dir_.empty()) throw UsageError("cache directory must not be empty");
}

Store::~Store() {
  try {
    flush();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "leechps: cache flush failed: %s\n", e.what());
  }
}

std::optional<std::vector<lattice::Coords>> Store::load_shell(const lattice::GramLattice& k, std::int64_t norm) {
  const fs::path path = dir_ / shell_name(k, norm);
  if (!fs::exists(path)) return std::nullopt;
  try {
    const Parsed p = read_file(path);
    std::string problem = check(p);
    if (problem.empty() && p.header.value("latticeHash", "") != k.hash()) problem = "lattice hash mismatch";
    if (problem.empty() && p.header.value("kind", "") != "shell") problem = "not a shell file";
    std::vector<lattice::Coords> out;
    if (problem.empty()) {
      out.reserve(p.lines.size());
      for (const auto& l : p.lines) {
        auto x = nlohmann::json::parse(l).get<lattice::Coords>();
        if (static_cast<int>(x.size()) != k.rank() || lattice::norm(k, x) != norm) {
          problem = "vector with wrong norm";
          break;
        }
        out.push_back(std::move(x));
      }
    }
    if (!problem.empty()) {
      std::unique_lock lock(mutex_);
      rejected_.push_back(path.filename().string() + ": " + problem);
      return std::nullopt;
    }
    ++hits_;
    return out;
  } catch (const std::exception& e) {
    std::unique_lock lock(mutex_);
    rejected_.push_back(path.filename().string() + ": " + e.what());
    return std::nullopt;
  }
}

void Store::save_shell(const lattice::GramLattice& k, std::int64_t norm, const std::vector<lattice::Coords>& vectors) {
  std::vector<std::string> lines;
  lines.reserve(vectors.size());
  for (const auto& v : vectors) lines.push_back(nlohmann::json(v).dump());
  std::unique_lock lock(mutex_);
  write_atomic(dir_ / shell_name(k, norm),
               make_header("shell", k.hash(), {{"lattice", k.name()}, {"norm", norm}}, lines), lines);
}

Store::CoeffFile& Store::coeff_file(const CoeffKey& key) {
  const std::string name = coeff_name(key);
  auto it = coeffs_.find(name);
  if (it != coeffs_.end()) return it->second;
  CoeffFile f;
  f.params = coeff_params(key);
  f.lattice_hash = key.lattice_hash;
  const fs::path path = dir_ / name;
  if (fs::exists(path)) {
    try {
      const Parsed p = read_file(path);
      std::string problem = check(p);
      if (problem.empty() && p.header.value("latticeHash", "") != key.lattice_hash) problem = "lattice hash mismatch";
      if (problem.empty() && p.header.value("params", nlohmann::json()) != f.params) problem = "parameter mismatch";
      if (problem.empty()) {
        for (const auto& l : p.lines) {
          const auto j = nlohmann::json::parse(l);
          CoeffResult c;
          c.a_star = complex_from(j.at("aStar"));
          c.a = complex_from(j.at("a"));
          c.a_first = complex_from(j.at("aFirst"));
          c.tail_bound = j.at("tailBound").is_null() ? std::numeric_limits<double>::infinity()
                                                     : j.at("tailBound").get<double>();
          c.tail_kind = tail_kind_from(j.at("tailKind").get<std::string>());
          c.terms_used = j.at("termsUsed").get<std::int64_t>();
          c.flags = j.at("flags").get<std::vector<std::string>>();
          f.entries[{j.at("halfNorm").get<std::int64_t>(), j.at("content").get<std::int64_t>()}] = std::move(c);
        }
      } else {
        rejected_.push_back(name + ": " + problem);
      }
    } catch (const std::exception& e) {
      f.entries.clear();
      rejected_.push_back(name + ": " + e.what());
    }
  }
  return coeffs_.emplace(name, std::move(f)).first->second;
}

std::optional<CoeffResult> Store::find(const CoeffKey& key) {
  {
    std::shared_lock lock(mutex_);
    auto it = coeffs_.find(coeff_name(key));
    if (it != coeffs_.end()) {
      auto e = it->second.entries.find({key.half_norm, key.content});
      if (e == it->second.entries.end()) return std::nullopt;
      ++hits_;
      return e->second;
    }
  }
  std::unique_lock lock(mutex_);
  auto& f = coeff_file(key);
  auto e = f.entries.find({key.half_norm, key.content});
  if (e == f.entries.end()) return std::nullopt;
  ++hits_;
  return e->second;
}

void Store::insert(const CoeffKey& key, const CoeffResult& value) {
  std::unique_lock lock(mutex_);
  auto& f = coeff_file(key);
  CoeffResult stored = value;
  stored.lambda.clear();
  f.entries[{key.half_norm, key.content}] = std::move(stored);
  f.dirty = true;
}

void Store::flush() {
  std::unique_lock lock(mutex_);
  for (auto& [name, f] : coeffs_) {
    if (!f.dirty) continue;
    std::vector<std::string> lines;
    for (const auto& [key, c] : f.entries) lines.push_back(coeff_record(key.first, key.second, c));
    write_atomic(dir_ / name, make_header("coeff", f.lattice_hash, f.params, lines), lines);
    f.dirty = false;
  }
}

std::vector<FileReport> Store::list() const {
  std::vector<FileReport> out;
  if (!fs::exists(dir_)) return out;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir_))
    if (e.is_regular_file() && e.path().extension() == ".jsonl") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    FileReport r;
    r.file = path.filename().string();
    try {
      std::ifstream in(path);
      std::string line;
      std::getline(in, line);
      const auto h = nlohmann::json::parse(line);
      r.kind = h.value("kind", "");
      r.lattice_hash = h.value("latticeHash", "");
      r.params = h.value("params", nlohmann::json::object());
      r.records = h.value("records", std::uint64_t{0});
    } catch (const std::exception& e) {
      r.ok = false;
      r.problem = std::string("unreadable header: ") + e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<FileReport> Store::verify() const {
  auto reports = list();
  for (auto& r : reports) {
    if (!r.ok) continue;
    try {
      const Parsed p = read_file(dir_ / r.file);
      r.problem = check(p);
      if (r.problem.empty()) {
        for (const auto& l : p.lines)
          if (!nlohmann::json::accept(l)) r.problem = "malformed record";
      }
    } catch (const std::exception& e) {
      r.problem = e.what();
    }
    r.ok = r.problem.empty();
  }
  return reports;
}

std::size_t Store::clear() {
  std::unique_lock lock(mutex_);
  std::size_t removed = 0;
  if (!fs::exists(dir_)) return 0;
  for (const auto& e : fs::directory_iterator(dir_)) {
    const auto name = e.path().filename().string();
    const bool ours = (name.rfind("shell-", 0) == 0 || name.rfind("coeff-", 0) == 0) &&
                      (e.path().extension() == ".jsonl" || e.path().extension() == ".tmp");
    if (e.is_regular_file() && ours) removed += fs::remove(e.path()) ? 1 : 0;
  }
  coeffs_.clear();
  return removed;
}

}  // namespace leechps::cache
