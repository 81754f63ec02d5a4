#include "dlchow/structure_cache.hpp"

#include <algorithm>
#include <mutex>
#include <string>
#include <system_error>

#include <json.hpp>

namespace dlchow {

namespace {

using nlohmann::json;

constexpr const char* kFormat = "dlchow-cache";
constexpr int kVersion = 1;

} // namespace

StructureCache::StructureCache(int n) : n_(n) {
  if (n < 1 || n > kMaxRank) throw std::invalid_argument("rank out of range for StructureCache");
}

StructureCache::StructureCache(int n, std::filesystem::path file) : StructureCache(n) {
  file_ = std::move(file);
  load();
}

StructureCache::~StructureCache() {
  try {
    compact();
  } catch (...) {
    // a failed rewrite leaves the previous file in place
  }
}

std::filesystem::path StructureCache::file_for(const std::filesystem::path& dir, int n) {
  return dir / ("schubert-n" + std::to_string(n) + ".jsonl");
}

StructureCache::Key StructureCache::key_for(const Permutation& u, const Permutation& v) const {
  if (u.rank() != n_ || v.rank() != n_) throw std::invalid_argument("rank mismatch in StructureCache");
  auto a = static_cast<std::uint32_t>(w_order_index(u));
  auto b = static_cast<std::uint32_t>(w_order_index(v));
  return a <= b ? Key{a, b} : Key{b, a};
}

std::optional<SchubertVector> StructureCache::lookup(const Permutation& u, const Permutation& v) const {
  Key k = key_for(u, v);
  std::shared_lock lock(mu_);
  auto it = table_.find(k);
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

void StructureCache::insert(const Permutation& u, const Permutation& v, const SchubertVector& expansion) {
  if (expansion.rank() != n_ || expansion.labels() != SchubertLabel::Polynomial)
    throw std::invalid_argument("cache entries must be rank-matched polynomial-labelled vectors");
  Key k = key_for(u, v);
  std::unique_lock lock(mu_);
  auto [it, inserted] = table_.try_emplace(k, expansion);
  if (!inserted || !append_.is_open()) return;
  write_record(append_, k, expansion);
  append_.flush();
}

std::size_t StructureCache::size() const {
  std::shared_lock lock(mu_);
  return table_.size();
}

void StructureCache::write_header(std::ostream& os) const {
  os << json{{"format", kFormat}, {"version", kVersion}, {"n", n_}}.dump() << '\n';
}

void StructureCache::write_record(std::ostream& os, const Key& key, const SchubertVector& expansion) const {
  const auto& elems = all_elements(n_);
  json terms = json::array();
  for (const auto& [w, c] : expansion.entries()) {
    if (!c.is_constant()) throw std::invalid_argument("structure constants must be numbers");
    terms.push_back(json::array({to_string(w), c.constant_term().to_string()}));
  }
  os << json{{"u", to_string(elems[key.u])}, {"v", to_string(elems[key.v])}, {"expansion", terms}}.dump() << '\n';
}

void StructureCache::load() {
  std::error_code ec;
  std::filesystem::create_directories(file_->parent_path(), ec);
  bool rewrite = false;
  {
    std::ifstream in(*file_);
    std::string line;
    if (in && std::getline(in, line)) {
      bool header_ok = false;
      try {
        json h = json::parse(line);
        header_ok = h.at("format") == kFormat && h.at("version") == kVersion && h.at("n") == n_;
      } catch (const json::exception&) {
      }
      if (!header_ok) {
        report_.corruption_detected = true;
        report_.header_rebuilt = true;
        rewrite = true;
        while (std::getline(in, line)) ++report_.discarded_lines;
        ++report_.discarded_lines;
      }
      while (!rewrite && std::getline(in, line)) {
        if (line.empty()) continue;
        try {
          json r = json::parse(line);
          Permutation u = parse_permutation(r.at("u").get<std::string>(), n_);
          Permutation v = parse_permutation(r.at("v").get<std::string>(), n_);
          SchubertVector e(n_, SchubertLabel::Polynomial);
          for (const auto& t : r.at("expansion")) {
            if (!t.is_array() || t.size() != 2) throw std::invalid_argument("bad expansion term");
            Rational c = Rational::parse(t[1].get<std::string>());
            if (!c.is_integer() || c.sign() <= 0) throw std::invalid_argument("bad structure constant");
            e.add(parse_permutation(t[0].get<std::string>(), n_), QPoly(c));
          }
          table_.insert_or_assign(key_for(u, v), std::move(e));
          ++report_.records;
        } catch (const std::exception&) {
          // the rest of the file is not trusted
          report_.corruption_detected = true;
          rewrite = true;
          ++report_.discarded_lines;
          while (std::getline(in, line)) ++report_.discarded_lines;
        }
      }
    } else {
      rewrite = true;
    }
  }
  if (rewrite) {
    append_.close();
    compact();
  }
  append_.open(*file_, std::ios::app);
}

void StructureCache::compact() {
  if (!file_) return;
  std::unique_lock lock(mu_);
  std::vector<std::pair<Key, const SchubertVector*>> records;
  records.reserve(table_.size());
  for (const auto& [k, e] : table_) records.emplace_back(k, &e);
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return a.first.u != b.first.u ? a.first.u < b.first.u : a.first.v < b.first.v;
  });
  std::filesystem::path tmp = *file_;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    write_header(out);
    for (const auto& [k, e] : records) write_record(out, k, *e);
    if (!out) throw std::runtime_error("failed writing cache file " + tmp.string());
  }
  bool reopen = append_.is_open();
  append_.close();
  std::filesystem::rename(tmp, *file_);
  if (reopen) append_.open(*file_, std::ios::app);
}

CacheRegistry& CacheRegistry::instance() {
  static CacheRegistry registry;
  return registry;
}

void CacheRegistry::set_directory(std::filesystem::path dir) {
  std::lock_guard lock(mu_);
  dir_ = std::move(dir);
}

void CacheRegistry::clear_directory() {
  std::lock_guard lock(mu_);
  dir_.reset();
}

std::optional<std::filesystem::path> CacheRegistry::directory() const {
  std::lock_guard lock(mu_);
  return dir_;
}

StructureCache& CacheRegistry::cache(int n) {
  std::lock_guard lock(mu_);
  auto& slot = caches_[n];
  if (!slot) {
    slot = dir_ ? std::make_unique<StructureCache>(n, StructureCache::file_for(*dir_, n))
                : std::make_unique<StructureCache>(n);
  }
  return *slot;
}

std::vector<std::pair<int, CacheLoadReport>> CacheRegistry::reports() const {
  std::lock_guard lock(mu_);
  std::vector<std::pair<int, CacheLoadReport>> out;
  for (const auto& [n, c] : caches_)
    if (c->file()) out.emplace_back(n, c->load_report());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

void CacheRegistry::reset() {
  std::lock_guard lock(mu_);
  caches_.clear();
}

} // namespace dlchow
