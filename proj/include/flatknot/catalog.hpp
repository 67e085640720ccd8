#pragma once

// Exhaustive enumeration of Gauss diagrams and tabulation of flat knot types.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <regex>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "flatknot/compose.hpp"
#include "flatknot/gauss.hpp"
#include "flatknot/invariants.hpp"
#include "flatknot/reduce.hpp"

namespace flatknot {

namespace detail {

struct WordBuilder {
  std::size_t n;
  std::vector<Endpoint> word;
  std::vector<Role> opened;  // role of the first endpoint per label, index label-1
  std::vector<bool> closed;
  std::size_t open_count = 0;

  template <class Fn>
  void run(Fn& fn) {
    if (word.size() == 2 * n) {
      fn(std::as_const(word));
      return;
    }
    const std::size_t remaining = 2 * n - word.size();
    if (opened.size() < n && open_count + 2 <= remaining) {
      const auto label = static_cast<std::uint32_t>(opened.size() + 1);
      for (Role r : {Role::Tail, Role::Head}) {
        // a canonical rotation starts with a tail
        if (word.empty() && r == Role::Head) continue;
        opened.push_back(r);
        closed.push_back(false);
        ++open_count;
        word.push_back({label, r});
        run(fn);
        word.pop_back();
        --open_count;
        closed.pop_back();
        opened.pop_back();
      }
    }
    for (std::size_t k = 0; k < opened.size(); ++k) {
      if (closed[k]) continue;
      closed[k] = true;
      --open_count;
      word.push_back({static_cast<std::uint32_t>(k + 1), opposite(opened[k])});
      run(fn);
      word.pop_back();
      ++open_count;
      closed[k] = false;
    }
  }
};

}  // namespace detail

// Calls fn once per diagram with exactly n arrows, up to rotation and relabeling
// (the representative is the canonical word).
inline void for_each_diagram(std::size_t n, const std::function<void(const GaussDiagram&)>& fn) {
  if (n == 0) {
    fn(GaussDiagram());
    return;
  }
  detail::WordBuilder builder{n, {}, {}, {}};
  auto visit = [&](const std::vector<Endpoint>& word) {
    GaussDiagram d(word);
    if (is_canonical(d)) fn(d);
  };
  builder.run(visit);
}

inline std::vector<GaussDiagram> enumerate_diagrams(std::size_t n) {
  std::vector<GaussDiagram> out;
  for_each_diagram(n, [&](const GaussDiagram& d) { out.push_back(d); });
  return out;
}

struct CatalogRecord {
  std::size_t class_id = 0;
  CanonicalCode code;  // least code in the class's FR3 orbit
  std::size_t cr = 0;
  std::string u;
  Verdict verdict = Verdict::Trivial;
  std::size_t orbit_size = 0;

  friend bool operator==(const CatalogRecord&, const CatalogRecord&) = default;
};

// One record per FR3 orbit of minimal n-arrow diagrams, ordered by code.
inline std::vector<CatalogRecord> classify(std::size_t n, const OrbitLimits& limits = {}) {
  std::vector<CatalogRecord> out;
  std::unordered_set<std::string> assigned;
  for_each_diagram(n, [&](const GaussDiagram& d) {
    if (assigned.count(canonical_form(d).text)) return;
    if (has_decreasing_site(d)) return;
    const auto orbit = fr3_orbit(d, limits);
    bool minimal = true;
    for (const auto& node : orbit.nodes()) {
      assigned.insert(node.code.text);
      if (has_decreasing_site(node.diagram)) minimal = false;
    }
    if (!minimal) return;
    CatalogRecord rec;
    rec.code = orbit.codes().front();
    rec.cr = n;
    rec.u = u_polynomial(d).to_string();
    rec.verdict = is_composite(parse(rec.code.text), limits).verdict;
    rec.orbit_size = orbit.size();
    out.push_back(std::move(rec));
  });
  std::sort(out.begin(), out.end(), [](const CatalogRecord& a, const CatalogRecord& b) { return a.code < b.code; });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].class_id = i + 1;
  return out;
}

struct CatalogFile {
  std::size_t n = 0;
  std::vector<CatalogRecord> records;
};

inline std::string catalog_header(std::size_t n) {
  return "flatcat v1 n=" + std::to_string(n) + " quotient=oriented";
}

inline std::string format_record(const CatalogRecord& r) {
  return "class=" + std::to_string(r.class_id) + " code=" + r.code.text + " cr=" + std::to_string(r.cr) +
         " u=" + r.u + " verdict=" + std::string(1, verdict_letter(r.verdict)) +
         " orbit=" + std::to_string(r.orbit_size);
}

inline std::string format_catalog(std::size_t n, const std::vector<CatalogRecord>& records) {
  std::string out = catalog_header(n) + "\n";
  for (const auto& r : records) out += format_record(r) + "\n";
  return out;
}

// Writes to "<path>.tmp" and renames over `path`.
inline void write_catalog(const std::filesystem::path& path, std::size_t n, const std::vector<CatalogRecord>& records) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + tmp.string());
    out << format_catalog(n, records);
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot replace " + path.string());
  }
}

inline CatalogFile parse_catalog(std::istream& in) {
  static const std::regex header_re(R"(flatcat v1 n=(\d+) quotient=oriented)");
  static const std::regex record_re(
      R"(class=(\d+) code=(.+) cr=(\d+) u=(\S+) verdict=([TPC]) orbit=(\d+))");
  CatalogFile file;
  std::string line;
  std::smatch m;
  if (!std::getline(in, line) || !std::regex_match(line, m, header_re)) {
    throw Error(ErrorCode::FormatVersionMismatch, "expected header 'flatcat v1 n=<n> quotient=oriented'");
  }
  file.n = std::stoul(m[1].str());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (!std::regex_match(line, m, record_re)) throw Error(ErrorCode::MalformedRecord, "bad record: " + line);
    CatalogRecord r;
    r.class_id = std::stoul(m[1].str());
    r.code = CanonicalCode{m[2].str()};
    r.cr = std::stoul(m[3].str());
    r.u = m[4].str();
    const char v = m[5].str()[0];
    r.verdict = v == 'T' ? Verdict::Trivial : v == 'P' ? Verdict::Prime : Verdict::Composite;
    r.orbit_size = std::stoul(m[6].str());
    file.records.push_back(std::move(r));
  }
  return file;
}

inline CatalogFile read_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return parse_catalog(in);
}

}  // namespace flatknot
