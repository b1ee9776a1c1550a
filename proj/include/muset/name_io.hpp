#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "muset/names.hpp"

namespace muset {

// Name-prefix files: a header line
//   MUNAME <space> <cover> <regime>      or      TILDENAME <space> <cover>
// followed by one encoded ring set per line (term index = line order).
// Round-tripping a file through read/write is byte-exact.

inline void write_mu_prefix(std::ostream& os, const MuName& name, int len) {
  os << "MUNAME " << name.cover->space().descriptor() << " "
     << name.cover->descriptor() << " " << regime_name(name.regime) << "\n";
  for (int n = 1; n <= len; ++n) os << encode(name.term(n)) << "\n";
}

inline void write_tilde_prefix(std::ostream& os, const TildeName& name,
                               int len) {
  os << "TILDENAME " << name.cover->space().descriptor() << " "
     << name.cover->descriptor() << "\n";
  for (int n = 1; n <= len; ++n) os << encode(name.term(n)) << "\n";
}

struct NameFile {
  bool is_tilde = false;
  Space space = Space::lebesgue_line;
  CoverMode cover_mode = CoverMode::fast;
  std::optional<Regime> regime;  // set for MUNAME files
  std::vector<RingSet> terms;
};

inline NameFile read_name_file(std::istream& is) {
  NameFile out;
  std::string header;
  if (!std::getline(is, header)) throw parse_error(0, "empty name file");
  std::istringstream hs(header);
  std::string tag, space_s, cover_s, regime_s;
  hs >> tag >> space_s >> cover_s;
  if (tag == "MUNAME") {
    hs >> regime_s;
    auto reg = regime_from_name(regime_s);
    if (!reg) throw parse_error(0, "bad regime in header: '" + regime_s + "'");
    out.regime = *reg;
  } else if (tag == "TILDENAME") {
    out.is_tilde = true;
  } else {
    throw parse_error(0, "expected MUNAME or TILDENAME header");
  }
  std::string rest;
  if (hs >> rest) throw parse_error(0, "trailing tokens in header");
  auto sp = space_from_name(space_s);
  if (!sp) throw parse_error(0, "unknown space '" + space_s + "'");
  out.space = *sp;
  auto cm = cover_mode_from_name(cover_s);
  if (!cm) throw parse_error(0, "unknown cover '" + cover_s + "'");
  out.cover_mode = *cm;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    RingSet r = decode(line);
    if (r.space() != out.space)
      throw parse_error(lineno, "term space does not match header");
    out.terms.push_back(std::move(r));
  }
  if (out.terms.empty()) throw parse_error(lineno, "name file has no terms");
  return out;
}

namespace detail {

inline std::shared_ptr<MemoStream<RingSet>> fixed_terms(
    std::vector<RingSet> terms) {
  auto stored = std::make_shared<std::vector<RingSet>>(std::move(terms));
  return std::make_shared<MemoStream<RingSet>>([stored](int n) {
    if (n > static_cast<int>(stored->size()))
      throw usage_error("name prefix exhausted at term " + std::to_string(n) +
                        " (file holds " + std::to_string(stored->size()) +
                        " terms)");
    return (*stored)[static_cast<std::size_t>(n - 1)];
  });
}

}  // namespace detail

inline MuName as_mu_name(const NameFile& f) {
  if (f.is_tilde) throw usage_error("file holds a tilde name");
  SpaceInstance space{f.space};
  return MuName{make_cover(space, f.cover_mode), *f.regime,
                detail::fixed_terms(f.terms), nullptr, {}};
}

inline TildeName as_tilde_name(const NameFile& f) {
  if (!f.is_tilde) throw usage_error("file holds a mu name");
  SpaceInstance space{f.space};
  return TildeName{make_cover(space, f.cover_mode),
                   detail::fixed_terms(f.terms), nullptr, {}};
}

}  // namespace muset
