#pragma once

// Wire formats. Field elements are always their integer codes.
//
//   cycle (JSON):  {"schema": 1, "n": .., "q": .., "p": .., "k": ..,
//                   "vertices": [{"type": "affine"|"infinity", "coords": [..]}, ..]}
//   cycle (text):  one vertex per line, "A c1 c2 ..." or "I c1 c2 ..."
//   grass cycle:   {"schema": 1, "m": .., "q": .., "vertices": [[..], ..]}

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "ucycle/cycles.hpp"
#include "ucycle/grassmann.hpp"
#include "ucycle/verify.hpp"

namespace ucycle::io {

inline constexpr int kSchemaVersion = 1;

using nlohmann::json;

class ParseError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline json field_json(Field const& f) { return {{"p", f.p()}, {"k", f.k()}, {"modulus", f.modulus()}}; }

inline json vertex_json(ProjVertex const& v) {
  return {{"type", v.is_affine() ? "affine" : "infinity"}, {"coords", v.coords()}};
}

inline json cycle_json(Field const& f, Cycle const& c) {
  json vertices = json::array();
  for (auto const& v : c.vertices) vertices.push_back(vertex_json(v));
  return {{"schema", kSchemaVersion}, {"n", c.dim},      {"q", f.q()},
          {"p", f.p()},               {"k", f.k()},      {"vertices", std::move(vertices)}};
}

/// Cycle JSON with one vertex per line, so outputs diff cleanly.
inline void write_cycle_json(std::ostream& os, Field const& f, Cycle const& c) {
  os << "{\"schema\":" << kSchemaVersion << ",\"n\":" << c.dim << ",\"q\":" << f.q() << ",\"p\":" << f.p()
     << ",\"k\":" << f.k() << ",\"vertices\":[";
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    os << (i ? ",\n" : "\n") << vertex_json(c.vertices[i]).dump();
  }
  os << "\n]}\n";
}

inline void write_cycle_text(std::ostream& os, Cycle const& c) {
  for (auto const& v : c.vertices) {
    os << (v.is_affine() ? 'A' : 'I');
    for (Code x : v.coords()) os << ' ' << x;
    os << '\n';
  }
}

struct ParsedCycle {
  Cycle cycle;
  std::optional<std::uint64_t> q;  // present in JSON input
};

inline Vec parse_coords(json const& j, Field const* f) {
  if (!j.is_array()) throw ParseError("coords must be an array");
  Vec v;
  for (auto const& x : j) {
    if (!x.is_number_unsigned()) throw ParseError("coordinates must be non-negative integers");
    const auto c = x.get<std::uint64_t>();
    if (f && c >= f->q()) throw ParseError("coordinate " + std::to_string(c) + " is not a field element");
    v.push_back(static_cast<Code>(c));
  }
  return v;
}

inline ParsedCycle cycle_from_json(json const& j, Field const* f = nullptr) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("n")) throw ParseError("cycle JSON needs n and vertices");
  ParsedCycle out;
  out.cycle.dim = j.at("n").get<std::size_t>();
  if (j.contains("q")) out.q = j.at("q").get<std::uint64_t>();
  for (auto const& v : j.at("vertices")) {
    const std::string type = v.at("type").get<std::string>();
    Vec coords = parse_coords(v.at("coords"), f);
    if (coords.size() != out.cycle.dim) throw ParseError("vertex dimension differs from n");
    if (type == "affine") {
      out.cycle.vertices.push_back(ProjVertex::affine(std::move(coords)));
    } else if (type == "infinity") {
      out.cycle.vertices.push_back(ProjVertex::infinity(std::move(coords)));
    } else {
      throw ParseError("unknown vertex type '" + type + "'");
    }
  }
  return out;
}

inline ParsedCycle cycle_from_text(std::istream& is, Field const* f = nullptr) {
  ParsedCycle out;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    char tag = 0;
    if (!(ls >> tag)) continue;  // blank line
    if (tag != 'A' && tag != 'I') throw ParseError("vertex line must start with A or I");
    Vec coords;
    long long x = 0;
    while (ls >> x) {
      if (x < 0 || (f && static_cast<std::uint64_t>(x) >= f->q())) throw ParseError("coordinate out of range");
      coords.push_back(static_cast<Code>(x));
    }
    if (!ls.eof()) throw ParseError("malformed coordinate");
    if (first) {
      out.cycle.dim = coords.size();
      first = false;
    } else if (coords.size() != out.cycle.dim) {
      throw ParseError("vertex dimensions differ");
    }
    out.cycle.vertices.push_back(tag == 'A' ? ProjVertex::affine(std::move(coords))
                                            : ProjVertex::infinity(std::move(coords)));
  }
  return out;
}

/// Reads JSON or text, deciding by the first non-blank character.
inline ParsedCycle read_cycle(std::istream& is, Field const* f = nullptr) {
  is >> std::ws;
  if (is.peek() == '{') {
    json j;
    try {
      j = json::parse(is);
    } catch (json::exception const& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    try {
      return cycle_from_json(j, f);
    } catch (json::exception const& e) {
      throw ParseError(std::string("bad cycle JSON: ") + e.what());
    }
  }
  return cycle_from_text(is, f);
}

inline json grass_cycle_json(Field const& f, GrassCycle const& c) {
  return {{"schema", kSchemaVersion}, {"m", c.dim}, {"q", f.q()}, {"vertices", c.vertices}};
}

inline GrassCycle grass_cycle_from_json(json const& j) {
  GrassCycle c;
  c.dim = j.at("m").get<std::size_t>();
  for (auto const& v : j.at("vertices")) c.vertices.push_back(parse_coords(v, nullptr));
  return c;
}

inline json line_json(AffineLine const& l) { return {{"dir", l.dir.vec}, {"base", l.base.coords}}; }

inline json subspace_json(Subspace2 const& s) { return json::array({s.rows[0], s.rows[1]}); }

template <class Item, class ItemJson>
json report_json(CoverageReport<Item> const& r, ItemJson&& item_json) {
  json missing = json::array(), duplicated = json::array(), unexpected = json::array();
  for (auto const& x : r.missing) missing.push_back(item_json(x));
  for (auto const& [x, c] : r.duplicated) duplicated.push_back({{"item", item_json(x)}, {"count", c}});
  for (auto const& x : r.unexpected) unexpected.push_back(item_json(x));
  return {{"passed", r.passed()},
          {"expected_count", r.expected_count},
          {"found_count", r.found_count},
          {"missing", std::move(missing)},
          {"missing_total", r.missing_total},
          {"duplicated", std::move(duplicated)},
          {"duplicated_total", r.duplicated_total},
          {"unexpected", std::move(unexpected)},
          {"unexpected_total", r.unexpected_total},
          {"degenerate_windows", r.degenerate_windows},
          {"degenerate_total", r.degenerate_total}};
}

inline json report_json(AffineReport const& r) { return report_json(r, line_json); }
inline json report_json(GrassReport const& r) { return report_json(r, subspace_json); }

}  // namespace ucycle::io
