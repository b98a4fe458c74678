#pragma once

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stablecut/graph.hpp"

namespace stablecut {

using json = nlohmann::ordered_json;

// Parsed instance file.  A file always describes a weighted graph; terminals,
// signed labels, and demand pairs ride along when present.  The provenance
// block is carried verbatim (it never influences solving) so that
// serialize(parse(x)) reproduces generated fixtures byte for byte.
struct Instance {
  int n = 0;
  std::vector<Edge> edges;
  std::vector<int> terminals;        // empty when absent
  bool has_labels = false;
  std::vector<SignedEdge> labels;
  std::vector<DemandPair> demands;   // empty when absent
  json provenance;                   // null when absent

  WeightedGraph graph() const { return WeightedGraph(n, edges); }

  // Labels carry only the pair; the weight comes from the matching entry of
  // `edges`, so a signed instance is a weighted graph plus a sign per edge.
  SignedGraph signed_graph() const {
    if (!has_labels) throw instance_error("instance carries no signed labels");
    std::vector<SignedEdge> joined;
    for (const auto& se : labels) {
      const int a = std::min(se.u, se.v), b = std::max(se.u, se.v);
      bool found = false;
      for (const auto& e : edges) {
        if (e.u == a && e.v == b) {
          joined.push_back(SignedEdge{a, b, e.w, se.sign});
          found = true;
          break;
        }
      }
      if (!found)
        throw instance_error("label references a pair with no edge: (" + std::to_string(a) +
                             ", " + std::to_string(b) + ")");
    }
    return SignedGraph(n, joined);
  }

  SparsestCutInstance sparsest(bool require_connected = true) const {
    if (demands.empty()) throw instance_error("instance carries no demand pairs");
    SparsestCutInstance inst;
    inst.n = n;
    inst.capacity = edges;
    inst.demands = demands;
    validate_sparsest_cut(inst, require_connected);
    return inst;
  }
};

namespace detail {

inline std::string format_double(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  std::string s(buf, ptr);
  // keep the text unambiguous about being a real number
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
    s += ".0";
  return s;
}

inline int require_int(const json& j, const std::string& what) {
  if (!j.is_number_integer())
    throw instance_error(what + " must be an integer");
  return j.get<int>();
}

inline double require_number(const json& j, const std::string& what) {
  if (!j.is_number())
    throw instance_error(what + " must be a number");
  return j.get<double>();
}

}  // namespace detail

inline Instance parse_instance_json(const json& doc) {
  if (!doc.is_object()) throw instance_error("instance document must be a JSON object");
  Instance inst;
  if (!doc.contains("n")) throw instance_error("missing required key 'n'");
  inst.n = detail::require_int(doc.at("n"), "'n'");
  if (inst.n <= 0) throw instance_error("'n' must be positive");
  if (!doc.contains("edges")) throw instance_error("missing required key 'edges'");
  const json& edges = doc.at("edges");
  if (!edges.is_array()) throw instance_error("'edges' must be an array");
  for (const json& e : edges) {
    if (!e.is_array() || e.size() != 3)
      throw instance_error("edge entry must be a [u, v, w] triple");
    Edge ed;
    ed.u = detail::require_int(e[0], "edge endpoint");
    ed.v = detail::require_int(e[1], "edge endpoint");
    ed.w = detail::require_number(e[2], "edge weight");
    inst.edges.push_back(ed);
  }
  // constructing the graph runs the full validation battery (range, self
  // loops, duplicates, negative weights) with its distinct diagnostics
  WeightedGraph g(inst.n, inst.edges);

  if (doc.contains("terminals")) {
    const json& ts = doc.at("terminals");
    if (!ts.is_array()) throw instance_error("'terminals' must be an array");
    for (const json& t : ts) inst.terminals.push_back(detail::require_int(t, "terminal"));
    validate_terminals(g, inst.terminals);
  }
  if (doc.contains("labels")) {
    const json& ls = doc.at("labels");
    if (!ls.is_object()) throw instance_error("'labels' must be an object");
    inst.has_labels = true;
    for (const char* key : {"plus", "minus"}) {
      if (!ls.contains(key)) continue;
      const json& arr = ls.at(key);
      if (!arr.is_array()) throw instance_error(std::string("'labels.") + key + "' must be an array");
      for (const json& p : arr) {
        if (!p.is_array() || p.size() != 2)
          throw instance_error("label entry must be a [u, v] pair");
        SignedEdge se;
        se.u = detail::require_int(p[0], "label endpoint");
        se.v = detail::require_int(p[1], "label endpoint");
        se.sign = (key[0] == 'p') ? Sign::plus : Sign::minus;
        inst.labels.push_back(se);
      }
    }
    SignedGraph(inst.n, inst.labels);  // validation only
  }
  if (doc.contains("demands")) {
    const json& ds = doc.at("demands");
    if (!ds.is_array()) throw instance_error("'demands' must be an array");
    for (const json& d : ds) {
      if (!d.is_array() || d.size() != 3)
        throw instance_error("demand entry must be a [u, v, d] triple");
      DemandPair dp;
      dp.u = detail::require_int(d[0], "demand endpoint");
      dp.v = detail::require_int(d[1], "demand endpoint");
      dp.d = detail::require_number(d[2], "demand value");
      if (dp.u < 0 || dp.u >= inst.n || dp.v < 0 || dp.v >= inst.n)
        throw instance_error("demand endpoint out of range: (" + std::to_string(dp.u) + ", " +
                             std::to_string(dp.v) + ")");
      if (dp.u == dp.v) throw instance_error("demand pair endpoints must differ");
      if (!(dp.d > 0.0) || !std::isfinite(dp.d))
        throw instance_error("nonpositive demand rejected at parse: (" + std::to_string(dp.u) +
                             ", " + std::to_string(dp.v) + ")");
      if (dp.u > dp.v) std::swap(dp.u, dp.v);
      inst.demands.push_back(dp);
    }
    for (std::size_t i = 0; i + 1 < inst.demands.size(); ++i)
      for (std::size_t j = i + 1; j < inst.demands.size(); ++j)
        if (inst.demands[i].u == inst.demands[j].u && inst.demands[i].v == inst.demands[j].v)
          throw instance_error("duplicate demand pair rejected: (" +
                               std::to_string(inst.demands[i].u) + ", " +
                               std::to_string(inst.demands[i].v) + ")");
  }
  if (doc.contains("provenance")) inst.provenance = doc.at("provenance");

  // normalize edges the way the graph does so round-trips are canonical
  inst.edges = g.edges();
  return inst;
}

inline Instance parse_instance_text(const std::string& text) {
  std::istringstream in(text);
  long long n = 0, m = 0;
  if (!(in >> n >> m)) throw instance_error("text header must be 'n m'");
  if (n <= 0) throw instance_error("'n' must be positive");
  if (m < 0) throw instance_error("edge count must be nonnegative");
  Instance inst;
  inst.n = static_cast<int>(n);
  for (long long i = 0; i < m; ++i) {
    long long u = 0, v = 0;
    double w = 0.0;
    if (!(in >> u >> v >> w))
      throw instance_error("expected " + std::to_string(m) + " 'u v w' lines, found " +
                           std::to_string(i));
    inst.edges.push_back(Edge{static_cast<int>(u), static_cast<int>(v), w});
  }
  std::string rest;
  if (in >> rest) throw instance_error("trailing tokens after the declared edge list");
  WeightedGraph g(inst.n, inst.edges);
  inst.edges = g.edges();
  return inst;
}

// Sniffs JSON (leading '{') versus the text edge-list format.
inline Instance parse_instance(const std::string& bytes) {
  std::size_t i = 0;
  while (i < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[i]))) ++i;
  if (i == bytes.size()) throw instance_error("empty instance file");
  if (bytes[i] == '{') {
    json doc;
    try {
      doc = json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
      throw instance_error(std::string("malformed JSON: ") + e.what());
    }
    return parse_instance_json(doc);
  }
  return parse_instance_text(bytes);
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw instance_error("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

inline json instance_to_json(const Instance& inst) {
  json doc;
  doc["n"] = inst.n;
  json edges = json::array();
  for (const auto& e : inst.edges) edges.push_back(json::array({e.u, e.v, e.w}));
  doc["edges"] = std::move(edges);
  if (!inst.terminals.empty()) doc["terminals"] = inst.terminals;
  if (inst.has_labels) {
    json plus = json::array(), minus = json::array();
    for (const auto& se : inst.labels) {
      const int a = std::min(se.u, se.v), b = std::max(se.u, se.v);
      (se.sign == Sign::plus ? plus : minus).push_back(json::array({a, b}));
    }
    doc["labels"] = json::object();
    doc["labels"]["plus"] = std::move(plus);
    doc["labels"]["minus"] = std::move(minus);
  }
  if (!inst.demands.empty()) {
    json ds = json::array();
    for (const auto& d : inst.demands) ds.push_back(json::array({d.u, d.v, d.d}));
    doc["demands"] = std::move(ds);
  }
  if (!inst.provenance.is_null()) doc["provenance"] = inst.provenance;
  return doc;
}

// Canonical fixture layout: one edge/demand per line, scalar lists inline.
// Deterministic byte-for-byte for a given Instance.
inline std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  out << "{\n  \"n\": " << inst.n << ",\n  \"edges\": [";
  for (std::size_t i = 0; i < inst.edges.size(); ++i) {
    const auto& e = inst.edges[i];
    out << (i ? "," : "") << "\n    [" << e.u << ", " << e.v << ", "
        << detail::format_double(e.w) << "]";
  }
  out << (inst.edges.empty() ? "]" : "\n  ]");
  if (!inst.terminals.empty()) {
    out << ",\n  \"terminals\": [";
    for (std::size_t i = 0; i < inst.terminals.size(); ++i)
      out << (i ? ", " : "") << inst.terminals[i];
    out << "]";
  }
  if (inst.has_labels) {
    std::vector<std::pair<int, int>> plus, minus;
    for (const auto& se : inst.labels)
      (se.sign == Sign::plus ? plus : minus)
          .emplace_back(std::min(se.u, se.v), std::max(se.u, se.v));
    const auto emit = [&](const char* key, const std::vector<std::pair<int, int>>& ps) {
      out << "\n    \"" << key << "\": [";
      for (std::size_t i = 0; i < ps.size(); ++i)
        out << (i ? ", " : "") << "[" << ps[i].first << ", " << ps[i].second << "]";
      out << "]";
    };
    out << ",\n  \"labels\": {";
    emit("plus", plus);
    out << ",";
    emit("minus", minus);
    out << "\n  }";
  }
  if (!inst.demands.empty()) {
    out << ",\n  \"demands\": [";
    for (std::size_t i = 0; i < inst.demands.size(); ++i) {
      const auto& d = inst.demands[i];
      out << (i ? "," : "") << "\n    [" << d.u << ", " << d.v << ", "
          << detail::format_double(d.d) << "]";
    }
    out << "\n  ]";
  }
  if (!inst.provenance.is_null()) {
    std::istringstream prov(inst.provenance.dump(2));
    out << ",\n  \"provenance\": ";
    std::string line;
    bool first = true;
    while (std::getline(prov, line)) {
      out << (first ? "" : "\n  ") << line;
      first = false;
    }
  }
  out << "\n}\n";
  return out.str();
}

inline std::string serialize_instance_text(const Instance& inst) {
  std::ostringstream out;
  out << inst.n << " " << inst.edges.size() << "\n";
  for (const auto& e : inst.edges)
    out << e.u << " " << e.v << " " << detail::format_double(e.w) << "\n";
  return out.str();
}

inline Instance instance_from_graph(const WeightedGraph& g) {
  Instance inst;
  inst.n = g.n();
  inst.edges = g.edges();
  return inst;
}

inline void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw instance_error("cannot write instance file: " + path);
  out << serialize_instance(inst);
}

}  // namespace stablecut
