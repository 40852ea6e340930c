#include "latpatch/io.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "latpatch/error.hpp"

namespace latpatch {

using nlohmann::json;

namespace {

json lattice_json(const Diagram& d, const Meta& meta) {
  const Lattice& l = d.lattice();
  json covers = json::array();
  for (const auto& [a, b] : l.cover_pairs()) covers.push_back({a, b});
  json embedding = json::object();
  for (int e = 0; e < l.size(); ++e) embedding[l.name(e)] = format_rational(d.x(e));
  json m = json::object();
  for (const auto& [k, v] : meta) m[k] = v;
  return json{{"elements", l.names()}, {"covers", covers}, {"embedding", embedding}, {"meta", m}};
}

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw LatticeError(ErrorKind::SchemaError, path + ": " + what);
}

ParsedDocument lattice_from_json(const json& doc, const std::string& path, std::size_t max_synth) {
  if (!doc.is_object()) schema(path, "expected an object");
  if (!doc.contains("elements") || !doc["elements"].is_array())
    schema(path + ".elements", "expected an array of labels");
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (const auto& e : doc["elements"]) {
    if (!e.is_string()) schema(path + ".elements", "labels must be strings");
    if (!seen.insert(e.get<std::string>()).second)
      schema(path + ".elements", "duplicate label " + e.get<std::string>());
    names.push_back(e.get<std::string>());
  }
  const int n = static_cast<int>(names.size());

  std::vector<Cover> covers;
  if (doc.contains("covers")) {
    const json& c = doc["covers"];
    if (!c.is_array()) schema(path + ".covers", "expected an array");
    for (std::size_t i = 0; i < c.size(); ++i) {
      const json& p = c[i];
      std::string where = path + ".covers[" + std::to_string(i) + "]";
      if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
        schema(where, "expected [lowerIndex, upperIndex]");
      int a = p[0].get<int>(), b = p[1].get<int>();
      if (a < 0 || b < 0 || a >= n || b >= n) schema(where, "index out of range");
      covers.emplace_back(a, b);
    }
  }

  Meta meta;
  if (doc.contains("meta")) {
    if (!doc["meta"].is_object()) schema(path + ".meta", "expected an object");
    for (const auto& [k, v] : doc["meta"].items()) {
      if (!v.is_string()) schema(path + ".meta." + k, "values must be strings");
      meta[k] = v.get<std::string>();
    }
  }

  std::optional<Lattice> lattice;
  try {
    lattice = Lattice::from_covers(names, covers);
  } catch (const LatticeError& e) {
    if (e.kind() == ErrorKind::CycleDetected || e.kind() == ErrorKind::UnknownElement)
      schema(path + ".covers", e.what());
    throw;
  }

  if (!doc.contains("embedding") || doc["embedding"].is_null()) {
    auto d = synthesize_embedding(*lattice, max_synth);
    if (!d) throw LatticeError(ErrorKind::EmbeddingFailed, path + ": no planar drawing found");
    return ParsedDocument{std::move(*d), std::move(meta), true};
  }
  const json& emb = doc["embedding"];
  if (!emb.is_object()) schema(path + ".embedding", "expected an object");
  std::vector<Rational> x(n);
  for (int e = 0; e < n; ++e) {
    auto it = emb.find(names[e]);
    if (it == emb.end() || !it->is_string())
      schema(path + ".embedding", "missing coordinate for " + names[e]);
    x[e] = parse_rational(it->get<std::string>());
  }
  if (emb.size() != static_cast<std::size_t>(n))
    schema(path + ".embedding", "coordinates for unknown labels");
  Diagram d(std::move(*lattice), std::move(x));
  if (auto v = validate_diagram(d)) schema(path + ".embedding", v->message);
  return ParsedDocument{std::move(d), std::move(meta), false};
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    schema("$", e.what());
  }
}

json tree_json(const DecompositionTree& t) {
  json node{{"lattice", lattice_json(t.result(), {})}};
  if (t.is_leaf()) {
    node["kind"] = "leaf";
    return node;
  }
  node["kind"] = "glue";
  const Lattice& l = t.result().lattice();
  std::vector<std::string> chain;
  for (Element e : t.witness().chain) chain.push_back(l.name(e));
  node["chain"] = chain;
  node["children"] = json::array({tree_json(t.ideal_part()), tree_json(t.filter_part())});
  return node;
}

DecompositionTree tree_from_json(const json& node, const std::string& path, std::size_t max_synth) {
  if (!node.is_object() || !node.contains("kind") || !node["kind"].is_string())
    schema(path, "expected a node with a kind");
  if (!node.contains("lattice")) schema(path + ".lattice", "missing");
  Diagram d = lattice_from_json(node["lattice"], path + ".lattice", max_synth).diagram;
  const std::string kind = node["kind"].get<std::string>();
  if (kind == "leaf") return DecompositionTree::leaf(std::move(d));
  if (kind != "glue") schema(path + ".kind", "expected leaf or glue");
  if (!node.contains("children") || !node["children"].is_array() || node["children"].size() != 2)
    schema(path + ".children", "expected two children");
  if (!node.contains("chain") || !node["chain"].is_array())
    schema(path + ".chain", "expected an array of labels");

  DecompositionTree ideal_part = tree_from_json(node["children"][0], path + ".children[0]", max_synth);
  DecompositionTree filter_part = tree_from_json(node["children"][1], path + ".children[1]", max_synth);
  const Lattice& l = d.lattice();
  auto ids_of = [&](const Lattice& part, const std::string& where) {
    ElementSet out;
    for (const auto& name : part.names()) {
      auto e = l.find(name);
      if (!e) schema(where, "label " + name + " not in the node lattice");
      out.push_back(*e);
    }
    return normalized(out);
  };
  GluingWitness w;
  w.ideal = ids_of(ideal_part.result().lattice(), path + ".children[0]");
  w.filter = ids_of(filter_part.result().lattice(), path + ".children[1]");
  for (const auto& c : node["chain"]) {
    if (!c.is_string()) schema(path + ".chain", "labels must be strings");
    auto e = l.find(c.get<std::string>());
    if (!e) schema(path + ".chain", "unknown label " + c.get<std::string>());
    w.chain.push_back(*e);
  }
  w.chain = normalized(w.chain);
  return DecompositionTree::glue(std::move(d), std::move(w), std::move(ideal_part),
                                 std::move(filter_part));
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string decimal(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g",
                static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()));
  return buf;
}

}  // namespace

std::string serialize(const Diagram& d, const Meta& meta) {
  return lattice_json(d, meta).dump(2) + "\n";
}

ParsedDocument parse_document(std::string_view text, std::size_t max_synth) {
  return lattice_from_json(parse_json(text), "$", max_synth);
}

std::string serialize_tree(const DecompositionTree& tree) { return tree_json(tree).dump(2) + "\n"; }

DecompositionTree parse_tree(std::string_view text, std::size_t max_synth) {
  return tree_from_json(parse_json(text), "$", max_synth);
}

std::string serialize_witness(const Lattice& l, const GluingWitness& w) {
  auto labels = [&](const ElementSet& s) {
    std::vector<std::string> out;
    for (Element e : s) out.push_back(l.name(e));
    return out;
  };
  json j{{"ideal", labels(w.ideal)}, {"filter", labels(w.filter)}, {"chain", labels(w.chain)}};
  return j.dump() + "\n";
}

std::string export_dot(const Diagram& d) {
  const Lattice& l = d.lattice();
  std::ostringstream out;
  out << "digraph lattice {\n  rankdir=BT;\n  node [shape=circle];\n";
  std::vector<Element> order(l.size());
  for (int e = 0; e < l.size(); ++e) order[e] = e;
  std::sort(order.begin(), order.end(), [&](Element a, Element b) {
    if (l.height(a) != l.height(b)) return l.height(a) < l.height(b);
    return d.x(a) != d.x(b) ? d.x(a) < d.x(b) : a < b;
  });
  for (Element e : order)
    out << "  " << quoted(l.name(e)) << " [pos=\"" << decimal(d.x(e)) << "," << l.height(e)
        << "!\"];\n";
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && l.height(order[j]) == l.height(order[i])) ++j;
    out << "  { rank=same;";
    for (std::size_t k = i; k < j; ++k) out << " " << quoted(l.name(order[k])) << ";";
    out << " }\n";
    i = j;
  }
  for (const auto& [a, b] : l.cover_pairs())
    out << "  " << quoted(l.name(a)) << " -> " << quoted(l.name(b)) << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace latpatch
