#include "hx/packing_record.hpp"

#include "hx/error.hpp"

namespace hx {

std::vector<VertexSet> PackingRecord::vertex_sets() const {
  std::vector<VertexSet> out;
  out.reserve(copies.size());
  for (const PackedCopy& c : copies) out.push_back(c.vertices);
  return out;
}

PackedCopy transport(const Hypergraph& templ, std::span<const Vertex> bijection, std::uint32_t n) {
  require(bijection.size() == templ.n(), ErrorKind::BadParameters, "bijection length differs from template size");
  PackedCopy copy;
  copy.vertices = VertexSet(n);
  for (Vertex v : bijection) {
    require(v < n, ErrorKind::VertexOutOfRange, "bijection image outside [0, n)");
    require(!copy.vertices.contains(v), ErrorKind::BadParameters, "bijection is not injective");
    copy.vertices.insert(v);
  }
  copy.bijection.assign(bijection.begin(), bijection.end());
  copy.edges.reserve(templ.size());
  for (const VertexSet& e : templ.edges()) {
    VertexSet image(n);
    e.for_each([&](Vertex v) { image.insert(bijection[v]); });
    copy.edges.push_back(std::move(image));
  }
  return copy;
}

nlohmann::ordered_json packing_to_json(const PackingRecord& p) {
  nlohmann::ordered_json doc;
  doc["n"] = p.n;
  doc["k"] = p.k;
  doc["template"] = p.template_id;
  auto copies = nlohmann::ordered_json::array();
  for (const PackedCopy& c : p.copies) {
    nlohmann::ordered_json entry;
    entry["vertices"] = c.vertices.to_vector();
    entry["bijection"] = c.bijection;
    auto edges = nlohmann::ordered_json::array();
    for (const VertexSet& e : c.edges) edges.push_back(e.to_vector());
    entry["edges"] = std::move(edges);
    copies.push_back(std::move(entry));
  }
  doc["copies"] = std::move(copies);
  doc["flags"] = p.flags;
  return doc;
}

PackingRecord packing_from_json(const nlohmann::json& doc) {
  PackingRecord p;
  try {
    p.n = doc.at("n").get<std::uint32_t>();
    p.k = doc.at("k").get<std::uint32_t>();
    p.template_id = doc.value("template", std::string());
    for (const auto& entry : doc.at("copies")) {
      PackedCopy c;
      c.vertices = VertexSet(p.n);
      for (const auto& v : entry.at("vertices")) c.vertices.insert(v.get<Vertex>());
      c.bijection = entry.value("bijection", std::vector<Vertex>{});
      for (const auto& e : entry.at("edges")) {
        VertexSet s(p.n);
        for (const auto& v : e) s.insert(v.get<Vertex>());
        c.edges.push_back(std::move(s));
      }
      p.copies.push_back(std::move(c));
    }
    if (doc.contains("flags")) p.flags = doc.at("flags").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::FormatViolation, std::string("malformed packing JSON: ") + e.what());
  }
  return p;
}

}  // namespace hx
