#include "cds/report.hpp"

#include <sstream>

#include "cds/error.hpp"

namespace cds {

namespace {

Json relation_rows(const BinRel& r) {
  Json rows = Json::array();
  std::istringstream in(r.to_string());
  for (std::string line; std::getline(in, line);) rows.push_back(line);
  return rows;
}

BinRel relation_from_rows(const Json& rows) {
  const std::size_t n = rows.size();
  BinRel r(n);
  for (std::size_t a = 0; a < n; ++a) {
    const std::string line = rows[a].get<std::string>();
    if (line.size() != n) throw InputError("counterexample relation is not square");
    for (std::size_t b = 0; b < n; ++b)
      if (line[b] == '1')
        r.set(a, b);
      else if (line[b] != '0')
        throw InputError("counterexample relation has a non-binary entry");
  }
  return r;
}

}  // namespace

Json to_json(const FreeAlgebraCaps& caps) {
  return Json{{"max_elements", caps.max_elements}, {"max_width", caps.max_width}};
}

Json to_json(const Counterexample& c) {
  Json rels = Json::object();
  for (const auto& [name, r] : c.relations) rels[std::string(1, name)] = relation_rows(r);
  return Json{{"algebra", c.algebra}, {"size", c.size},   {"lhs", c.lhs},
              {"rhs", c.rhs},         {"pair", {c.a, c.b}}, {"relations", rels}};
}

Counterexample counterexample_from_json(const Json& j) {
  Counterexample c;
  c.algebra = j.at("algebra").get<std::string>();
  c.size = j.at("size").get<std::size_t>();
  c.lhs = j.at("lhs").get<std::string>();
  c.rhs = j.at("rhs").get<std::string>();
  c.a = j.at("pair").at(0).get<std::size_t>();
  c.b = j.at("pair").at(1).get<std::size_t>();
  for (const auto& [name, rows] : j.at("relations").items()) {
    if (name.size() != 1) throw InputError("counterexample relation names are single letters");
    c.relations.emplace(name[0], relation_from_rows(rows));
  }
  return c;
}

Json to_json(const Witness& w) {
  Json terms = Json::array();
  return Json{{"free_generators", w.algebra->generators()},
              {"chain", w.chain},
              {"labels", w.labels}};
}

Json to_json(const SpectrumResult& r, const std::vector<std::string>& algebras,
             const FreeAlgebraCaps& caps) {
  Json j{{"algebras", algebras}, {"variant", to_string(r.variant)}, {"m", r.m}};
  if (r.value)
    j["value"] = *r.value;
  else
    j["value"] = "exceeded";
  j["outcome"] = to_string(r.outcome);
  j["k_max"] = r.k_max;
  if (r.upper_bound && !r.value) j["upper_bound"] = *r.upper_bound;
  Json terms = Json::array();
  for (const auto& t : r.terms) terms.push_back(t.to_string());
  j["terms"] = terms;
  if (r.witness) j["witness"] = to_json(*r.witness);
  if (r.budget) {
    j["budget"] = *r.budget;
    j["exhaustive"] = r.exhaustive;
  } else {
    j["free_algebra"] = Json{{"elements", r.free_size}, {"complete", r.free_complete}};
  }
  j["caps"] = to_json(caps);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const TermChain& c, const std::vector<std::string>& algebras,
             const FreeAlgebraCaps& caps) {
  Json j{{"algebras", algebras}, {"scheme", to_string(c.scheme)}};
  if (c.length)
    j["length"] = *c.length;
  else
    j["length"] = nullptr;
  if (c.terms) {
    Json terms = Json::array();
    for (const auto& t : *c.terms) terms.push_back(t.to_string());
    j["terms"] = terms;
    j["value"] = "found";
  } else {
    j["value"] = "exceeded";
  }
  j["elements"] = c.elements;
  j["free_algebra"] = Json{{"generators", 3}, {"elements", c.free_size}};
  j["caps"] = to_json(caps);
  return j;
}

Json to_json(const RelationCheck& c) {
  Json j{{"status", to_string(c.status)},
         {"budget", c.budget},
         {"exhaustive", c.exhaustive},
         {"cases", c.cases}};
  if (c.counterexample) j["counterexample"] = to_json(*c.counterexample);
  return j;
}

}  // namespace cds
