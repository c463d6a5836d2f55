#include "frustra/model_json.hpp"

#include <cmath>
#include <fstream>

#include "frustra/error.hpp"

namespace frustra {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::Parse, what); }

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) fail(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

LocalOperator op_from_json(const json& op, int dim, const std::string& where) {
  if (op.is_string()) {
    const auto name = op.get<std::string>();
    if (name == "X") return Pauli::X;
    if (name == "Y") return Pauli::Y;
    if (name == "Z") return Pauli::Z;
    fail(where + ": unknown operator \"" + name + "\"");
  }
  if (!op.is_array()) fail(where + ": operator must be \"X\", \"Y\", \"Z\" or a list of [re, im] pairs");
  const auto expected = static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim);
  if (op.size() != expected) {
    fail(where + ": explicit operator needs " + std::to_string(expected) + " entries, got " +
         std::to_string(op.size()));
  }
  ComplexMatrix m(dim, dim);
  for (std::size_t k = 0; k < expected; ++k) {
    const json& entry = op[k];
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
      fail(where + ": entry " + std::to_string(k) + " must be [re, im]");
    }
    m(static_cast<Eigen::Index>(k) / dim, static_cast<Eigen::Index>(k) % dim) =
        Complex(entry[0].get<double>(), entry[1].get<double>());
  }
  return m;
}

json op_to_json(const LocalOperator& op) {
  if (const auto* p = std::get_if<Pauli>(&op)) {
    switch (*p) {
      case Pauli::X:
        return "X";
      case Pauli::Y:
        return "Y";
      case Pauli::Z:
        return "Z";
    }
  }
  const auto& m = std::get<ComplexMatrix>(op);
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return entries;
}

std::vector<std::size_t> index_list(const json& doc, const char* key) {
  std::vector<std::size_t> out;
  if (!doc.contains(key)) return out;
  const json& arr = doc.at(key);
  if (!arr.is_array()) fail(std::string("assignment: \"") + key + "\" must be an array");
  for (const json& v : arr) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      fail(std::string("assignment: \"") + key + "\" entries must be non-negative integers");
    }
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(path.string() + ": " + e.what());
  }
}

}  // namespace

SpinModel model_from_json(const json& doc) {
  SpinModel model;
  if (!doc.is_object()) fail("model: document must be an object");
  const json& name = require(doc, "name", "model");
  if (!name.is_string()) fail("model: \"name\" must be a string");
  model.name = name.get<std::string>();

  const json& sites = require(doc, "sites", "model");
  if (!sites.is_array() || sites.empty()) fail("model: \"sites\" must be a non-empty array");
  for (const json& d : sites) {
    if (!d.is_number_integer() || d.get<long long>() < 2) fail("model: site dimensions must be integers >= 2");
    model.dims.push_back(d.get<int>());
  }
  if (doc.contains("labels")) {
    for (const json& l : doc.at("labels")) {
      if (!l.is_string()) fail("model: labels must be strings");
      model.labels.push_back(l.get<std::string>());
    }
  }

  const json& terms = require(doc, "terms", "model");
  if (!terms.is_array()) fail("model: \"terms\" must be an array");
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string where = "term " + std::to_string(t);
    const json& coeff = require(terms[t], "coeff", where);
    if (!coeff.is_number()) fail(where + ": \"coeff\" must be a number");
    OperatorTerm term;
    term.coefficient = coeff.get<double>();
    const json& factors = require(terms[t], "factors", where);
    if (!factors.is_array()) fail(where + ": \"factors\" must be an array");
    for (const json& f : factors) {
      const json& site = require(f, "site", where);
      if (!site.is_number_integer() || site.get<long long>() < 0 ||
          site.get<std::size_t>() >= model.dims.size()) {
        fail(where + ": invalid site index");
      }
      const auto s = site.get<std::size_t>();
      term.factors.push_back({s, op_from_json(require(f, "op", where), model.dims[s], where)});
    }
    model.terms.push_back(std::move(term));
  }
  validate(model);
  return model;
}

json model_to_json(const SpinModel& model) {
  json doc;
  doc["name"] = model.name;
  doc["sites"] = model.dims;
  if (!model.labels.empty()) doc["labels"] = model.labels;
  json terms = json::array();
  for (const OperatorTerm& term : model.terms) {
    json factors = json::array();
    for (const Factor& f : term.factors) factors.push_back({{"site", f.site}, {"op", op_to_json(f.op)}});
    terms.push_back({{"coeff", term.coefficient}, {"factors", factors}});
  }
  doc["terms"] = terms;
  return doc;
}

SpinModel load_model_file(const std::filesystem::path& path) { return model_from_json(parse_file(path)); }

ExplicitAssignment assignment_from_json(const json& doc) {
  if (!doc.is_object()) fail("assignment: document must be an object");
  return {index_list(doc, "local"), index_list(doc, "interaction")};
}

ExplicitAssignment load_assignment_file(const std::filesystem::path& path) {
  return assignment_from_json(parse_file(path));
}

}  // namespace frustra
