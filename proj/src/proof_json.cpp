#include "nmodal/proof_json.hpp"

#include <cctype>
#include <fstream>

namespace nmodal {

using nlohmann::json;

namespace {

json formulas_to_json(const FormulaSet& fs) {
  json arr = json::array();
  for (const auto& f : fs) arr.push_back(to_string(f));
  return arr;
}

std::vector<Formula> formulas_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw ProofFormatError(std::string(what) + " must be an array of formula strings");
  std::vector<Formula> out;
  for (const auto& item : j) {
    if (!item.is_string()) throw ProofFormatError(std::string(what) + " must be an array of formula strings");
    out.push_back(parse_formula(item.get<std::string>()));
  }
  return out;
}

}  // namespace

json sequent_to_json(const Sequent& s) { return {{"ante", formulas_to_json(s.ante())}, {"succ", formulas_to_json(s.succ())}}; }

Sequent sequent_from_json(const json& j) {
  if (!j.is_object()) throw ProofFormatError("sequent must be an object");
  json ante = j.value("ante", json::array());
  json succ = j.value("succ", json::array());
  return Sequent(formulas_from_json(ante, "ante"), formulas_from_json(succ, "succ"));
}

json proof_to_json(const Proof& p) {
  json node;
  node["sequent"] = sequent_to_json(p->conclusion);
  std::string name = p->rule == Rule::Unknown ? p->unknown_rule_name : std::string(rule_name(p->rule));
  if ((p->rule == Rule::AndL || p->rule == Rule::OrR) && (p->aux.index == 1 || p->aux.index == 2)) {
    name += std::to_string(p->aux.index);
    node["aux"] = {{"i", p->aux.index}};
  }
  if (p->rule == Rule::ImpL || p->rule == Rule::Cut) {
    node["aux"] = {{"leftAnte", formulas_to_json(make_set(p->aux.left_ante))},
                   {"leftSucc", formulas_to_json(make_set(p->aux.left_succ))}};
  }
  node["rule"] = name;
  if (p->principal) node["principal"] = to_string(*p->principal);
  json prem = json::array();
  for (const auto& q : p->premises) prem.push_back(proof_to_json(q));
  node["premises"] = std::move(prem);
  return node;
}

Proof proof_from_json(const json& j) {
  if (!j.is_object()) throw ProofFormatError("proof node must be an object");
  if (!j.contains("sequent")) throw ProofFormatError("proof node lacks \"sequent\"");
  if (!j.contains("rule") || !j["rule"].is_string()) throw ProofFormatError("proof node lacks a string \"rule\"");
  auto node = std::make_shared<ProofNode>();
  node->conclusion = sequent_from_json(j["sequent"]);
  const std::string name = j["rule"].get<std::string>();
  if (auto r = rule_from_name(name)) {
    node->rule = *r;
  } else {
    node->rule = Rule::Unknown;
    node->unknown_rule_name = name;
  }
  if (name.size() > 1 && (name.starts_with("andL") || name.starts_with("orR")) && std::isdigit(static_cast<unsigned char>(name.back()))) {
    node->aux.index = static_cast<unsigned>(name.back() - '0');
  }
  if (j.contains("principal") && !j["principal"].is_null()) {
    if (!j["principal"].is_string()) throw ProofFormatError("\"principal\" must be a formula string");
    node->principal = parse_formula(j["principal"].get<std::string>());
  }
  if (j.contains("aux") && j["aux"].is_object()) {
    const json& aux = j["aux"];
    if (aux.contains("i")) {
      if (!aux["i"].is_number_unsigned()) throw ProofFormatError("aux.i must be 1 or 2");
      node->aux.index = aux["i"].get<unsigned>();
    }
    if (aux.contains("leftAnte")) node->aux.left_ante = make_set(formulas_from_json(aux["leftAnte"], "aux.leftAnte"));
    if (aux.contains("leftSucc")) node->aux.left_succ = make_set(formulas_from_json(aux["leftSucc"], "aux.leftSucc"));
  }
  if (j.contains("premises")) {
    if (!j["premises"].is_array()) throw ProofFormatError("\"premises\" must be an array");
    for (const auto& q : j["premises"]) node->premises.push_back(proof_from_json(q));
  }
  return node;
}

Proof read_proof_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProofFormatError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ProofFormatError(path + ": " + e.what());
  }
  return proof_from_json(j);
}

void write_proof_file(const Proof& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ProofFormatError("cannot write " + path);
  out << proof_to_json(p).dump(2) << '\n';
}

}  // namespace nmodal
