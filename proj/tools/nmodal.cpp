#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nmodal/calculus.hpp"
#include "nmodal/cutelim.hpp"
#include "nmodal/interp.hpp"
#include "nmodal/prop18n.hpp"
#include "nmodal/proof_json.hpp"
#include "nmodal/prover.hpp"
#include "nmodal/ulip.hpp"

using nlohmann::json;
using namespace nmodal;

namespace {

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kError = 2;

struct Options {
  std::string logic;
  std::string format = "text";
  std::size_t budget = kDefaultBudget;

  std::string sequent;
  std::string proof_out;
  std::string mode = "lyndon";
  std::string phi;
  std::string psi;
  std::string ppos;
  std::string pneg;
  std::string dir;
  std::string input;
  std::string output;

  bool json() const { return format == "json"; }
};

json report_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"header", r.header}, {"ok", r.ok()}, {"checks", checks}};
}

int cmd_prove(const Options& o) {
  LogicId logic = LogicId::parse(o.logic);
  Sequent s = parse_sequent(o.sequent);
  Prover prover(logic, o.budget);
  Proof p = prover.prove(s);
  if (p && !o.proof_out.empty()) write_proof_file(p, o.proof_out);
  if (o.json()) {
    json out = {{"logic", logic.to_string()}, {"sequent", to_string(s)}, {"provable", p != nullptr}};
    if (p) out["proof"] = proof_to_json(p);
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << (p ? "provable" : "unprovable") << '\n';
    if (p) std::cout << "cut-free proof: " << proof_size(p) << " nodes, height " << proof_height(p) << '\n';
  }
  return p ? kOk : kNo;
}

int cmd_interpolate(const Options& o) {
  LogicId logic = LogicId::parse(o.logic);
  Formula phi = parse_formula(o.phi), psi = parse_formula(o.psi);
  Prover prover(logic, o.budget);
  Formula chi = Formula::bot();
  try {
    chi = lyndon_interpolant(phi, psi, prover);
  } catch (const NotProvable& e) {
    if (o.json()) {
      std::cout << json{{"logic", logic.to_string()}, {"provable", false}}.dump(2) << '\n';
    } else {
      std::cout << "not provable: " << e.what() << '\n';
    }
    return kNo;
  }
  Report r = verify_interpolant(phi, psi, chi, prover, o.mode == "craig" ? InterpolationMode::Craig : InterpolationMode::Lyndon);
  if (o.json()) {
    std::cout << json{{"logic", logic.to_string()}, {"provable", true}, {"mode", o.mode}, {"interpolant", to_string(chi)},
                      {"report", report_json(r)}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << to_string(chi) << '\n' << r.to_text();
  }
  return r.ok() ? kOk : kError;
}

int cmd_uniform(const Options& o) {
  LogicId logic = LogicId::parse(o.logic);
  Formula phi = parse_formula(o.phi);
  ForbiddenSets forbidden{parse_atom_list(o.ppos), parse_atom_list(o.pneg)};
  Translator tr(logic, o.budget);
  Formula chi = modal_post_interpolant(phi, forbidden, tr);
  // The pool: every allowed clause over the translated vocabulary.
  const Formula fl = tr.flat(phi);
  std::vector<Formula> pool;
  for (const auto& c : allowed_clauses(fl, quote_forbidden(fl, forbidden), 256)) pool.push_back(std_subst(c.to_formula()));
  Report r = verify_post_interpolant(phi, chi, forbidden, pool, tr.prover());
  if (o.json()) {
    std::cout << json{{"logic", logic.to_string()}, {"post_interpolant", to_string(chi)}, {"report", report_json(r)}}.dump(2)
              << '\n';
  } else {
    std::cout << to_string(chi) << '\n' << r.to_text();
  }
  return r.ok() ? kOk : kError;
}

int cmd_translate(const Options& o) {
  LogicId logic = LogicId::parse(o.logic);
  Formula phi = parse_formula(o.phi);
  Translator tr(logic, o.budget);
  Formula out = tr.translate(phi, o.dir == "sharp" ? Direction::Sharp : Direction::Flat);
  if (o.json()) {
    std::cout << json{{"logic", logic.to_string()}, {"direction", o.dir}, {"formula", to_string(phi)}, {"translation", to_string(out)}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << to_string(out) << '\n';
  }
  return kOk;
}

std::string path_text(const std::vector<std::size_t>& path) {
  std::string out = "root";
  for (auto i : path) out += "." + std::to_string(i);
  return out;
}

int cmd_check(const Options& o) {
  LogicId logic = LogicId::parse(o.logic);
  Proof p = read_proof_file(o.input);
  CheckResult res = check_proof(p, logic);
  if (o.json()) {
    json out = {{"logic", logic.to_string()}, {"valid", res.valid()}, {"conclusion", to_string(p->conclusion)}};
    if (!res) {
      out["error"] = check_error_name(res.error);
      out["path"] = res.path;
      out["detail"] = res.detail;
    }
    std::cout << out.dump(2) << '\n';
  } else if (res) {
    std::cout << "valid proof of " << to_string(p->conclusion) << '\n';
  } else {
    std::cout << "invalid: " << check_error_name(res.error) << " at " << path_text(res.path) << ": " << res.detail << '\n';
  }
  return res ? kOk : kNo;
}

int emit_proof(const Options& o, const Proof& p) {
  if (o.output.empty()) {
    std::cout << proof_to_json(p).dump(2) << '\n';
    return kOk;
  }
  write_proof_file(p, o.output);
  if (o.json()) {
    std::cout << json{{"output", o.output}, {"conclusion", to_string(p->conclusion)}, {"nodes", proof_size(p)}}.dump(2) << '\n';
  } else {
    std::cout << "wrote proof of " << to_string(p->conclusion) << " (" << proof_size(p) << " nodes) to " << o.output << '\n';
  }
  return kOk;
}

int cmd_elim_cut(const Options& o) {
  LogicId logic = LogicId::parse(o.logic);
  return emit_proof(o, eliminate_cuts(read_proof_file(o.input), logic));
}

int cmd_emulate(const Options& o) {
  LogicId logic = LogicId::parse(o.logic);
  Translator tr(logic, o.budget);
  return emit_proof(o, emulate(read_proof_file(o.input), tr));
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--logic", o.logic, "NA(m,n), N+A(m,n), NRA(m,n) or N")->required();
  sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--budget", o.budget, "prover node budget");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proof search, cut elimination, interpolation and propositionalization for NA(m,n), N+A(m,n), NRA(m,n)"};
  app.require_subcommand(1);
  Options o;

  auto* prove = app.add_subcommand("prove", "decide a sequent; exit 0 if provable, 1 if not");
  add_common(prove, o);
  prove->add_option("sequent", o.sequent, "e.g. \"box p => box box p\"")->required();
  prove->add_option("--proof", o.proof_out, "write the proof as JSON");

  auto* interp = app.add_subcommand("interpolate", "interpolant for phi -> psi");
  add_common(interp, o);
  interp->add_option("--mode", o.mode, "craig or lyndon")->check(CLI::IsMember({"craig", "lyndon"}));
  interp->add_option("phi", o.phi)->required();
  interp->add_option("psi", o.psi)->required();

  auto* uniform = app.add_subcommand("uniform", "post-interpolant of phi avoiding signed variables");
  add_common(uniform, o);
  uniform->add_option("phi", o.phi)->required();
  uniform->add_option("--ppos", o.ppos, "variables forbidden positively, comma separated");
  uniform->add_option("--pneg", o.pneg, "variables forbidden negatively, comma separated");

  auto* translate = app.add_subcommand("translate", "sharp or flat translation");
  add_common(translate, o);
  translate->add_option("--dir", o.dir, "sharp or flat")->required()->check(CLI::IsMember({"sharp", "flat"}));
  translate->add_option("phi", o.phi)->required();

  auto* check = app.add_subcommand("check-proof", "check a proof JSON file");
  add_common(check, o);
  check->add_option("file", o.input)->required();

  auto* elim = app.add_subcommand("elim-cut", "eliminate cuts from a proof JSON file");
  add_common(elim, o);
  elim->add_option("input", o.input)->required();
  elim->add_option("-o,--output", o.output, "output file (stdout if omitted)");

  auto* emu = app.add_subcommand("emulate", "LK proof of the translated end-sequent");
  add_common(emu, o);
  emu->add_option("input", o.input)->required();
  emu->add_option("-o,--output", o.output, "output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kError;
  }

  try {
    if (prove->parsed()) return cmd_prove(o);
    if (interp->parsed()) return cmd_interpolate(o);
    if (uniform->parsed()) return cmd_uniform(o);
    if (translate->parsed()) return cmd_translate(o);
    if (check->parsed()) return cmd_check(o);
    if (elim->parsed()) return cmd_elim_cut(o);
    if (emu->parsed()) return cmd_emulate(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
