#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ordmeas/fuzz.hpp"
#include "ordmeas/laws.hpp"

namespace {

using namespace ordmeas;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInputError = 2;

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

uint64_t default_seed(const std::optional<uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("ORDMEAS_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw error("ORDMEAS_SEED is not a number");
    }
  }
  return 42;
}

// Named measures can be positive or signed; commands resolve both.
struct MeasureRef {
  const PosMeasure* pos = nullptr;
  const SignedMeasure* sgn = nullptr;
};

MeasureRef find_measure(const InstanceFile& f, const std::string& name) {
  MeasureRef ref;
  if (auto it = f.pos_measures.find(name); it != f.pos_measures.end())
    ref.pos = &it->second;
  else if (auto it2 = f.signed_measures.find(name); it2 != f.signed_measures.end())
    ref.sgn = &it2->second;
  else
    throw error("unknown measure: " + name);
  return ref;
}

SignedMeasure to_signed(const MeasureRef& m) {
  return m.pos ? as_signed(*m.pos) : *m.sgn;
}

int cmd_eval(const InstanceFile& f, const std::string& name, const std::string& expr,
             bool json) {
  const MeasureRef m = find_measure(f, name);
  const MeasSet set = parse_set_expression(f.space, expr);
  const ExtElement value = m.pos ? m.pos->eval(set) : ExtElement(m.sgn->eval(set));
  if (json)
    std::cout << to_json(value).dump() << "\n";
  else
    std::cout << to_string(value) << "\n";
  return kExitOk;
}

int cmd_op(const InstanceFile& f, const std::string& op, const std::string& a,
           const std::string& b, bool json) {
  (void)json;  // measure results are printed in their canonical JSON form
  const MeasureRef ma = find_measure(f, a);
  if (op == "abs") {
    std::cout << to_json(ma.pos ? *ma.pos : abs_measure(*ma.sgn)).dump() << "\n";
    return kExitOk;
  }
  if (op == "norm") {
    const Rational n = ma.pos ? measure_norm(f.norm, *ma.pos) : measure_norm(f.norm, *ma.sgn);
    std::cout << to_string(n) << "\n";
    return kExitOk;
  }
  if (b.empty()) throw error("op " + op + " needs two measure names");
  const MeasureRef mb = find_measure(f, b);
  if (ma.pos && mb.pos) {
    const PosMeasure result = op == "join" ? join(*ma.pos, *mb.pos) : meet(*ma.pos, *mb.pos);
    std::cout << to_json(result).dump() << "\n";
    return kExitOk;
  }
  const SignedMeasure result = op == "join" ? join(to_signed(ma), to_signed(mb))
                                            : meet(to_signed(ma), to_signed(mb));
  std::cout << to_json(result).dump() << "\n";
  return kExitOk;
}

int cmd_integrate(const InstanceFile& f, const std::string& fname,
                  const std::string& mname, bool json) {
  const auto it = f.functions.find(fname);
  if (it == f.functions.end()) throw error("unknown function: " + fname);
  const SimpleFunction& fn = it->second;
  const MeasureRef m = find_measure(f, mname);
  ExtElement value{LatticeElement::zero(f.dim)};
  if (m.pos && fn.is_nonneg())
    value = integrate_pos(fn, *m.pos);
  else if (m.pos)
    value = ExtElement(integrate(fn, *m.pos));
  else
    value = ExtElement(integrate(fn, *m.sgn));
  if (json)
    std::cout << to_json(value).dump() << "\n";
  else
    std::cout << to_string(value) << "\n";
  return kExitOk;
}

int cmd_represent(const InstanceFile& f, const std::string& mode,
                  const std::vector<std::string>& names, bool json) {
  (void)json;
  if (mode == "to-measure") {
    if (names.size() != 1) throw error("represent to-measure needs one operator name");
    const auto it = f.operators.find(names[0]);
    if (it == f.operators.end()) throw error("unknown operator: " + names[0]);
    const RegularOperator& t = it->second;
    if (!t.space().is_finite() && !is_zero(t.tail_column()))
      std::cout << to_json(operator_to_pos_measure(t)).dump() << "\n";
    else
      std::cout << to_json(operator_to_measure(t)).dump() << "\n";
    return kExitOk;
  }
  if (mode == "to-operator") {
    if (names.size() != 1) throw error("represent to-operator needs one measure name");
    const MeasureRef m = find_measure(f, names[0]);
    const RegularOperator t =
        m.pos ? measure_to_operator(*m.pos) : measure_to_operator(*m.sgn);
    std::cout << to_json(t).dump() << "\n";
    return kExitOk;
  }
  if (mode != "check") throw error("represent mode must be to-measure, to-operator, or check");
  if (!f.space.is_finite())
    throw error("represent check runs on finite-space instance files");
  std::vector<std::string> ops;
  if (names.empty()) {
    for (const auto& [name, t] : f.operators) ops.push_back(name);
  } else {
    ops = names;
  }
  if (ops.empty()) throw error("no operators to check");
  Json results = Json::array();
  bool all_pass = true;
  for (size_t i = 0; i < ops.size(); ++i) {
    const auto it = f.operators.find(ops[i]);
    if (it == f.operators.end()) throw error("unknown operator: " + ops[i]);
    const auto jt = f.operators.find(ops[(i + 1) % ops.size()]);
    const ReprCheckReport r = isomorphism_check(it->second, jt->second, f.norm);
    all_pass = all_pass && r.all_ok();
    results.push_back(Json{{"operator", ops[i]},
                           {"paired_with", jt->first},
                           {"roundtrip", r.roundtrip_ok},
                           {"bipositive", r.bipositive_ok},
                           {"isometry", r.isometry_ok},
                           {"lattice_hom", r.lattice_hom_ok},
                           {"witness", r.witness}});
  }
  std::cout << Json{{"ok", all_pass}, {"checks", std::move(results)}}.dump(2) << "\n";
  return all_pass ? kExitOk : kExitViolation;
}

int cmd_laws(const std::optional<std::string>& file, bool builtin, const std::string& suite,
             const std::optional<uint64_t>& seed_flag, bool json) {
  if (file.has_value() == builtin)
    throw error("laws needs exactly one of --file and --builtin");
  LawOptions opt;
  opt.seed = default_seed(seed_flag);
  InstanceFile parsed;
  if (file) {
    parsed = load_instance(*file);
    opt.file = &parsed;
  }
  const auto reports = run_suites(suite, opt);
  if (json)
    std::cout << to_json(reports, opt.seed).dump(2) << "\n";
  else
    std::cout << report_text(reports);
  return all_ok(reports) ? kExitOk : kExitViolation;
}

int cmd_fuzz(const std::optional<uint64_t>& seed_flag, uint64_t cases, size_t dim,
             size_t atoms, bool json) {
  if (cases < 1) throw error("fuzz needs --cases >= 1");
  if (dim < 1 || dim > 4) throw error("fuzz dimension bound must be in 1..4");
  if (atoms < 1 || atoms > 5) throw error("fuzz atom bound must be in 1..5");
  FuzzOptions opt;
  opt.seed = default_seed(seed_flag);
  opt.cases = cases;
  opt.max_dim = dim;
  opt.max_atoms = atoms;
  const FuzzReport report = run_fuzz(opt);
  if (json)
    std::cout << report.to_json_report().dump(2) << "\n";
  else
    std::cout << report.to_text();
  return report.ok() ? kExitOk : kExitViolation;
}

int cmd_counterexamples(bool json) {
  const CounterexampleReport report = counterexample_report();
  if (json)
    std::cout << to_json(report).dump(2) << "\n";
  else
    std::cout << report.to_text();
  return report.all_pass() ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lattice-valued measures, order integrals, and their operator representations"};
  app.require_subcommand(1);

  std::string file_path;
  std::string name_a, name_b, expr, suite = "all", op_mode, repr_mode;
  std::vector<std::string> names;
  std::optional<uint64_t> seed;
  uint64_t cases = 100;
  size_t dim_bound = 4, atom_bound = 5;
  bool json = false, builtin = false;

  auto* eval = app.add_subcommand("eval", "Evaluate a measure on a set expression");
  eval->add_option("measure", name_a)->required();
  eval->add_option("set", expr, "e.g. \"a1+a3\" or \"cofin:[]\"");
  eval->add_option("--file", file_path)->required();
  eval->add_flag("--json", json);

  auto* op = app.add_subcommand("op", "Lattice operations on measures");
  op->add_option("operation", op_mode, "join|meet|abs|norm")->required();
  op->add_option("first", name_a)->required();
  op->add_option("second", name_b);
  op->add_option("--file", file_path)->required();
  op->add_flag("--json", json);

  auto* integrate = app.add_subcommand("integrate", "Order integral of a function");
  integrate->add_option("function", name_a)->required();
  integrate->add_option("measure", name_b)->required();
  integrate->add_option("--file", file_path)->required();
  integrate->add_flag("--json", json);

  auto* represent = app.add_subcommand("represent", "Operator/measure representation");
  represent->add_option("mode", repr_mode, "to-measure|to-operator|check")->required();
  represent->add_option("names", names);
  represent->add_option("--file", file_path)->required();
  represent->add_flag("--json", json);

  auto* laws = app.add_subcommand("laws", "Run the law suites");
  laws->add_option("--file", file_path);
  laws->add_flag("--builtin", builtin);
  laws->add_option("--suite", suite, "lattice|measures|integral|operators|repr|all");
  laws->add_option("--seed", seed);
  laws->add_flag("--json", json);

  auto* fuzz = app.add_subcommand("fuzz", "Seeded randomized law checking");
  fuzz->add_option("--seed", seed);
  fuzz->add_option("--cases", cases);
  fuzz->add_option("--dim", dim_bound);
  fuzz->add_option("--atoms", atom_bound);
  fuzz->add_flag("--json", json);

  auto* counter = app.add_subcommand("counterexamples", "Reproduce the counterexamples");
  counter->add_flag("--json", json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (eval->parsed()) return cmd_eval(load_instance(file_path), name_a, expr, json);
    if (op->parsed()) {
      if (op_mode != "join" && op_mode != "meet" && op_mode != "abs" && op_mode != "norm")
        throw error("op must be join, meet, abs, or norm");
      return cmd_op(load_instance(file_path), op_mode, name_a, name_b, json);
    }
    if (integrate->parsed())
      return cmd_integrate(load_instance(file_path), name_a, name_b, json);
    if (represent->parsed())
      return cmd_represent(load_instance(file_path), repr_mode, names, json);
    if (laws->parsed())
      return cmd_laws(file_path.empty() ? std::nullopt : std::make_optional(file_path),
                      builtin, suite, seed, json);
    if (fuzz->parsed()) return cmd_fuzz(seed, cases, dim_bound, atom_bound, json);
    if (counter->parsed()) return cmd_counterexamples(json);
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
