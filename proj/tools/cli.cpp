#include "cli.hpp"

#include <chrono>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "t3d/birat.hpp"
#include "t3d/kmat.hpp"
#include "t3d/rmat.hpp"
#include "t3d/verify.hpp"

namespace t3d::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string mode;  // empty: command default
  std::optional<int> trunc;
  int jobs = 1;
  std::string format = "json";
  std::uint64_t seed = 20240601;
  bool timing = true;
  std::string in, out, state;
  std::string base = "q";
  std::string strategy = "sampled";
  int samples = 32;
  std::optional<int> bound;
};

struct Report {
  std::string command;
  json inputs = json::object();
  std::string mode;
  bool pass = true;
  long lhs = 0;
  long rhs = 0;
  double elapsed_ms = 0;
  std::vector<std::string> details;
  json extra = json::object();
};

json poly_json(const LaurentPoly& p) {
  json arr = json::array();
  for (const auto& t : p.terms()) arr.push_back(json::array({t.exp, t.coef.to_string()}));
  return arr;
}

std::vector<int> parse_tuple(const std::string& text, std::size_t arity, const char* what) {
  if (text.empty()) throw UsageError(std::string("missing ") + what);
  std::vector<int> v;
  try {
    v = parse_state(text).to_vector();
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
  if (v.size() != arity) {
    throw UsageError(std::string(what) + " needs " + std::to_string(arity) + " entries, got " + std::to_string(v.size()));
  }
  return v;
}

OccState parse_state_arg(const std::string& text, const char* fallback) {
  try {
    return parse_state(text.empty() ? fallback : text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--state: ") + e.what());
  }
}

Mode parse_mode(const RunConfig& cfg, Mode fallback) {
  Mode m = fallback;
  if (cfg.mode == "quantum") m = Mode::Quantum;
  else if (cfg.mode == "comb") m = Mode::Comb;
  else if (cfg.mode == "truncated") m = Mode::Truncated;
  else if (cfg.mode.empty() && cfg.trunc) m = Mode::Truncated;
  else if (!cfg.mode.empty()) throw UsageError("unknown mode '" + cfg.mode + "'");
  if (cfg.trunc && m != Mode::Truncated) throw UsageError("--trunc needs --mode truncated");
  return m;
}

void reject_mode_flags(const RunConfig& cfg, const std::string& cmd) {
  if (cfg.trunc) throw UsageError("--trunc does not apply to " + cmd);
  if (!cfg.mode.empty() && cfg.mode != "quantum") throw UsageError("--mode " + cfg.mode + " does not apply to " + cmd);
}

// ---------------------------------------------------------------------------
// Commands

Report cmd_r_elem(const RunConfig& cfg) {
  reject_mode_flags(cfg, "r-elem");
  Report rep;
  rep.command = "r-elem";
  rep.mode = "quantum";
  const auto in = parse_tuple(cfg.in, 3, "--in");
  if (cfg.base != "q" && cfg.base != "q2") throw UsageError("--base must be q or q2");
  const bool doubled = cfg.base == "q2";
  rep.inputs = {{"in", in}, {"base", cfg.base}};
  json elems = json::array();
  auto add = [&](const std::vector<int>& out, const LaurentPoly& v) {
    if (!v.is_zero()) ++rep.lhs;
    elems.push_back({{"out", out}, {"value", poly_json(v)}, {"text", v.to_string()}});
  };
  if (!cfg.out.empty()) {
    const auto out = parse_tuple(cfg.out, 3, "--out");
    rep.inputs["out"] = out;
    const RIndex x{in[0], in[1], in[2], out[0], out[1], out[2]};
    add(out, doubled ? s_elem(x) : r_elem(x));
  } else {
    for (const auto& [o, v] : r_column({in[0], in[1], in[2]}, doubled)) add({o.begin(), o.end()}, v);
  }
  rep.rhs = rep.lhs;
  rep.extra["elements"] = std::move(elems);
  return rep;
}

Report cmd_k_elem(const RunConfig& cfg) {
  reject_mode_flags(cfg, "k-elem");
  Report rep;
  rep.command = "k-elem";
  rep.mode = "quantum";
  const auto in = parse_tuple(cfg.in, 4, "--in");
  rep.inputs = {{"in", in}};
  json elems = json::array();
  auto add = [&](const std::vector<int>& out, const LaurentPoly& v) {
    if (!v.is_zero()) ++rep.lhs;
    elems.push_back({{"out", out}, {"value", poly_json(v)}, {"text", v.to_string()}});
  };
  if (!cfg.out.empty()) {
    const auto out = parse_tuple(cfg.out, 4, "--out");
    rep.inputs["out"] = out;
    add(out, k_elem({in[0], in[1], in[2], in[3], out[0], out[1], out[2], out[3]}));
  } else {
    for (const auto& [o, v] : k_column({in[0], in[1], in[2], in[3]})) add({o.begin(), o.end()}, v);
  }
  rep.rhs = rep.lhs;
  rep.extra["elements"] = std::move(elems);
  return rep;
}

Report cmd_comb(const RunConfig& cfg, bool is_r) {
  Report rep;
  rep.command = is_r ? "comb-r" : "comb-k";
  if (cfg.trunc || (!cfg.mode.empty() && cfg.mode != "comb")) throw UsageError(rep.command + " only runs in comb mode");
  rep.mode = "comb";
  const auto in = parse_tuple(cfg.in, is_r ? 3 : 4, "--in");
  rep.inputs = {{"in", in}};
  std::vector<int> out;
  if (is_r) {
    const Triple t = comb_r({in[0], in[1], in[2]});
    out.assign(t.begin(), t.end());
  } else {
    const Quad t = comb_k({in[0], in[1], in[2], in[3]});
    out.assign(t.begin(), t.end());
  }
  rep.lhs = rep.rhs = 1;
  rep.extra["out"] = out;
  rep.details.push_back("image " + ket_string(OccState(std::span<const int>(out))));
  return rep;
}

Report cmd_verify_equation(const RunConfig& cfg, const std::string& which) {
  Report rep;
  rep.command = "verify " + which;
  const EquationSpec* eq = nullptr;
  const char* fallback = nullptr;
  std::string default_state;
  Mode fallback_mode = Mode::Quantum;
  if (which == "te") {
    eq = &tetrahedron_spec();
    fallback = "314516";
  } else if (which == "rc") {
    eq = &reflection_c_spec();
    fallback = "211034212";
  } else if (which == "rb") {
    eq = &reflection_b_spec();
    fallback = "112111111";
  } else {
    eq = &f4_spec();
    default_state = ket_string(f4_reference_state());
    fallback = default_state.c_str();
    fallback_mode = Mode::Truncated;
  }
  const Mode mode = parse_mode(cfg, fallback_mode);
  const OccState state = parse_state_arg(cfg.state, fallback);
  if (state.size() != eq->slots()) {
    throw UsageError("--state needs " + std::to_string(eq->slots()) + " entries for " + which);
  }
  const int trunc = cfg.trunc.value_or(6);
  if (trunc < 1) throw UsageError("--trunc must be positive");
  const VerifyReport v = verify_equation(*eq, state, mode, cfg.jobs, trunc);
  rep.inputs = {{"state", state.to_vector()}, {"ket", ket_string(state)}, {"signature", eq->signature.to_string()}};
  rep.mode = to_string(mode);
  if (mode == Mode::Truncated) rep.inputs["trunc"] = trunc;
  rep.pass = v.pass;
  rep.lhs = static_cast<long>(v.lhs_count);
  rep.rhs = static_cast<long>(v.rhs_count);
  rep.details = v.details;
  if (mode == Mode::Comb) {
    rep.extra["lhs_chain"] = v.lhs_chain;
    rep.extra["rhs_chain"] = v.rhs_chain;
    rep.details.push_back("final " + v.lhs_chain.back());
  } else {
    rep.extra["terms"] = {{"lhs", v.lhs_terms}, {"rhs", v.rhs_terms}};
    rep.details.push_back("monomials " + std::to_string(v.lhs_count));
  }
  return rep;
}

void absorb(Report& rep, const CheckReport& c) {
  rep.pass = rep.pass && c.pass;
  rep.lhs += 1;
  if (c.pass) rep.rhs += 1;
  rep.details.push_back(c.name + ": " + (c.pass ? "pass" : "FAIL") + " (" + std::to_string(c.checked) + " checked)");
  for (const auto& d : c.details) rep.details.push_back("  " + d);
}

Report cmd_suites(const RunConfig& cfg) {
  reject_mode_flags(cfg, "verify suites");
  Report rep;
  rep.command = "verify suites";
  rep.mode = "quantum";
  const int bound = cfg.bound.value_or(3);
  if (bound < 0) throw UsageError("--bound must be nonnegative");
  rep.inputs = {{"bound", bound}};
  for (const auto& c : verify_suites(bound, cfg.jobs)) absorb(rep, c);
  rep.extra["counts_meaning"] = "lhs: checks run, rhs: checks passed";
  return rep;
}

Report cmd_intertwining(const RunConfig& cfg) {
  reject_mode_flags(cfg, "verify intertwining");
  Report rep;
  rep.command = "verify intertwining";
  rep.mode = "quantum";
  const int bound = cfg.bound.value_or(2);
  if (bound < 0) throw UsageError("--bound must be nonnegative");
  rep.inputs = {{"bound", bound}};
  for (const auto& rel : intertwining_relations()) absorb(rep, check_intertwining(rel.r, rel.s, bound, cfg.jobs));
  rep.extra["counts_meaning"] = "lhs: relations checked, rhs: relations passed";
  return rep;
}

Report cmd_birational(const RunConfig& cfg) {
  reject_mode_flags(cfg, "verify birational");
  Report rep;
  rep.command = "verify birational";
  rep.mode = "birational";
  if (cfg.strategy != "sampled" && cfg.strategy != "symbolic") throw UsageError("--strategy must be sampled or symbolic");
  if (cfg.samples < 1) throw UsageError("--samples must be positive");
  const int bound = cfg.bound.value_or(6);
  if (bound < 1) throw UsageError("--bound must be at least 1");
  rep.inputs = {{"strategy", cfg.strategy}, {"samples", cfg.samples}, {"seed", cfg.seed}, {"bound", bound}};
  std::vector<BiratReport> reps = check_matrix_identities();
  reps.push_back(verify_birational_equations(BirEquation::Tetrahedron, BirStrategy::Symbolic));
  reps.push_back(verify_birational_equations(BirEquation::Tetrahedron, BirStrategy::Sampled, cfg.samples, cfg.seed, cfg.jobs));
  reps.push_back(verify_birational_equations(BirEquation::Reflection, BirStrategy::Sampled, cfg.samples, cfg.seed, cfg.jobs));
  if (cfg.strategy == "symbolic") {
    reps.push_back(verify_birational_equations(BirEquation::Reflection, BirStrategy::Symbolic));
  }
  reps.push_back(tropicalize_and_compare(BirMap::R, bound));
  reps.push_back(tropicalize_and_compare(BirMap::K, bound));
  for (const auto& r : reps) {
    rep.pass = rep.pass && r.pass;
    rep.lhs += 1;
    if (r.pass) rep.rhs += 1;
    rep.details.push_back(r.name + " [" + r.strategy + "]: " + (r.pass ? "pass" : "FAIL"));
  }
  json checks = json::parse(reports_to_json(reps));
  if (!cfg.timing)
    for (auto& c : checks) c["elapsed_ms"] = 0;
  rep.extra["checks"] = std::move(checks);
  rep.extra["counts_meaning"] = "lhs: checks run, rhs: checks passed";
  return rep;
}

// ---------------------------------------------------------------------------
// Output

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void emit(const Report& rep, const std::string& format, std::ostream& out) {
  if (format == "json") {
    json j{{"command", rep.command},
           {"inputs", rep.inputs},
           {"mode", rep.mode},
           {"pass", rep.pass},
           {"counts", {{"lhs", rep.lhs}, {"rhs", rep.rhs}}},
           {"elapsed_ms", rep.elapsed_ms},
           {"details", rep.details}};
    for (const auto& [k, v] : rep.extra.items()) j[k] = v;
    out << j.dump(2) << '\n';
  } else if (format == "csv") {
    std::string details;
    for (const auto& d : rep.details) details += (details.empty() ? "" : "; ") + d;
    out << "command,inputs,mode,pass,lhs,rhs,elapsed_ms,details\n";
    out << csv_field(rep.command) << ',' << csv_field(rep.inputs.dump()) << ',' << rep.mode << ','
        << (rep.pass ? "true" : "false") << ',' << rep.lhs << ',' << rep.rhs << ',' << rep.elapsed_ms << ','
        << csv_field(details) << '\n';
  } else {
    out << rep.command << " " << rep.inputs.dump() << '\n';
    out << "mode: " << rep.mode << '\n';
    out << "result: " << (rep.pass ? "pass" : "FAIL") << '\n';
    out << "counts: lhs=" << rep.lhs << " rhs=" << rep.rhs << '\n';
    out << "elapsed_ms: " << rep.elapsed_ms << '\n';
    for (const auto& d : rep.details) out << "  " << d << '\n';
    if (rep.extra.contains("elements")) {
      for (const auto& e : rep.extra["elements"]) out << "  " << e["out"].dump() << ": " << e["text"].get<std::string>() << '\n';
    }
    if (rep.extra.contains("lhs_chain")) {
      for (const char* side : {"lhs_chain", "rhs_chain"}) {
        std::string chain;
        for (const auto& s : rep.extra[side]) chain += (chain.empty() ? "" : " -> ") + s.get<std::string>();
        out << "  " << side << ": " << chain << '\n';
      }
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Quantum, combinatorial and birational 3D R and K"};
  app.name("t3d");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--mode", cfg.mode, "quantum, comb or truncated")->check(CLI::IsMember({"quantum", "comb", "truncated"}));
  app.add_option("--trunc", cfg.trunc, "work modulo q^N (truncated mode)");
  app.add_option("--jobs", cfg.jobs, "worker threads")->envname("T3D_JOBS")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--seed", cfg.seed, "seed for sampled birational checks");
  app.add_flag("!--no-timing", cfg.timing, "report elapsed_ms as 0 for reproducible output");

  auto* r_elem_cmd = app.add_subcommand("r-elem", "elements of R (or S with --base q2)");
  r_elem_cmd->add_option("--in", cfg.in, "i,j,k")->required();
  r_elem_cmd->add_option("--out", cfg.out, "a,b,c; omit for the whole column");
  r_elem_cmd->add_option("--base", cfg.base, "q or q2");
  auto* k_elem_cmd = app.add_subcommand("k-elem", "elements of K");
  k_elem_cmd->add_option("--in", cfg.in, "a,i,b,j")->required();
  k_elem_cmd->add_option("--out", cfg.out, "c,m,d,n; omit for the whole column");
  auto* comb_r_cmd = app.add_subcommand("comb-r", "combinatorial R");
  comb_r_cmd->add_option("--in", cfg.in, "i,j,k")->required();
  auto* comb_k_cmd = app.add_subcommand("comb-k", "combinatorial K");
  comb_k_cmd->add_option("--in", cfg.in, "a,i,b,j")->required();

  auto* verify = app.add_subcommand("verify", "equation and structure checks");
  verify->require_subcommand(1);
  verify->fallthrough();
  std::vector<std::pair<std::string, CLI::App*>> eqs;
  for (const char* name : {"te", "rc", "rb", "f4"}) {
    auto* sub = verify->add_subcommand(name);
    sub->add_option("--state", cfg.state, "occupation numbers, e.g. 3,1,4,5,1,6 or 314516");
    eqs.emplace_back(name, sub);
  }
  eqs[0].second->description("tetrahedron equation");
  eqs[1].second->description("3D reflection equation, type C");
  eqs[2].second->description("3D reflection equation, type B");
  eqs[3].second->description("F4 relation");
  auto* suites = verify->add_subcommand("suites", "structure checks on R and K");
  suites->add_option("--bound", cfg.bound, "largest index (default 3)");
  auto* inter = verify->add_subcommand("intertwining", "oscillator relations satisfied by K");
  inter->add_option("--bound", cfg.bound, "largest index (default 2)");
  auto* birational = verify->add_subcommand("birational", "birational and tropical layer");
  birational->add_option("--strategy", cfg.strategy, "sampled or symbolic");
  birational->add_option("--samples", cfg.samples, "sample points (default 32)");
  birational->add_option("--bound", cfg.bound, "tropical grid bound (default 6)");

  std::vector<std::string> argv_store{"t3d"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  const auto t0 = Clock::now();
  Report rep;
  try {
    if (r_elem_cmd->parsed()) rep = cmd_r_elem(cfg);
    else if (k_elem_cmd->parsed()) rep = cmd_k_elem(cfg);
    else if (comb_r_cmd->parsed()) rep = cmd_comb(cfg, true);
    else if (comb_k_cmd->parsed()) rep = cmd_comb(cfg, false);
    else if (suites->parsed()) rep = cmd_suites(cfg);
    else if (inter->parsed()) rep = cmd_intertwining(cfg);
    else if (birational->parsed()) rep = cmd_birational(cfg);
    else
      for (const auto& [name, sub] : eqs)
        if (sub->parsed()) rep = cmd_verify_equation(cfg, name);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFail;
  }
  rep.elapsed_ms =
      cfg.timing ? std::chrono::duration<double, std::milli>(Clock::now() - t0).count() : 0.0;
  emit(rep, cfg.format, out);
  return rep.pass ? kPass : kFail;
}

}  // namespace t3d::cli
