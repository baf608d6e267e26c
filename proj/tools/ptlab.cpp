#include "ptlab/aset.hpp"
#include "ptlab/classify.hpp"
#include "ptlab/con_iter.hpp"
#include "ptlab/error.hpp"
#include "ptlab/g_ops.hpp"
#include "ptlab/gl.hpp"
#include "ptlab/godel.hpp"
#include "ptlab/sexpr.hpp"
#include "ptlab/suite.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace ptlab;
using nlohmann::json;
using ordinal::Ordinal;
namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << contents;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
}

// One S-expression per non-blank line; '#' starts a comment line.
std::vector<Formula> read_sentences(const std::string& path) {
  std::vector<Formula> out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    Formula f = parse_formula(line);
    if (!f.is_sentence()) throw PreconditionError("not a sentence: " + line);
    out.push_back(f);
  }
  return out;
}

Formula read_sentence(const std::string& path) {
  if (path.empty()) return top();
  Formula f = parse_formula(read_file(path));
  if (!f.is_sentence()) throw PreconditionError("not a sentence: " + path);
  return f;
}

aset::ASetRun build_run(const std::string& alpha, std::uint64_t budget, const std::string& enum_file,
                        const std::string& form = "auto") {
  aset::ASetConfig c;
  c.alpha = Ordinal::parse(alpha);
  c.budget = budget;
  if (!enum_file.empty()) c.enumeration = aset::Enumeration(read_sentences(enum_file));
  if (form == "unfolded")
    c.con_form = aset::ConForm::Unfolded;
  else if (form == "diagonal")
    c.con_form = aset::ConForm::Diagonal;
  else if (form != "auto")
    throw PreconditionError("unknown --con-form " + form);
  return aset::run_enumeration(c);
}

int verdict_exit(const Verdict& v, bool undecided_fails) {
  if (v.outcome == Outcome::Refuted) return 1;
  if (v.outcome == Outcome::Undecided) {
    std::cerr << "warning: undecided: " << v.claim << "\n";
    return undecided_fails ? 1 : 0;
  }
  return 0;
}

json formula_info(Formula f) {
  json j{{"sexp", print(f)}, {"sentence", f.is_sentence()}, {"dag_size", dag_size(f)}, {"tree_size", tree_size(f)}};
  if (f.is_sentence()) {
    j["class"] = classify(f).str();
    j["code"] = to_decimal(godel_encode(f));
  }
  return j;
}

struct RunFiles {
  std::vector<Formula> formulas;
  json events;
  std::size_t distinct_nodes = 0;
};

RunFiles load_run(const std::string& dir) {
  fs::path d(dir);
  if (!fs::is_directory(d)) throw Error("no run directory " + dir);
  if (!fs::exists(d / "formulas.sexp") || !fs::exists(d / "events.json"))
    throw Error("empty run directory " + dir + " (no formulas.sexp / events.json)");
  RunFiles r;
  std::size_t before = interned_node_count();
  std::istringstream in(read_file((d / "formulas.sexp").string()));
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) r.formulas.push_back(parse_formula(line));
  r.distinct_nodes = interned_node_count() - before;
  r.events = json::parse(read_file((d / "events.json").string()));
  if (r.formulas.empty() || r.events.empty()) throw Error("empty run in " + dir);
  if (r.formulas.size() != r.events.size()) throw Error("events.json and formulas.sexp disagree in " + dir);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ptlab: provability-logic and ordinal-iterated consistency laboratory"};
  app.require_subcommand(1);
  std::uint64_t seed = 0x5eed;
  app.add_option("--seed", seed, "seed for sampled checks");

  int exit_code = 0;

  // parse
  auto* parse = app.add_subcommand("parse", "parse a formula and print its canonical form");
  std::string parse_text, parse_file;
  bool parse_modal = false;
  parse->add_option("text", parse_text, "S-expression (or modal formula with --modal)");
  parse->add_option("--file", parse_file, "read the input from a file");
  parse->add_flag("--modal", parse_modal, "parse GL syntax instead");
  parse->callback([&] {
    std::string text = parse_file.empty() ? parse_text : read_file(parse_file);
    if (parse_modal) {
      gl::Modal m = gl::parse_modal(text);
      std::cout << json{{"text", gl::to_text(m)}, {"size", m.size()}, {"box_depth", m.box_depth()}}.dump(2) << "\n";
    } else {
      std::cout << formula_info(parse_formula(text)).dump(2) << "\n";
    }
  });

  // con-iter
  auto* con = app.add_subcommand("con-iter", "build Con^alpha(phi) from the Con* fixed point");
  std::string con_alpha = "1", con_phi, con_out;
  std::optional<std::uint64_t> con_unfold;
  con->add_option("--alpha", con_alpha, "ordinal in Cantor normal form, e.g. w*2+1");
  con->add_option("--phi", con_phi, "file holding the sentence phi (default top)");
  con->add_option("--unfold-finite", con_unfold, "also emit the finite unfolding Con^N(phi)");
  con->add_option("--out", con_out, "output file (default stdout)");
  con->callback([&] {
    Formula phi = read_sentence(con_phi);
    coniter::ConIterSentence c = coniter::con_iter(Ordinal::parse(con_alpha), phi);
    json j{{"con_iter", c.to_json()}, {"class", classify(c.rendered).str()}};
    if (con_unfold) j["unfold_finite"] = {{"n", *con_unfold}, {"formula", formula_info(coniter::unfold_finite(*con_unfold, phi))}};
    emit(j.dump(2) + "\n", con_out);
  });

  // gl prove
  auto* glc = app.add_subcommand("gl", "GL decision procedure");
  glc->require_subcommand(1);
  auto* prove = glc->add_subcommand("prove", "decide a GL formula; proof or countermodel as JSON");
  std::string prove_text;
  prove->add_option("formula", prove_text, "e.g. \"box(box p -> p) -> box p\"")->required();
  prove->callback([&] {
    gl::Modal f = gl::parse_modal(prove_text);
    Verdict v = gl::gl_prove(f).verdict("GL |- " + gl::to_text(f));
    std::cout << v.to_json().dump(2) << "\n";
    exit_code = v.established() ? 0 : 1;
  });

  // aset run
  auto* asetc = app.add_subcommand("aset", "staged enumeration of A_alpha");
  asetc->require_subcommand(1);
  auto* arun = asetc->add_subcommand("run", "run the enumeration and write the event log");
  std::string a_alpha = "0", a_enum, a_out, a_form = "auto";
  std::uint64_t a_budget = 3;
  arun->add_option("--alpha", a_alpha, "ordinal");
  arun->add_option("--budget", a_budget, "number of stages after stage 0");
  arun->add_option("--enum", a_enum, "enumeration prefix, one sentence per line");
  arun->add_option("--con-form", a_form, "auto, unfolded or diagonal");
  arun->add_option("--out", a_out, "output directory")->required();
  arun->callback([&] {
    aset::ASetRun run = build_run(a_alpha, a_budget, a_enum, a_form);
    fs::create_directories(a_out);
    std::string events = run.events_json().dump(2) + "\n";
    std::string formulas = run.formulas_sexp();
    std::string summary = run.summary_json().dump(2) + "\n";
    write_file(fs::path(a_out) / "events.json", events);
    write_file(fs::path(a_out) / "formulas.sexp", formulas);
    write_file(fs::path(a_out) / "summary.json", summary);
    suite::RunManifest m;
    m.config = {{"command", "aset run"},
                {"alpha", run.alpha.str()},
                {"budget", run.budget},
                {"con_form", a_form},
                {"enumeration_digest", suite::fnv_hex(std::to_string(run.enumeration_digest))},
                {"enum_file", a_enum}};
    m.add_file("events.json", events);
    m.add_file("formulas.sexp", formulas);
    m.add_file("summary.json", summary);
    m.timestamp = suite::utc_timestamp();
    write_file(fs::path(a_out) / "manifest.json", m.to_json().dump(2) + "\n");
    std::cout << run.nodes.size() << " sentences numerated through stage " << run.budget << "\n";
  });

  // g apply / g verify
  auto* gc = app.add_subcommand("g", "the operators g and g0");
  gc->require_subcommand(1);
  std::string g_alpha = "1", g_phi, g_enum;
  std::uint64_t g_budget = 2;
  bool g_warn = false;
  auto* gapply = gc->add_subcommand("apply", "render g(phi) and its truncation");
  gapply->add_option("--alpha", g_alpha, "ordinal");
  gapply->add_option("--phi", g_phi, "file holding phi (default top)");
  gapply->add_option("--budget", g_budget, "truncation stage");
  gapply->add_option("--enum", g_enum, "enumeration prefix file");
  gapply->callback([&] {
    Formula phi = read_sentence(g_phi);
    auto run = std::make_shared<const aset::ASetRun>(build_run(g_alpha, g_budget, g_enum));
    gops::GOperator op = gops::make_g(run);
    Formula g = gops::apply_g(op, phi);
    json j{{"alpha", op.alpha.str()}, {"phi", print(phi)}, {"g", formula_info(g)}};
    if (op.alpha.is_finite())
      j["truncation"] = {{"budget", g_budget}, {"formula", formula_info(gops::truncate_g(op, phi, g_budget))}};
    std::cout << j.dump(2) << "\n";
  });

  auto* gverify = gc->add_subcommand("verify", "verify instances of the characterizations");
  gverify->require_subcommand(1);
  auto* thm41 = gverify->add_subcommand("thm41", "g(theta) against Con^alpha(theta) for a numerated theta");
  int t_dir = 1;
  std::string t_theta;
  thm41->add_option("--dir", t_dir, "1: theta a member; 2: phi = theta and Con^alpha(theta)")
      ->check(CLI::IsMember({1, 2}));
  thm41->add_option("--alpha", g_alpha, "ordinal");
  thm41->add_option("--budget", g_budget, "run and truncation stage");
  thm41->add_option("--theta", t_theta, "file holding a numerated sentence (default top)");
  thm41->add_option("--enum", g_enum, "enumeration prefix file");
  thm41->add_flag("--undecided-warn", g_warn, "exit 0 on undecided");
  thm41->callback([&] {
    Formula theta = read_sentence(t_theta);
    gops::GOperator op = gops::make_g(std::make_shared<const aset::ASetRun>(build_run(g_alpha, g_budget, g_enum)));
    Verdict v = t_dir == 1 ? gops::verify_thm41_dir1(op, theta, g_budget) : gops::verify_thm41_dir2(op, theta, g_budget);
    std::cout << v.to_json().dump(2) << "\n";
    exit_code = verdict_exit(v, !g_warn);
  });
  auto* p51 = gverify->add_subcommand("prop51", "Con(phi) against g0(phi) over an A_0 run");
  p51->add_option("--budget", g_budget, "run and truncation stage");
  p51->add_option("--enum", g_enum, "enumeration prefix file");
  p51->add_flag("--undecided-warn", g_warn, "exit 0 on undecided");
  p51->callback([&] {
    aset::ASetRun run = build_run("0", g_budget, g_enum);
    Verdict v = gops::verify_prop51(run, g_budget);
    std::cout << v.to_json().dump(2) << "\n";
    exit_code = verdict_exit(v, !g_warn);
  });

  // suite
  auto* suitec = app.add_subcommand("suite", "run a named group of acceptance checks");
  std::string s_name, s_out, s_manifest, s_undecided = "fail";
  std::optional<std::uint64_t> s_budget;
  std::string names;
  for (const auto& n : suite::suite_names()) names += (names.empty() ? "" : ", ") + n;
  suitec->add_option("name", s_name, names)->required();
  suitec->add_option("--budget", s_budget, "override the suite's default budget");
  suitec->add_option("--undecided", s_undecided, "warn or fail")->check(CLI::IsMember({"warn", "fail"}));
  suitec->add_option("--out", s_out, "report file (default stdout)");
  suitec->add_option("--manifest", s_manifest, "also write a run manifest");
  suitec->callback([&] {
    suite::SuiteConfig c;
    c.seed = seed;
    c.budget = s_budget;
    c.undecided_fails = s_undecided == "fail";
    suite::SuiteReport r = suite::run_suite(s_name, c);
    std::string report = r.to_json().dump(2) + "\n";
    emit(report, s_out);
    if (!s_manifest.empty()) {
      suite::RunManifest m;
      m.config = {{"command", "suite"}, {"suite", s_name}, {"config", r.config}};
      m.add_file(s_out.empty() ? "stdout" : fs::path(s_out).filename().string(), report);
      m.timestamp = suite::utc_timestamp();
      write_file(s_manifest, m.to_json().dump(2) + "\n");
    }
    std::size_t und = r.count(Outcome::Undecided);
    if (und) std::cerr << "warning: " << und << " undecided check(s) in suite " << s_name << "\n";
    exit_code = r.passed(c.undecided_fails) ? 0 : 1;
  });

  // stats
  auto* stats = app.add_subcommand("stats", "size report for an aset run directory");
  std::string st_dir;
  stats->add_option("dir", st_dir, "run directory")->required();
  stats->callback([&] {
    RunFiles r = load_run(st_dir);
    std::map<std::uint64_t, std::size_t> per_stage;
    for (const json& e : r.events) ++per_stage[e.at("stage").get<std::uint64_t>()];
    json stages = json::array();
    for (auto [s, n] : per_stage) stages.push_back({{"stage", s}, {"numerated", n}});
    std::uint64_t expanded = 0;
    json sizes = json::array();
    for (Formula f : r.formulas) {
      std::uint64_t t = tree_size(f);
      sizes.push_back(t);
      expanded = t > UINT64_MAX - expanded ? UINT64_MAX : expanded + t;
    }
    std::cout << json{{"numerated", r.formulas.size()},
                      {"distinct_nodes", r.distinct_nodes},
                      {"expanded_total", expanded},
                      {"sharing_ratio", static_cast<double>(expanded) / static_cast<double>(r.distinct_nodes)},
                      {"expanded_sizes", sizes},
                      {"stages", stages}}
                     .dump(2)
              << "\n";
  });

  // export
  auto* exportc = app.add_subcommand("export", "export an aset run as Graphviz or a single JSON document");
  std::string ex_dir, ex_format = "json", ex_out;
  exportc->add_option("dir", ex_dir, "run directory")->required();
  exportc->add_option("--format", ex_format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  exportc->add_option("--out", ex_out, "output file (default stdout)");
  exportc->callback([&] {
    RunFiles r = load_run(ex_dir);
    if (ex_format == "json") {
      json fs_json = json::array();
      for (Formula f : r.formulas) fs_json.push_back(print(f));
      emit(json{{"events", r.events}, {"formulas", fs_json}}.dump(2) + "\n", ex_out);
      return;
    }
    std::string dot = "digraph aset {\n  node [shape=box];\n";
    for (const json& e : r.events) {
      std::string id = std::to_string(e.at("node_id").get<std::uint64_t>());
      dot += "  n" + id + " [label=\"" + id + " s" + std::to_string(e.at("stage").get<std::uint64_t>()) + " " +
             e.at("polarity").get<std::string>() + "\"];\n";
      if (!e.at("parent_id").is_null())
        dot += "  n" + std::to_string(e.at("parent_id").get<std::uint64_t>()) + " -> n" + id + ";\n";
    }
    emit(dot + "}\n", ex_out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "error: resource limit: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
