#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pcabel/abelian.hpp"
#include "pcabel/cutting.hpp"
#include "pcabel/error.hpp"
#include "pcabel/export.hpp"
#include "pcabel/logic.hpp"
#include "pcabel/morphism.hpp"
#include "pcabel/pipeline.hpp"
#include "pcabel/recognizability.hpp"
#include "pcabel/uniformizer.hpp"

using namespace pcabel;
namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::string spec;
  std::string seed;
  std::size_t depth = 0;
  int cmax = 64;
  std::string format = "walnut";
  bool check = false;
  bool deep = false;
  std::string out_dir;
  std::string json_file;
  bool verbose = false;
  pcabel::Value enumerate = 0;
  bool enumerate_set = false;
  std::string formula;
};

// A path if one exists, the text itself otherwise.
std::string read_source(const std::string& arg) {
  std::error_code ec;
  if (!arg.empty() && fs::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    if (!in) throw InputError("cannot read " + arg);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return arg;
}

Letter seed_letter(const Morphism& f, const RunConfig& cfg) {
  if (cfg.seed.empty()) return 0;
  return f.domain().index_of(cfg.seed);
}

std::string set_text(const Alphabet& A, const std::vector<Letter>& ls) {
  std::string s = "{";
  for (std::size_t i = 0; i < ls.size(); ++i) s += (i ? "," : "") + A.name(ls[i]);
  return s + "}";
}

std::string extension(const std::string& format) {
  if (format == "dot") return ".dot";
  if (format == "json") return ".json";
  return ".txt";
}

template <class T>
std::string render(const T& x, const std::string& format, const std::string& name) {
  if (format == "dot") return to_dot(x, name);
  if (format == "json") return to_json(x);
  return to_walnut(x);
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

template <class T>
void emit(const RunConfig& cfg, const T& x, const std::string& name) {
  auto text = render(x, cfg.format, name);
  if (cfg.out_dir.empty())
    std::cout << text;
  else
    write_file(fs::path(cfg.out_dir) / (name + extension(cfg.format)), text);
}

UniformPresentation presentation_of(const Morphism& f, Letter a) {
  auto r = restrict_to_reachable(f, a);
  Letter seed = static_cast<Letter>(std::find(r.to_original.begin(), r.to_original.end(), a) - r.to_original.begin());
  return minimize_presentation(uniformize(r.morphism, seed));
}

int cmd_analyze(const RunConfig& cfg) {
  auto f = parse_morphism(read_source(cfg.spec));
  Letter a = seed_letter(f, cfg);
  const auto& A = f.domain();
  nlohmann::ordered_json j;
  j["morphism"] = f.to_string();
  j["seed"] = A.name(a);

  auto witness = collinearity_witness(f);
  if (witness) {
    std::ostringstream msg;
    msg << "not Parikh-collinear: the minor on letters " << A.name(witness->first) << "," << A.name(witness->second)
        << " and rows " << A.name(witness->row_a) << "," << A.name(witness->row_b) << " is " << witness->minor;
    std::cout << "collinear: no\n" << msg.str() << "\n";
    j["collinear"] = false;
    j["minor"] = witness->minor;
    if (!cfg.json_file.empty()) write_file(cfg.json_file, j.dump(2) + "\n");
    std::cerr << "error: " << msg.str() << "\n";
    return static_cast<int>(ErrorKind::kInput);
  }

  auto k = eigenvalue(f);
  auto part = mortal_partition(f);
  bool prolongable = is_prolongable(f, a);
  std::cout << "collinear: yes\n";
  std::cout << "eigenvalue: " << k << "\n";
  std::cout << "B: " << set_text(A, part.immortal) << "\n";
  std::cout << "C: " << set_text(A, part.mortal) << "\n";
  j["collinear"] = true;
  j["eigenvalue"] = k;
  j["B"] = set_text(A, part.immortal);
  j["C"] = set_text(A, part.mortal);
  if (!part.immortal.empty()) {
    auto g = kappa_projection(f).g;
    bool primitive = is_primitive(g);
    std::cout << "g: " << g.to_string() << "\n";
    std::cout << "g primitive: " << (primitive ? "yes" : "no") << "\n";
    j["g"] = g.to_string();
    j["g_primitive"] = primitive;
  }
  std::cout << "prolongable on " << A.name(a) << ": " << (prolongable ? "yes" : "no") << "\n";
  j["prolongable"] = prolongable;
  if (!part.immortal.empty()) {
    auto bounds = bound_recognizability(f);
    std::cout << bounds.to_text();
    j["bounds"] = {{"K_sigma", bounds.K_sigma_bound ? nlohmann::json(*bounds.K_sigma_bound) : nlohmann::json()},
                   {"K_f", bounds.K_f_bound ? nlohmann::json(*bounds.K_f_bound) : nlohmann::json()},
                   {"recognizability_expression", bounds.rec_expression},
                   {"recognizability_digits", bounds.rec_digits}};
  }
  if (!cfg.json_file.empty()) write_file(cfg.json_file, j.dump(2) + "\n");
  if (!prolongable) {
    std::cerr << "error: morphism is not prolongable on '" << A.name(a) << "'\n";
    return static_cast<int>(ErrorKind::kInput);
  }
  return 0;
}

int cmd_abelian(const RunConfig& cfg) {
  auto f = parse_morphism(read_source(cfg.spec));
  PipelineConfig pc;
  pc.certify.c_max = cfg.cmax;
  pc.certify.depth = cfg.depth;
  pc.check = cfg.check || cfg.deep;
  pc.check_depth = cfg.deep ? 100000 : 10000;
  if (cfg.verbose) pc.on_stage = [](const std::string& s) { std::cerr << "stage " << s << "\n"; };
  auto r = run_pipeline(f, seed_letter(f, cfg), pc);

  std::cout << r.description.spaced() << "\n";
  for (const auto& c : r.checks) std::cerr << "check passed: " << c << "\n";
  if (cfg.verbose)
    for (const auto& [stage, secs] : r.timings) std::cerr << "time " << stage << ": " << secs << " s\n";
  if (!cfg.json_file.empty()) write_file(cfg.json_file, r.to_json());
  if (!cfg.out_dir.empty()) {
    emit(cfg, dfao_of_word(r.presentation), "word");
    if (r.cuts) emit(cfg, *r.cuts, "cuts");
    if (r.dfao) emit(cfg, *r.dfao, "abelian");
    write_file(fs::path(cfg.out_dir) / "description.txt", r.description.spaced() + "\n");
  }
  return 0;
}

int cmd_cutset(const RunConfig& cfg) {
  auto f = parse_morphism(read_source(cfg.spec));
  Letter a = seed_letter(f, cfg);
  if (cfg.enumerate_set) {
    auto cuts = enumerate_cuts(f, a, cfg.enumerate);
    for (std::size_t i = 0; i < cuts.positions.size(); ++i) std::cout << (i ? " " : "") << cuts.positions[i];
    std::cout << "\n";
    return 0;
  }
  auto r = restrict_to_reachable(f, a);
  Letter seed = static_cast<Letter>(std::find(r.to_original.begin(), r.to_original.end(), a) - r.to_original.begin());
  auto p = minimize_presentation(uniformize(r.morphism, seed));
  CertifyOptions opts;
  opts.c_max = cfg.cmax;
  opts.depth = cfg.depth;
  auto cert = certify_recognizability(r.morphism, seed, p, opts);
  std::cerr << "recognizability constant C=" << cert.C << "\n";
  emit(cfg, cut_automaton(p, cert), "cuts");
  if (!cfg.json_file.empty()) write_file(cfg.json_file, certificate_to_json(cert, r.morphism.domain()));
  return 0;
}

int cmd_uniformize(const RunConfig& cfg) {
  auto f = parse_morphism(read_source(cfg.spec));
  auto p = presentation_of(f, seed_letter(f, cfg));
  std::cout << export_presentation(p);
  if (!cfg.out_dir.empty()) emit(cfg, dfao_of_word(p), "word");
  return 0;
}

int cmd_decide(const RunConfig& cfg) {
  auto parsed = parse_formula(read_source(cfg.formula));
  auto f = parse_morphism(read_source(cfg.spec));
  auto p = presentation_of(f, seed_letter(f, cfg));
  if (parsed.base && *parsed.base != p.k)
    throw InputError("formula asks for msd_" + std::to_string(*parsed.base) + " but the word is " +
                     std::to_string(p.k) + "-automatic");
  Environment env(p.k);
  env.add_sequence("X", dfao_of_word(p));
  std::cout << (decide(parsed.formula, env) ? "True" : "False") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Abelian complexity of fixed points of Parikh-collinear morphisms"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("spec", cfg.spec, "morphism rules, inline or a file path")->required();
    sub->add_option("--seed", cfg.seed, "letter the fixed point starts with (default: first rule)");
  };
  auto add_export = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "export format")->check(CLI::IsMember({"dot", "walnut", "json"}));
    sub->add_option("--out", cfg.out_dir, "directory for exported automata");
  };
  auto add_cert = [&](CLI::App* sub) {
    sub->add_option("--depth", cfg.depth, "certification prefix length L")->check(CLI::PositiveNumber);
    sub->add_option("--cmax", cfg.cmax, "largest constant tried")->check(CLI::PositiveNumber);
  };

  auto* analyze = app.add_subcommand("analyze", "classify the morphism and print the bounds");
  add_common(analyze);
  analyze->add_option("--json", cfg.json_file, "write the report as JSON");

  auto* abelian = app.add_subcommand("abelian", "compute the abelian complexity automaton");
  add_common(abelian);
  add_cert(abelian);
  add_export(abelian);
  abelian->add_flag("--check", cfg.check, "compare with the brute-force oracle for n <= 10^4");
  abelian->add_flag("--deep", cfg.deep, "compare with the brute-force oracle for n <= 10^5");
  abelian->add_option("--json", cfg.json_file, "write the full report as JSON");
  abelian->add_flag("-v,--verbose", cfg.verbose, "print stages and timings");

  auto* cutset = app.add_subcommand("cutset", "cut positions of the fixed point");
  add_common(cutset);
  add_cert(cutset);
  add_export(cutset);
  auto* enumerate_opt = cutset->add_option("--enumerate", cfg.enumerate, "list the cuts up to this position");
  cutset->add_option("--json", cfg.json_file, "write the certificate as JSON");

  auto* uniform = app.add_subcommand("uniformize", "uniform presentation of the fixed point");
  add_common(uniform);
  add_export(uniform);

  auto* decide_cmd = app.add_subcommand("decide", "decide a sentence about the fixed point X");
  decide_cmd->add_option("formula", cfg.formula, "sentence, inline or a file path")->required();
  add_common(decide_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ErrorKind::kInput);
  }
  cfg.enumerate_set = enumerate_opt->count() > 0;

  try {
    if (*analyze) return cmd_analyze(cfg);
    if (*abelian) return cmd_abelian(cfg);
    if (*cutset) return cmd_cutset(cfg);
    if (*uniform) return cmd_uniformize(cfg);
    return cmd_decide(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::kInternal);
  }
}
