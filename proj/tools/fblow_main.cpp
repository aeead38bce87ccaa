// fblow: Frobenius pushforwards, Villamayor ideals and F-blowups from the
// command line.  Inputs and outputs are JSON.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fblow/blowup.hpp"
#include "fblow/budget.hpp"
#include "fblow/catalog.hpp"
#include "fblow/dossier.hpp"
#include "fblow/errors.hpp"
#include "fblow/frobenius.hpp"
#include "fblow/parse.hpp"

using namespace fblow;

namespace {

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kBudget = 3, kInternal = 4 };

struct Common {
  uint64_t seed = 0;
  std::string out;
  bool no_timings = false;
};

void emit(const Common& c, const Json& j) {
  if (c.out.empty()) {
    std::cout << dump(j);
  } else {
    write_file_atomic(c.out, dump(j));
  }
}

RingSpec load_ring(const std::string& path) { return ring_spec_from_json(read_json_file(path)); }

Json strings(const std::vector<Polynomial>& v) {
  Json a = Json::array();
  for (const auto& f : v) a.push_back(f.str());
  return a;
}

Json matrix_json(const PresentedModule& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(strings(m.matrix().matrix().row(i)));
  return rows;
}

Json blocks_json(const std::vector<PresentedModule>& blocks) {
  Json out = Json::array();
  for (const auto& b : blocks) out.push_back(to_json(block_report(b)));
  return out;
}

int cmd_push(const Common& c, const std::string& ring_path, unsigned e) {
  RingSpec spec = load_ring(ring_path);
  auto ring = spec.make();
  PresentedModule m = pushforward(PresentedModule::free(ring, 1), e);
  DecomposeOptions opts;
  opts.seed = c.seed;
  Json j{{"schema", kSchemaVersion},
         {"input", to_json(spec)},
         {"e", e},
         {"seed", c.seed},
         {"rank", module_rank(m)},
         {"pruned_shape", {m.rows(), m.cols()}},
         {"matrix", matrix_json(m)},
         {"blocks", blocks_json(block_decompose(m, opts))}};
  emit(c, j);
  return kOk;
}

int cmd_villamayor(const Common& c, const std::string& ring_path, unsigned e, const std::string& module_path) {
  RingSpec spec = load_ring(ring_path);
  auto ring = spec.make();
  PresentedModule m = module_path.empty() ? pushforward(PresentedModule::free(ring, 1), e)
                                          : matrix_from_json(read_json_file(module_path)).presented(ring);
  FractionalIdealRep v = villamayor_ideal(m);
  Json j{{"schema", kSchemaVersion}, {"input", to_json(spec)}, {"rank", module_rank(m)}, {"generators", strings(v.generators)}};
  if (module_path.empty()) j["e"] = e;
  emit(c, j);
  return kOk;
}

int cmd_rees(const Common& c, const std::string& ring_path, const std::string& ideal) {
  RingSpec spec = load_ring(ring_path);
  auto ring = spec.make();
  FractionalIdealRep rep{ring, {}};
  std::stringstream ss(ideal);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Polynomial f = ring->reduce(parse(item, ring->ambient()));
    if (!f.is_zero()) rep.generators.push_back(f);
  }
  ReesPresentation p = rees(rep);
  Json j{{"schema", kSchemaVersion},
         {"input", to_json(spec)},
         {"generators", strings(p.generators)},
         {"vars", p.ring->var_names()},
         {"J", strings(p.J.basis())}};
  emit(c, j);
  return kOk;
}

int cmd_fblowup(const Common& c, const std::string& ring_path, unsigned e) {
  RingSpec spec = load_ring(ring_path);
  FBlowupOptions opts;
  opts.seed = c.seed;
  FBlowupReport rep = fblowup(spec.make(), e, opts);
  emit(c, dossier(spec, rep, !c.no_timings));
  return rep.status == "complete" ? kOk : kBudget;
}

int cmd_decompose(const Common& c, const std::string& ring_path, const std::string& matrix_path) {
  RingSpec spec = load_ring(ring_path);
  auto ring = spec.make();
  NamedMatrix nm = matrix_from_json(read_json_file(matrix_path));
  PresentedModule m = prune(nm.presented(ring));
  DecomposeOptions opts;
  opts.seed = c.seed;
  auto blocks = block_decompose(m, opts);
  std::vector<InvariantSignature> sigs;
  for (const auto& b : blocks) sigs.push_back(signature(b));
  Json same = Json::array();
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < sigs.size(); ++k) row.push_back(sigs[i] == sigs[k]);
    same.push_back(row);
  }
  Json j{{"schema", kSchemaVersion},
         {"input", to_json(spec)},
         {"rank", module_rank(m)},
         {"pruned_shape", {m.rows(), m.cols()}},
         {"matrix", matrix_json(m)},
         {"blocks", blocks_json(blocks)},
         {"same_signature", same}};
  emit(c, j);
  return kOk;
}

int cmd_catalog(const Common& c, bool run_all, unsigned e, int jobs, const std::string& out_dir) {
  const auto& entries = catalog();
  if (!run_all) {
    Json list = Json::array();
    for (const auto& entry : entries) {
      Json j = to_json(entry.ring);
      j["description"] = entry.description;
      j["duplicate_of"] = entry.duplicate_of ? Json(*entry.duplicate_of) : Json(nullptr);
      Json comps = Json::array();
      for (const auto& m : entry.companions) comps.push_back(to_json(m));
      j["companions"] = comps;
      list.push_back(j);
    }
    emit(c, Json{{"schema", kSchemaVersion}, {"entries", list}});
    return kOk;
  }
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  const long n = static_cast<long>(entries.size());
  std::vector<Json> summaries(entries.size());
  std::vector<int> codes(entries.size(), kOk);
  const Budget budget = active_budget();
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (long i = 0; i < n; ++i) {
    BudgetScope scope(budget);
    const auto& entry = entries[static_cast<std::size_t>(i)];
    Json s{{"name", entry.ring.name}};
    try {
      FBlowupOptions opts;
      opts.seed = c.seed;
      FBlowupReport rep = fblowup(entry.ring.make(), e, opts);
      Json checks = Json::object();
      bool pass = true;
      for (const auto& fc : fixture_checks(entry, rep)) {
        checks[fc.name] = fc.pass;
        pass = pass && fc.pass;
      }
      s["status"] = rep.status;
      s["checks"] = checks;
      s["pass"] = pass;
      if (rep.status != "complete") codes[static_cast<std::size_t>(i)] = kBudget;
      if (!pass) codes[static_cast<std::size_t>(i)] = kInternal;
      if (!out_dir.empty()) {
        write_file_atomic((std::filesystem::path(out_dir) / (entry.ring.name + ".json")).string(),
                          dump(dossier(entry.ring, rep, !c.no_timings)));
      }
    } catch (const std::exception& ex) {
      s["status"] = std::string("error: ") + ex.what();
      s["pass"] = false;
      codes[static_cast<std::size_t>(i)] = kInternal;
    }
    summaries[static_cast<std::size_t>(i)] = s;
  }
  emit(c, Json{{"schema", kSchemaVersion}, {"e", e}, {"results", summaries}});
  int code = kOk;
  for (int x : codes) code = std::max(code, x);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fblow: Frobenius pushforwards and F-blowups over F_p"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--seed", common.seed, "Seed for randomized steps")->capture_default_str();
  app.add_option("--out", common.out, "Write the JSON result here instead of stdout");
  app.add_flag("--no-timings", common.no_timings, "Leave timings out of dossiers");

  std::string ring_path, module_path, matrix_path, ideal, out_dir;
  unsigned e = 1;
  bool run_all = false;
  int jobs = 1;

  auto* push = app.add_subcommand("push", "Pruned pushforward, blocks and signatures");
  push->add_option("--ring", ring_path, "Ring JSON")->required();
  push->add_option("--e", e, "Frobenius power")->check(CLI::PositiveNumber);

  auto* vil = app.add_subcommand("villamayor", "Generators of the Villamayor ideal");
  vil->add_option("--ring", ring_path, "Ring JSON")->required();
  auto* vil_e = vil->add_option("--e", e, "Use the pushforward of R")->check(CLI::PositiveNumber);
  auto* vil_m = vil->add_option("--module", module_path, "Presentation matrix JSON");
  vil_e->excludes(vil_m);

  auto* re = app.add_subcommand("rees", "Defining ideal of the Rees algebra");
  re->add_option("--ring", ring_path, "Ring JSON")->required();
  re->add_option("--ideal", ideal, "Comma-separated generators")->required();

  auto* fb = app.add_subcommand("fblowup", "Full F-blowup dossier");
  fb->add_option("--ring", ring_path, "Ring JSON")->required();
  fb->add_option("--e", e, "Frobenius power")->check(CLI::PositiveNumber);

  auto* dec = app.add_subcommand("decompose", "Prune and split a presentation");
  dec->add_option("--ring", ring_path, "Ring JSON")->required();
  dec->add_option("--matrix", matrix_path, "Matrix JSON")->required();

  auto* cat = app.add_subcommand("catalog", "List or run the built-in fixtures");
  cat->add_flag("--run-all", run_all, "Run fblowup on every entry");
  cat->add_option("--e", e, "Frobenius power")->check(CLI::PositiveNumber);
  cat->add_option("--jobs", jobs, "Parallel entries")->check(CLI::PositiveNumber);
  cat->add_option("--out-dir", out_dir, "Directory for per-entry dossiers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    int code = app.exit(ex);
    return code == 0 ? kOk : kUsage;
  }

  try {
    BudgetScope scope(Budget::from_env());
    if (*push) return cmd_push(common, ring_path, e);
    if (*vil) return cmd_villamayor(common, ring_path, e, module_path);
    if (*re) return cmd_rees(common, ring_path, ideal);
    if (*fb) return cmd_fblowup(common, ring_path, e);
    if (*dec) return cmd_decompose(common, ring_path, matrix_path);
    if (*cat) return cmd_catalog(common, run_all, e, jobs, out_dir);
  } catch (const ParseError& ex) {
    std::cerr << "parse error: " << ex.what() << "\n";
    return kParse;
  } catch (const RingError& ex) {
    std::cerr << "bad input: " << ex.what() << "\n";
    return kParse;
  } catch (const UnitIdealError& ex) {
    std::cerr << "bad input: " << ex.what() << "\n";
    return kParse;
  } catch (const BudgetExceeded& ex) {
    std::cerr << "budget exceeded: " << ex.what() << "\n";
    return kBudget;
  } catch (const InvariantViolation& ex) {
    std::cerr << "invariant violation: " << ex.what() << "\n";
    return kInternal;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
