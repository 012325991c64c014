#include "stackydeg/cli.hpp"

#include "stackydeg/json_io.hpp"
#include "stackydeg/scenarios.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

namespace stackydeg {

namespace fs = std::filesystem;

long max_input_degree() {
  const char* env = std::getenv("STACKYDEG_MAX_DEG");
  if (!env || !*env) return 64;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 0) throw InputError("", "STACKYDEG_MAX_DEG must be a non-negative integer");
  return v;
}

namespace {

struct Targets {
  std::string out;
  std::string dot;
  std::string log;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("", "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("", path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("", "cannot write " + path);
  f << text;
}

json log_json(const DegenerationOutput& o) {
  json a = json::array();
  for (const auto& e : o.log) a.push_back(log_entry_to_json(e));
  return a;
}

struct RunResult {
  int code = kOk;
  std::string report;  ///< canonical JSON text
  std::string message;
  std::optional<DegenerationOutput> output;
};

RunResult run_engine(const DegenerationInput& in) {
  RunResult r;
  try {
    DegenerationOutput o = degenerate(in);
    r.report = dump(output_to_json(o));
    r.output = std::move(o);
  } catch (const DegenerationFailure& f) {
    json j = output_to_json(f.partial());
    j["error"] = f.what();
    r.code = kEngineFailure;
    r.report = dump(j);
    r.message = f.what();
    r.output = f.partial();
  }
  return r;
}

int emit(const RunResult& r, const Targets& t, std::ostream& out, std::ostream& err) {
  if (t.out.empty())
    out << r.report;
  else
    write_file(t.out, r.report);
  if (r.output) {
    if (!t.dot.empty()) write_file(t.dot, to_dot(r.output->limit_curve, &r.output->limit_multidegree));
    if (!t.log.empty()) write_file(t.log, dump(log_json(*r.output)));
  }
  if (r.code != kOk) err << "engine failure: " << r.message << "\n";
  return r.code;
}

void add_targets(CLI::App* sub, Targets& t) {
  sub->add_option("--out", t.out, "write the report JSON here instead of stdout");
  sub->add_option("--dot", t.dot, "write the limit dual graph as Graphviz");
  sub->add_option("--log", t.log, "write the step log JSON");
}

int degen_batch(const std::vector<std::string>& inputs, const std::string& out_dir, int jobs,
                std::ostream& out, std::ostream& err) {
  fs::create_directories(out_dir);
  const long cap = max_input_degree();
  std::vector<std::future<std::pair<std::string, RunResult>>> pending;
  std::vector<std::pair<std::string, RunResult>> done;
  auto task = [cap](std::string path) {
    RunResult r;
    try {
      r = run_engine(input_from_json(read_json_file(path), cap));
    } catch (const InputError& e) {
      r.code = kInputError;
      r.message = e.what();
    }
    return std::make_pair(path, std::move(r));
  };
  for (const auto& path : inputs) {
    if (static_cast<int>(pending.size()) >= std::max(jobs, 1)) {
      done.push_back(pending.front().get());
      pending.erase(pending.begin());
    }
    pending.push_back(std::async(std::launch::async, task, path));
  }
  for (auto& f : pending) done.push_back(f.get());

  int worst = kOk;
  for (const auto& [path, r] : done) {
    worst = std::max(worst, r.code);
    if (r.code == kInputError) {
      err << path << ": input error: " << r.message << "\n";
      continue;
    }
    const fs::path dest = fs::path(out_dir) / (fs::path(path).stem().string() + ".json");
    write_file(dest.string(), r.report);
    out << path << " -> " << dest.string() << (r.code ? " (failed)" : "") << "\n";
    if (r.code) err << path << ": engine failure: " << r.message << "\n";
  }
  return worst;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Limits of twisted maps to torus quotients, computed on dual graphs", "stackydeg"};
  app.require_subcommand(1);

  std::vector<std::string> degen_inputs;
  std::string out_dir;
  int jobs = 1;
  Targets degen_t;
  auto* degen = app.add_subcommand("degen", "run the degeneration engine on JSON inputs");
  degen->add_option("inputs", degen_inputs, "input JSON files")->required();
  add_targets(degen, degen_t);
  degen->add_option("--jobs", jobs, "parallel runs in batch mode")->check(CLI::PositiveNumber);
  degen->add_option("--out-dir", out_dir, "batch mode output directory");

  std::string matrix_path;
  auto* snf = app.add_subcommand("snf", "Smith normal form of a matrix over Q(t)");
  snf->add_option("matrix", matrix_path, "matrix JSON file")->required();

  int bm = 0, bd = 0, bmu = 0;
  auto* blowup = app.add_subcommand("blowup", "numerical data of an (m,d) twisted blow-up");
  blowup->add_option("--m", bm, "ideal exponent")->required();
  blowup->add_option("--d", bd, "root order")->required();
  auto* mu_opt = blowup->add_option("--mu", bmu, "order of a mu_L action");

  int ra = 0, rmu = 1;
  auto* resolve = app.add_subcommand("resolve", "resolve an A-type singularity xy = z^a");
  resolve->add_option("--a", ra, "exponent a")->required();
  resolve->add_option("--mu", rmu, "stabilizer order");

  std::string scen_name;
  ScenarioParams sp;
  Targets scen_t;
  auto* scen = app.add_subcommand("scenario", "run a built-in scenario");
  scen->add_option("name", scen_name, "scenario name")->required();
  scen->add_option("--k", sp.k);
  scen->add_option("--d", sp.d);
  scen->add_option("--m", sp.m);
  scen->add_option("--m2", sp.m2);
  add_targets(scen, scen_t);

  std::string run_target;
  ScenarioParams rp;
  Targets run_t;
  auto* run = app.add_subcommand("run", "run a built-in scenario or an input file");
  run->add_option("target", run_target, "scenario name or input JSON")->required();
  run->add_option("--k", rp.k);
  run->add_option("--d", rp.d);
  run->add_option("--m", rp.m);
  run->add_option("--m2", rp.m2);
  add_targets(run, run_t);

  auto* list = app.add_subcommand("scenarios", "list the built-in scenarios");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*degen) {
      if (degen_inputs.size() > 1 || !out_dir.empty()) {
        if (out_dir.empty()) throw InputError("", "several inputs need --out-dir");
        return degen_batch(degen_inputs, out_dir, jobs, out, err);
      }
      auto in = input_from_json(read_json_file(degen_inputs[0]), max_input_degree());
      return emit(run_engine(in), degen_t, out, err);
    }
    if (*snf) {
      Mat m = mat_from_json(read_json_file(matrix_path), "", max_input_degree());
      try {
        out << dump(snf_to_json(smith_normal_form(m)));
      } catch (const ShapeError& e) {
        throw InputError("", e.what());
      } catch (const SingularMatrix& e) {
        throw InputError("", e.what());
      }
      return kOk;
    }
    if (*blowup) {
      try {
        BlowupParams p{bm, bd};
        json j = blowup_to_json(p, twisted_blowup(p));
        if (*mu_opt) j["mu_action"] = mu_action_to_json(mu_action_on_blowup(bmu, p));
        out << dump(j);
      } catch (const BlowupError& e) {
        throw InputError("", e.what());
      }
      return kOk;
    }
    if (*resolve) {
      try {
        out << dump(resolution_to_json(resolve_An({ra, rmu})));
      } catch (const BlowupError& e) {
        throw InputError("", e.what());
      }
      return kOk;
    }
    if (*scen) return emit(run_engine(builtin_scenario(scen_name, sp)), scen_t, out, err);
    if (*run) {
      if (is_scenario(run_target)) return emit(run_engine(builtin_scenario(run_target, rp)), run_t, out, err);
      auto in = input_from_json(read_json_file(run_target), max_input_degree());
      return emit(run_engine(in), run_t, out, err);
    }
    if (*list) {
      for (const auto& n : scenario_names()) out << n << "\n";
      return kOk;
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace stackydeg
