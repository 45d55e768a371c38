// Copyright 2026 The gibbsvqa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gibbsvqa/gibbsvqa.h"

namespace {

using nlohmann::json;

struct Flags {
  std::string config;
  std::vector<int> n;
  std::vector<double> h;
  std::string boundary;
  std::vector<double> beta;
  int layers_ancilla = 1;
  int layers_system = 0;
  std::string mode;
  std::uint64_t shots = 1024;
  bool miller_madow = false;
  int runs = 0;
  std::uint64_t seed = 1;
  std::string out;
  bool resume = false;
  int workers = 1;
  int max_iterations = 0;
  bool drop_nonadjacent = false;
  int num_states = 16;
  int restarts = 200;
  std::string params;
};

struct Options {
  CLI::Option* n = nullptr;
  CLI::Option* h = nullptr;
  CLI::Option* boundary = nullptr;
  CLI::Option* beta = nullptr;
  CLI::Option* layers_ancilla = nullptr;
  CLI::Option* layers_system = nullptr;
  CLI::Option* mode = nullptr;
  CLI::Option* shots = nullptr;
  CLI::Option* miller_madow = nullptr;
  CLI::Option* runs = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* resume = nullptr;
  CLI::Option* workers = nullptr;
  CLI::Option* max_iterations = nullptr;
  CLI::Option* drop_nonadjacent = nullptr;
  CLI::Option* num_states = nullptr;
  CLI::Option* restarts = nullptr;
};

Options add_common(CLI::App* app, Flags& f) {
  Options o;
  app->set_help_flag("--help", "Print this help message and exit");
  app->add_option("--config", f.config, "JSON config file; flags override its keys")
      ->check(CLI::ExistingFile);
  o.n = app->add_option("--n", f.n, "Number of spins (repeatable where a list is accepted)");
  o.h = app->add_option("--h", f.h, "Transverse field");
  o.boundary = app->add_option("--boundary", f.boundary, "periodic or open")
                   ->check(CLI::IsMember({"periodic", "open"}));
  o.beta = app->add_option("--beta", f.beta, "Inverse temperature (repeatable)");
  o.layers_ancilla = app->add_option("--layers-ancilla", f.layers_ancilla, "Ancilla entangling layers");
  o.layers_system = app->add_option("--layers-system", f.layers_system, "System layers (0: n - 1)");
  o.mode = app->add_option("--mode", f.mode, "exact or shots")->check(CLI::IsMember({"exact", "shots"}));
  o.shots = app->add_option("--shots", f.shots, "Shots per circuit");
  o.miller_madow = app->add_flag("--miller-madow", f.miller_madow, "Bias-correct the sampled entropy");
  o.runs = app->add_option("--runs", f.runs, "Optimizer restarts per beta");
  o.seed = app->add_option("--seed", f.seed, "Base seed");
  o.out = app->add_option("--out", f.out, "Output directory");
  o.resume = app->add_flag("--resume", f.resume, "Skip runs already recorded in --out");
  o.workers = app->add_option("--workers", f.workers, "Parallel optimizer runs");
  o.max_iterations = app->add_option("--max-iterations", f.max_iterations, "Optimizer iteration cap");
  o.drop_nonadjacent = app->add_flag("--drop-nonadjacent-rp", f.drop_nonadjacent,
                                     "Omit the ring-closing system gate");
  o.num_states = app->add_option("--num-states", f.num_states, "Energy levels per c_v fit");
  o.restarts = app->add_option("--restarts", f.restarts, "Restarts for distribution fits");
  return o;
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw std::runtime_error(path + " is not a JSON object");
  return j;
}

template <typename T>
void set_if(json& j, const char* key, CLI::Option* opt, const T& value) {
  if (opt != nullptr && opt->count() > 0) j[key] = value;
}

int scalar_n(const Flags& f) {
  if (f.n.size() != 1) throw std::runtime_error("--n takes a single value for this command");
  return f.n.front();
}

double scalar_h(const Flags& f) {
  if (f.h.size() != 1) throw std::runtime_error("--h takes a single value for this command");
  return f.h.front();
}

int call(gvqa_status (*fn)(const char*, char**), const json& config, json& result) {
  char* text = nullptr;
  const gvqa_status st = fn(config.dump().c_str(), &text);
  if (st != GVQA_OK) {
    std::cerr << "error: " << gvqa_last_error() << '\n';
    return 10 + static_cast<int>(st);
  }
  result = json::parse(text);
  gvqa_free_string(text);
  return 0;
}

void write_file(const std::string& dir, const std::string& name, const std::string& text) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::ofstream f(dir + "/" + name);
  if (!f) throw std::runtime_error("cannot write " + dir + "/" + name);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational Gibbs-state preparation experiments"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", std::string(gvqa_version()));

  Flags fs, fa, fb, fr, fg, ft;
  CLI::App* sweep = app.add_subcommand("sweep", "Optimize the ansatz over a beta grid");
  const Options os = add_common(sweep, fs);
  CLI::App* appa = app.add_subcommand("appendix-a", "Coefficient-of-variation scaling fits");
  const Options oa = add_common(appa, fa);
  CLI::App* appb = app.add_subcommand("appendix-b", "Product versus entangled ancilla distributions");
  const Options ob = add_common(appb, fb);
  CLI::App* res = app.add_subcommand("resources", "Gate and depth counts");
  const Options orr = add_common(res, fr);
  CLI::App* gibbs = app.add_subcommand("exact-gibbs", "Dump the exact Gibbs state");
  const Options og = add_common(gibbs, fg);
  CLI::App* tfd = app.add_subcommand("tfd", "TFD statevector from a saved parameter file");
  tfd->add_option("--params", ft.params, "params/<beta>/<run>.json from a sweep")
      ->required()
      ->check(CLI::ExistingFile);
  tfd->add_option("--out", ft.out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    json result;
    int rc = 0;
    if (sweep->parsed()) {
      json j = load_config(fs.config);
      if (os.n->count() > 0) j["n"] = scalar_n(fs);
      if (os.h->count() > 0) j["h"] = scalar_h(fs);
      set_if(j, "boundary", os.boundary, fs.boundary);
      set_if(j, "beta", os.beta, fs.beta);
      set_if(j, "layers_ancilla", os.layers_ancilla, fs.layers_ancilla);
      set_if(j, "layers_system", os.layers_system, fs.layers_system);
      set_if(j, "mode", os.mode, fs.mode);
      set_if(j, "shots", os.shots, fs.shots);
      set_if(j, "miller_madow", os.miller_madow, fs.miller_madow);
      set_if(j, "runs", os.runs, fs.runs);
      set_if(j, "seed", os.seed, fs.seed);
      set_if(j, "out", os.out, fs.out);
      set_if(j, "resume", os.resume, fs.resume);
      set_if(j, "workers", os.workers, fs.workers);
      set_if(j, "max_iterations", os.max_iterations, fs.max_iterations);
      set_if(j, "drop_nonadjacent_rp", os.drop_nonadjacent, fs.drop_nonadjacent);
      rc = call(gvqa_run_sweep, j, result);
      if (rc == 0) {
        std::printf("beta,best_fidelity,best_free_energy,exact_free_energy\n");
        for (const auto& p : result["points"]) {
          std::printf("%s,%s,%s,%s\n", p["beta"].dump().c_str(), p["best_fidelity"].dump().c_str(),
                      p["best_free_energy"].dump().c_str(), p["exact_free_energy"].dump().c_str());
        }
      }
      return rc;
    }
    if (appa->parsed()) {
      json j = load_config(fa.config);
      if (oa.h->count() > 0) j["h"] = scalar_h(fa);
      set_if(j, "boundary", oa.boundary, fa.boundary);
      set_if(j, "beta", oa.beta, fa.beta);
      set_if(j, "n_values", oa.n, fa.n);
      set_if(j, "shots", oa.shots, fa.shots);
      set_if(j, "num_states", oa.num_states, fa.num_states);
      set_if(j, "out", oa.out, fa.out);
      rc = call(gvqa_run_appendix_a, j, result);
      if (rc == 0) std::cout << result["fits"].dump(2) << '\n';
      return rc;
    }
    if (appb->parsed()) {
      json j = load_config(fb.config);
      set_if(j, "n_values", ob.n, fb.n);
      set_if(j, "h_values", ob.h, fb.h);
      set_if(j, "beta", ob.beta, fb.beta);
      set_if(j, "boundary", ob.boundary, fb.boundary);
      set_if(j, "restarts", ob.restarts, fb.restarts);
      set_if(j, "layers_ancilla", ob.layers_ancilla, fb.layers_ancilla);
      set_if(j, "seed", ob.seed, fb.seed);
      set_if(j, "out", ob.out, fb.out);
      rc = call(gvqa_run_appendix_b, j, result);
      if (rc == 0) std::cout << result["rows"].dump(2) << '\n';
      return rc;
    }
    if (res->parsed()) {
      json j = load_config(fr.config);
      set_if(j, "n_values", orr.n, fr.n);
      set_if(j, "layers_ancilla", orr.layers_ancilla, fr.layers_ancilla);
      set_if(j, "layers_system", orr.layers_system, fr.layers_system);
      std::string out = j.value("out", std::string());
      j.erase("out");
      if (orr.out->count() > 0) out = fr.out;
      rc = call(gvqa_report_resources, j, result);
      if (rc == 0) {
        const std::string csv = result["csv"].get<std::string>();
        std::cout << csv;
        if (!out.empty()) write_file(out, "resources.csv", csv);
      }
      return rc;
    }
    if (gibbs->parsed()) {
      json j = load_config(fg.config);
      if (og.n->count() > 0) j["n"] = scalar_n(fg);
      if (og.h->count() > 0) j["h"] = scalar_h(fg);
      set_if(j, "boundary", og.boundary, fg.boundary);
      if (og.beta->count() > 0) {
        if (fg.beta.size() != 1) throw std::runtime_error("--beta takes a single value for exact-gibbs");
        j["beta"] = fg.beta.front();
      }
      std::string out = j.value("out", std::string());
      j.erase("out");
      if (og.out->count() > 0) out = fg.out;
      if (!j.contains("n")) throw std::runtime_error("exact-gibbs needs --n");
      rc = call(gvqa_exact_gibbs, j, result);
      if (rc == 0) {
        std::cout << result.dump(2) << '\n';
        if (!out.empty()) write_file(out, "exact_gibbs.json", result.dump(2) + "\n");
      }
      return rc;
    }
    if (tfd->parsed()) {
      rc = call(gvqa_tfd, json{{"params", ft.params}}, result);
      if (rc == 0) {
        std::cout << result.dump(2) << '\n';
        if (!ft.out.empty()) write_file(ft.out, "tfd.json", result.dump(2) + "\n");
      }
      return rc;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
