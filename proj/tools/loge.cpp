// Copyright 2026 The loge Authors. All Rights Reserved.
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

// Usage:
//   loge pagerank --input edges.txt --output status.csv
//   loge train    --input edges.txt --algo log --dim 128 --lambda 0.3 --output out/blog
//   loge linkpred --input edges.txt --remove-fraction 0.5 --with-hfb --output report.json
//   loge scatter  --embeddings out/blog.emb --params out/blog.params --status status.csv --output s.csv
//   loge sweep    --input edges.txt --grid "dim=8,16,32;lambda=0.1" --output-dir sweep/
//
// Any subcommand accepts --config FILE with flat key=value lines (keys are
// the long flag names without dashes). Flags on the command line win.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "loge/commands.hpp"

namespace {

const std::set<std::string> kBooleanFlags = {"lr-decay", "with-hfb", "regress"};

/// Expands `--config FILE` into explicit flags for every key not already
/// given on the command line.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i + 2));
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (config_path.empty()) return args;

  std::ifstream in(config_path);
  if (!in) throw loge::IoError("cannot open config '" + config_path + "'");
  std::set<std::string> given;
  for (const auto& a : args) {
    if (a.rfind("--", 0) != 0) continue;
    const auto eq = a.find('=');
    given.insert(eq == std::string::npos ? a.substr(2) : a.substr(2, eq - 2));
  }
  std::vector<std::string> injected;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#' || line[first] == ';' || line[first] == '[') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw loge::ParseError(line_no, "config: expected key=value");
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r\""));
      s.erase(s.find_last_not_of(" \t\r\"") + 1);
      return s;
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    std::replace(key.begin(), key.end(), '_', '-');
    if (given.count(key)) continue;
    if (kBooleanFlags.count(key)) {
      if (value == "true" || value == "1" || value == "yes" || value == "on") injected.push_back("--" + key);
      continue;
    }
    injected.push_back("--" + key);
    injected.push_back(value);
  }
  // Keep the subcommand name first.
  args.insert(args.begin() + (args.empty() ? 0 : 1), injected.begin(), injected.end());
  return args;
}

struct ModelFlags {
  std::string algo = "log";
  CLI::Option* lists = nullptr;
  CLI::Option* lambda = nullptr;
  CLI::Option* negatives = nullptr;
  CLI::Option* epochs = nullptr;
  CLI::Option* lr2 = nullptr;
};

void add_model_flags(CLI::App* app, loge::ModelSettings& s, ModelFlags& f) {
  app->add_option("--algo", f.algo, "gine or log")->check(CLI::IsMember({"gine", "log"}));
  app->add_option("--dim", s.dim, "Per-matrix representation dimension d")->capture_default_str();
  f.lambda = app->add_option("--lambda", s.lambda, "LOG: probability of a global update per node")
                 ->capture_default_str();
  app->add_option("--levels", s.levels, "Number of status levels K")->capture_default_str();
  f.negatives = app->add_option("--negatives", s.negatives, "LOG: negative samples per context")
                    ->capture_default_str();
  f.epochs = app->add_option("--epochs", s.epochs, "LOG: passes over the node set")->capture_default_str();
  f.lists = app->add_option("--lists", s.lists, "GINE: number of level lists L");
  app->add_option("--lr1", s.lr1, "GINE step, or LOG local step")->capture_default_str();
  f.lr2 = app->add_option("--lr2", s.lr2, "LOG: global step")->capture_default_str();
  app->add_flag("--lr-decay", s.lr_decay, "Linear learning-rate decay");
  app->add_option("--seed", s.seed, "Random seed")->capture_default_str();
  app->add_option("--threads", s.threads, "Training workers (1 = deterministic)")->capture_default_str();
  app->add_option("--damping", s.pagerank.damping, "PageRank damping")->capture_default_str();
  app->add_option("--tol", s.pagerank.tolerance, "PageRank L1 tolerance")->capture_default_str();
  app->add_option("--max-iter", s.pagerank.max_iter, "PageRank iteration cap")->capture_default_str();
}

void finish_model_flags(loge::ModelSettings& s, const ModelFlags& f) {
  s.algo = loge::parse_mapping(f.algo);
  if (s.algo == loge::Mapping::log) {
    if (f.lists->count() > 0) throw CLI::ValidationError("--lists", "only applies to --algo gine");
  } else {
    for (auto* o : {f.lambda, f.negatives, f.epochs, f.lr2}) {
      if (o->count() > 0) throw CLI::ValidationError(o->get_name(), "only applies to --algo log");
    }
    if (f.lists->count() == 0) throw CLI::RequiredError("--lists (required with --algo gine)");
  }
}

void add_linkpred_flags(CLI::App* app, loge::LinkPredSettings& lp) {
  app->add_option("--remove-fraction", lp.fraction, "Fraction of edges held out")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app->add_flag("--with-hfb", lp.with_hfb, "Also report the handcrafted-feature baseline");
  app->add_option("--reg", lp.fit.reg, "Classifier L2 penalty")->capture_default_str();
  app->add_option("--classifier-iters", lp.fit.max_iter, "Classifier iteration cap")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = expand_config(std::move(args));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  CLI::App app{"Local + global status network embedding"};
  app.require_subcommand(1);

  loge::PageRankCommand pr;
  auto* pr_cmd = app.add_subcommand("pagerank", "Compute status scores, ranks and levels");
  pr_cmd->add_option("--input", pr.input, "Edge list")->required();
  pr_cmd->add_option("--output", pr.output, "Status CSV")->required();
  pr_cmd->add_option("--damping", pr.options.damping)->capture_default_str();
  pr_cmd->add_option("--tol", pr.options.tolerance)->capture_default_str();
  pr_cmd->add_option("--max-iter", pr.options.max_iter)->capture_default_str();
  pr_cmd->add_option("--levels", pr.levels)->capture_default_str();

  loge::TrainCommand tr;
  ModelFlags tr_flags;
  auto* tr_cmd = app.add_subcommand("train", "Train GINE or LOG embeddings");
  tr_cmd->add_option("--input", tr.input, "Edge list")->required();
  tr_cmd->add_option("--output", tr.output_prefix, "Output prefix (.emb, .params, .manifest.json)")
      ->required();
  add_model_flags(tr_cmd, tr.settings, tr_flags);

  loge::LinkPredCommand lp;
  ModelFlags lp_flags;
  auto* lp_cmd = app.add_subcommand("linkpred", "Edge-removal link prediction experiment");
  lp_cmd->add_option("--input", lp.input, "Edge list")->required();
  lp_cmd->add_option("--output", lp.output, "Report JSON")->required();
  add_model_flags(lp_cmd, lp.settings, lp_flags);
  add_linkpred_flags(lp_cmd, lp.linkpred);

  loge::ScatterCommand sc;
  auto* sc_cmd = app.add_subcommand("scatter", "Predicted status in PageRank order");
  sc_cmd->add_option("--embeddings", sc.embeddings, "Embedding file")->required();
  auto* params_opt = sc_cmd->add_option("--params", sc.params, "Parameter sidecar (w, w')");
  auto* regress_opt = sc_cmd->add_flag("--regress", sc.regress, "Fit a linear regression instead");
  params_opt->excludes(regress_opt);
  sc_cmd->add_option("--status", sc.status_csv, "Status CSV from `pagerank`")->required();
  sc_cmd->add_option("--output", sc.output, "Scatter CSV")->required();

  loge::SweepCommand sw;
  ModelFlags sw_flags;
  auto* sw_cmd = app.add_subcommand("sweep", "Run linkpred over a parameter grid");
  sw_cmd->add_option("--input", sw.input, "Edge list")->required();
  sw_cmd->add_option("--grid", sw.grid, "e.g. \"dim=8,16;lambda=0,0.1\"")->required();
  sw_cmd->add_option("--output-dir", sw.output_dir, "Directory for reports and summary.csv")->required();
  sw_cmd->add_option("--parallel", sw.parallel, "Cells run concurrently")->capture_default_str();
  add_model_flags(sw_cmd, sw.settings, sw_flags);
  add_linkpred_flags(sw_cmd, sw.linkpred);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (*tr_cmd) finish_model_flags(tr.settings, tr_flags);
    if (*lp_cmd) finish_model_flags(lp.settings, lp_flags);
    if (*sw_cmd) {
      finish_model_flags(sw.settings, sw_flags);
      loge::parse_grid(sw.grid);
    }
    if (*sc_cmd && !sc.regress && sc.params.empty()) {
      throw CLI::RequiredError("--params or --regress");
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const loge::ArgumentError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*pr_cmd) {
      loge::cmd_pagerank(pr);
    } else if (*tr_cmd) {
      loge::cmd_train(tr);
    } else if (*lp_cmd) {
      auto report = loge::cmd_linkpred(lp);
      std::cout << report.dump(2) << '\n';
    } else if (*sc_cmd) {
      loge::cmd_scatter(sc);
    } else if (*sw_cmd) {
      auto r = loge::cmd_sweep(sw);
      std::cout << "wrote " << r.reports.size() << " reports and " << r.summary << '\n';
    }
  } catch (const loge::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
