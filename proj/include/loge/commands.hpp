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

#ifndef LOGE_COMMANDS_HPP
#define LOGE_COMMANDS_HPP

// Pipeline commands behind the `loge` executable. Each command writes its
// primary output plus a "<output>.manifest.json" run manifest.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "json.hpp"
#include "loge/loge.hpp"

namespace loge {

using json = nlohmann::ordered_json;

/// Everything needed to train one embedding model.
struct ModelSettings {
  Mapping algo = Mapping::log;
  std::size_t dim = 128;
  double lambda = 0.3;
  int levels = 60;
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  std::size_t lists = 0;  // GINE only; required there
  double lr1 = 0.025;     // eta for GINE, eta1 for LOG
  double lr2 = 0.0025;
  bool lr_decay = false;
  std::uint64_t seed = 42;
  int threads = 1;
  PageRankOptions pagerank;

  GineConfig gine_config() const {
    GineConfig c;
    c.lists = lists;
    c.dim = dim;
    c.eta = lr1;
    c.levels = levels;
    c.seed = seed;
    c.lr_decay = lr_decay;
    c.threads = threads;
    return c;
  }

  LogConfig log_config() const {
    LogConfig c;
    c.dim = dim;
    c.eta1 = lr1;
    c.eta2 = lr2;
    c.lambda = lambda;
    c.n_negative = negatives;
    c.epochs = epochs;
    c.levels = levels;
    c.seed = seed;
    c.lr_decay = lr_decay;
    c.threads = threads;
    return c;
  }

  std::string method_tag() const {
    if (algo == Mapping::gine) return "GINE";
    return "LOG(" + format_double(lambda) + ")";
  }

  json to_json() const {
    json j;
    j["algo"] = to_string(algo);
    j["dim"] = dim;
    j["levels"] = levels;
    j["damping"] = pagerank.damping;
    j["pagerank_tolerance"] = pagerank.tolerance;
    j["pagerank_max_iter"] = pagerank.max_iter;
    if (algo == Mapping::gine) {
      j["lists"] = lists;
      j["lr1"] = lr1;
    } else {
      j["lambda"] = lambda;
      j["negatives"] = negatives;
      j["epochs"] = epochs;
      j["lr1"] = lr1;
      j["lr2"] = lr2;
    }
    j["lr_decay"] = lr_decay;
    j["seed"] = seed;
    j["threads"] = threads;
    return j;
  }
};

struct TrainedModel {
  EmbeddingModel model;
  StatusScores scores;
  StatusLevels levels;
  TrainStats stats;
};

/// PageRank on `g`, level assignment, and the configured trainer.
inline TrainedModel train_model(const Graph& g, const ModelSettings& s) {
  TrainedModel out;
  out.scores = pagerank(g, s.pagerank);
  out.levels = assign_levels(rank_nodes(out.scores), s.levels);
  if (s.algo == Mapping::gine) {
    out.model = train_gine(out.levels, s.gine_config(), &out.stats);
  } else {
    out.model = train_log(g, out.levels, s.log_config(), &out.stats);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Manifest

namespace detail {

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

template <class Fn>
void write_file(const std::string& path, Fn&& fn) {
  std::ostringstream buf;
  fn(buf);
  write_text(path, buf.str());
}

inline void ensure_parent_dir(const std::string& path) {
  auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

}  // namespace detail

/// Run record written next to a command's primary output.
class RunManifest {
 public:
  explicit RunManifest(std::string command)
      : start_(std::chrono::steady_clock::now()) {
    doc_["command"] = std::move(command);
  }

  json& doc() { return doc_; }
  void input(const std::string& key, const std::string& path) { doc_["inputs"][key] = path; }
  void output(const std::string& key, const std::string& path) { doc_["outputs"][key] = path; }
  void warn(const std::string& message) { doc_["warnings"].push_back(message); }

  void write(const std::string& path) {
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    doc_["duration_seconds"] = std::chrono::duration<double>(elapsed).count();
    if (!doc_.contains("warnings")) doc_["warnings"] = json::array();
    detail::write_text(path, doc_.dump(2) + "\n");
  }

 private:
  json doc_;
  std::chrono::steady_clock::time_point start_;
};

// ---------------------------------------------------------------------------
// pagerank

struct PageRankCommand {
  std::string input;
  std::string output;
  PageRankOptions options;
  int levels = 60;
};

/// Writes label,score,rank,level. The level count is capped at N so tiny
/// graphs still export.
inline void cmd_pagerank(const PageRankCommand& c) {
  RunManifest manifest("pagerank");
  const Graph g = load_edge_list_file(c.input);
  const StatusScores s = pagerank(g, c.options);
  int k = c.levels;
  if (static_cast<std::size_t>(k) > g.node_count()) {
    k = static_cast<int>(g.node_count());
    manifest.warn("levels capped at N=" + std::to_string(k));
  }
  const StatusLevels lv = assign_levels(rank_nodes(s), k);
  detail::ensure_parent_dir(c.output);
  detail::write_file(c.output, [&](std::ostream& out) { write_status_csv(g, s, lv, out); });

  manifest.input("edges", c.input);
  manifest.output("status_csv", c.output);
  manifest.doc()["config"] = {{"damping", c.options.damping},
                              {"tolerance", c.options.tolerance},
                              {"max_iter", c.options.max_iter},
                              {"levels", k}};
  manifest.doc()["pagerank"] = {{"iterations", s.iterations_used},
                                {"residual", s.residual},
                                {"converged", s.converged}};
  if (!s.converged) manifest.warn("pagerank did not converge within max_iter");
  manifest.write(c.output + ".manifest.json");
}

// ---------------------------------------------------------------------------
// train

struct TrainCommand {
  std::string input;
  std::string output_prefix;
  ModelSettings settings;
};

struct TrainOutputs {
  std::string embeddings;
  std::string params;
  std::string manifest;
};

inline TrainOutputs train_output_paths(const std::string& prefix) {
  return {prefix + ".emb", prefix + ".params", prefix + ".manifest.json"};
}

inline TrainOutputs cmd_train(const TrainCommand& c) {
  RunManifest manifest("train");
  const Graph g = load_edge_list_file(c.input);
  const TrainedModel t = train_model(g, c.settings);
  const TrainOutputs paths = train_output_paths(c.output_prefix);
  detail::ensure_parent_dir(paths.embeddings);
  detail::write_file(paths.embeddings, [&](std::ostream& out) {
    write_embeddings(t.model, g.labels(), c.settings.algo, out);
  });
  detail::write_file(paths.params, [&](std::ostream& out) { write_params(t.model, out); });

  manifest.input("edges", c.input);
  manifest.output("embeddings", paths.embeddings);
  manifest.output("params", paths.params);
  manifest.doc()["config"] = c.settings.to_json();
  manifest.doc()["seed"] = c.settings.seed;
  manifest.doc()["graph"] = {{"nodes", g.node_count()}, {"edges", g.edge_count()}};
  manifest.doc()["updates"] = {{"local", t.stats.local_updates}, {"global", t.stats.global_updates}};
  manifest.write(paths.manifest);
  return paths;
}

// ---------------------------------------------------------------------------
// linkpred

struct LinkPredSettings {
  double fraction = 0.5;
  bool with_hfb = false;
  FitOptions fit;
};

struct LinkPredOutcome {
  LinkPredictionReport model;
  std::optional<LinkPredictionReport> hfb;
  SplitResult split;
  std::size_t train_pairs = 0;
  std::size_t test_pairs = 0;
};

/// Split, train on the remaining graph, classify pairs, score the test set.
/// The split and pair sampling use `split_seed`; training uses settings.seed.
inline LinkPredOutcome link_prediction(const Graph& g, const ModelSettings& settings,
                                       const LinkPredSettings& lp, std::uint64_t split_seed) {
  ensure(lp.fraction > 0.0 && lp.fraction < 1.0, "remove-fraction must lie in (0, 1)");
  LinkPredOutcome out;
  Rng split_rng = Rng::derive(split_seed, 101);
  out.split = split_edges(g, lp.fraction, split_rng);
  Rng pair_rng = Rng::derive(split_seed, 102);
  const PairSets sets = build_pair_sets(g, out.split.train, out.split.removed, pair_rng);
  out.train_pairs = sets.train.size();
  out.test_pairs = sets.test.size();

  const TrainedModel t = train_model(out.split.train, settings);
  const EmbeddingTable reps = embedding_table(t.model, g.labels(), settings.algo);
  const SumFeaturizer features(reps.values, reps.dim);
  const LinearClassifier clf = fit_classifier(sets.train, features, lp.fit);
  out.model = evaluate(clf, sets.test, features, settings.method_tag(), out.split.achieved_fraction);

  if (lp.with_hfb) {
    const HfbFeaturizer hfb(out.split.train);
    const LinearClassifier hclf = fit_classifier(sets.train, hfb, lp.fit);
    out.hfb = evaluate(hclf, sets.test, hfb, "HFB", out.split.achieved_fraction);
  }
  return out;
}

inline json report_json(const LinkPredOutcome& o, const ModelSettings& s, const LinkPredSettings& lp,
                        std::uint64_t seed) {
  json j;
  j["method"] = o.model.method;
  j["fraction"] = lp.fraction;
  j["removed_fraction"] = o.split.achieved_fraction;
  j["accuracy"] = o.model.accuracy;
  j["auc"] = o.model.auc;
  j["seed"] = seed;
  json cfg = s.to_json();
  cfg["reg"] = lp.fit.reg;
  cfg["classifier_iters"] = lp.fit.max_iter;
  j["config"] = cfg;
  j["split"] = {{"target_edges", o.split.target},
                {"removed_edges", o.split.removed.size()},
                {"shortfall", o.split.shortfall},
                {"train_pairs", o.train_pairs},
                {"test_pairs", o.test_pairs}};
  j["baselines"] = json::array();
  if (o.hfb) {
    j["baselines"].push_back({{"method", o.hfb->method},
                              {"accuracy", o.hfb->accuracy},
                              {"auc", o.hfb->auc}});
  }
  return j;
}

/// Throws ArgumentError naming the first field that violates the report layout.
inline void validate_report_json(const json& j) {
  auto need = [&](const json& obj, const char* key, auto pred, const char* what) {
    if (!obj.contains(key) || !pred(obj.at(key))) {
      throw ArgumentError(std::string("report: field '") + key + "' missing or not " + what);
    }
  };
  auto unit = [](const json& v) { return v.is_number() && v.get<double>() >= 0.0 && v.get<double>() <= 1.0; };
  auto text = [](const json& v) { return v.is_string(); };
  auto whole = [](const json& v) { return v.is_number_unsigned() || v.is_number_integer(); };
  auto object = [](const json& v) { return v.is_object(); };
  auto array = [](const json& v) { return v.is_array(); };
  need(j, "method", text, "a string");
  need(j, "fraction", unit, "in [0, 1]");
  need(j, "removed_fraction", unit, "in [0, 1]");
  need(j, "accuracy", unit, "in [0, 1]");
  need(j, "auc", unit, "in [0, 1]");
  need(j, "seed", whole, "an integer");
  need(j, "config", object, "an object");
  need(j, "split", object, "an object");
  need(j, "baselines", array, "an array");
  for (const auto& b : j.at("baselines")) {
    need(b, "method", text, "a string");
    need(b, "accuracy", unit, "in [0, 1]");
    need(b, "auc", unit, "in [0, 1]");
  }
}

struct LinkPredCommand {
  std::string input;
  std::string output;
  ModelSettings settings;
  LinkPredSettings linkpred;
};

inline json cmd_linkpred(const LinkPredCommand& c) {
  RunManifest manifest("linkpred");
  const Graph g = load_edge_list_file(c.input);
  const LinkPredOutcome o = link_prediction(g, c.settings, c.linkpred, c.settings.seed);
  json report = report_json(o, c.settings, c.linkpred, c.settings.seed);
  validate_report_json(report);
  detail::ensure_parent_dir(c.output);
  detail::write_text(c.output, report.dump(2) + "\n");

  manifest.input("edges", c.input);
  manifest.output("report", c.output);
  manifest.doc()["config"] = report["config"];
  manifest.doc()["seed"] = c.settings.seed;
  manifest.doc()["achieved_fraction"] = o.split.achieved_fraction;
  if (o.split.shortfall) {
    manifest.warn("only " + std::to_string(o.split.removed.size()) + " of " +
                  std::to_string(o.split.target) + " edges could be removed; achieved fraction " +
                  format_double(o.split.achieved_fraction));
  }
  manifest.write(c.output + ".manifest.json");
  return report;
}

// ---------------------------------------------------------------------------
// scatter

struct ScatterCommand {
  std::string embeddings;
  std::string params;  // empty with regress
  bool regress = false;
  std::string status_csv;
  std::string output;
};

inline std::vector<ScatterRow> cmd_scatter(const ScatterCommand& c) {
  ensure(c.regress != !c.params.empty(), "scatter: give exactly one of --params or --regress");
  RunManifest manifest("scatter");
  std::ifstream emb_in(c.embeddings);
  if (!emb_in) throw IoError("cannot open embeddings '" + c.embeddings + "'");
  const EmbeddingTable table = read_embeddings(emb_in);
  std::ifstream status_in(c.status_csv);
  if (!status_in) throw IoError("cannot open status CSV '" + c.status_csv + "'");
  const auto status = read_status_csv(status_in);

  std::unordered_map<std::string, std::size_t> row_of;
  for (std::size_t i = 0; i < table.labels.size(); ++i) row_of.emplace(table.labels[i], i);
  std::vector<std::string> missing, extra;
  std::unordered_set<std::string> in_status;
  for (const auto& r : status) {
    in_status.insert(r.label);
    if (!row_of.count(r.label)) missing.push_back(r.label);
  }
  for (const auto& l : table.labels) {
    if (!in_status.count(l)) extra.push_back(l);
  }
  if (!missing.empty() || !extra.empty()) {
    std::string msg = "scatter: node sets differ;";
    auto list = [&](const char* what, const std::vector<std::string>& labels) {
      if (labels.empty()) return;
      msg += std::string(" ") + what + ":";
      for (std::size_t i = 0; i < labels.size() && i < 20; ++i) msg += " " + labels[i];
      if (labels.size() > 20) msg += " ...";
    };
    list("missing from embeddings", missing);
    list("missing from status CSV", extra);
    throw ArgumentError(msg);
  }

  // Order the embedding rows to match the status file; rank gives PageRank order.
  std::vector<double> scores(table.labels.size());
  std::vector<NodeIndex> ranking(table.labels.size());
  for (const auto& r : status) {
    const std::size_t row = row_of.at(r.label);
    scores[row] = r.score;
    ensure(r.rank >= 1 && r.rank <= ranking.size(), "scatter: rank out of range in status CSV");
    ranking[r.rank - 1] = static_cast<NodeIndex>(row);
  }

  std::optional<std::vector<double>> coef;
  if (!c.regress) {
    std::ifstream params_in(c.params);
    if (!params_in) throw IoError("cannot open params '" + c.params + "'");
    StatusParams p = read_params(params_in);
    std::vector<double> v = p.w;
    if (table.dim == 2 * p.w.size()) v.insert(v.end(), p.w_prime.begin(), p.w_prime.end());
    coef = std::move(v);
  }
  std::optional<std::span<const double>> coef_view;
  if (coef) coef_view = std::span<const double>(*coef);
  auto rows = status_scatter(table, coef_view, scores, ranking);
  detail::ensure_parent_dir(c.output);
  detail::write_file(c.output, [&](std::ostream& out) { write_scatter_csv(rows, out); });

  manifest.input("embeddings", c.embeddings);
  if (!c.regress) manifest.input("params", c.params);
  manifest.input("status_csv", c.status_csv);
  manifest.output("scatter_csv", c.output);
  manifest.doc()["config"] = {{"regress", c.regress}};
  manifest.write(c.output + ".manifest.json");
  return rows;
}

// ---------------------------------------------------------------------------
// sweep

struct GridAxis {
  std::string key;
  std::vector<double> values;
};

/// Parses "dim=8,16;lambda=0,0.1". Keys: dim, lambda, fraction, epochs,
/// negatives, levels, lr1, lr2.
inline std::vector<GridAxis> parse_grid(const std::string& text) {
  static const std::vector<std::string> known = {"dim",    "lambda", "fraction", "epochs",
                                                 "negatives", "levels", "lr1",      "lr2"};
  std::vector<GridAxis> axes;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    if (part.find_first_not_of(" \t") == std::string::npos) continue;
    auto eq = part.find('=');
    if (eq == std::string::npos) throw ArgumentError("grid: expected key=v1,v2 in '" + part + "'");
    GridAxis axis;
    axis.key = part.substr(0, eq);
    axis.key.erase(0, axis.key.find_first_not_of(" \t"));
    axis.key.erase(axis.key.find_last_not_of(" \t") + 1);
    if (std::find(known.begin(), known.end(), axis.key) == known.end()) {
      throw ArgumentError("grid: unknown key '" + axis.key + "'");
    }
    for (const auto& a : axes) {
      if (a.key == axis.key) throw ArgumentError("grid: key '" + axis.key + "' given twice");
    }
    std::stringstream vs(part.substr(eq + 1));
    std::string tok;
    while (std::getline(vs, tok, ',')) {
      tok.erase(0, tok.find_first_not_of(" \t"));
      tok.erase(tok.find_last_not_of(" \t") + 1);
      double v;
      if (!parse_double(tok, v)) throw ArgumentError("grid: bad value '" + tok + "' for " + axis.key);
      axis.values.push_back(v);
    }
    if (axis.values.empty()) throw ArgumentError("grid: no values for '" + axis.key + "'");
    axes.push_back(std::move(axis));
  }
  if (axes.empty()) throw ArgumentError("grid: empty specification");
  return axes;
}

struct SweepCommand {
  std::string input;
  std::string output_dir;
  std::string grid;
  ModelSettings settings;
  LinkPredSettings linkpred;
  int parallel = 1;
};

struct SweepCell {
  ModelSettings settings;
  LinkPredSettings linkpred;
  std::uint64_t seed = 0;
};

/// Cartesian product of the grid axes, first axis outermost. Each cell
/// trains with a seed derived from the base seed and its index; all cells
/// share the base seed's edge split so they are directly comparable.
inline std::vector<SweepCell> expand_grid(const std::vector<GridAxis>& axes, const ModelSettings& base,
                                          const LinkPredSettings& lp) {
  std::vector<SweepCell> cells(1, SweepCell{base, lp, 0});
  for (const auto& axis : axes) {
    std::vector<SweepCell> next;
    for (const auto& cell : cells) {
      for (double v : axis.values) {
        SweepCell c = cell;
        auto whole = [&](const char* what) {
          if (v < 0 || v != std::floor(v)) throw ArgumentError(std::string("grid: ") + what + " must be a whole number");
          return static_cast<std::size_t>(v);
        };
        if (axis.key == "dim") c.settings.dim = whole("dim");
        else if (axis.key == "lambda") c.settings.lambda = v;
        else if (axis.key == "fraction") c.linkpred.fraction = v;
        else if (axis.key == "epochs") c.settings.epochs = whole("epochs");
        else if (axis.key == "negatives") c.settings.negatives = whole("negatives");
        else if (axis.key == "levels") c.settings.levels = static_cast<int>(whole("levels"));
        else if (axis.key == "lr1") c.settings.lr1 = v;
        else if (axis.key == "lr2") c.settings.lr2 = v;
        next.push_back(c);
      }
    }
    cells.swap(next);
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    cells[i].seed = Rng::mix(base.seed + 0x9E3779B97F4A7C15ULL * (i + 1)) >> 1;
    cells[i].settings.seed = cells[i].seed;
  }
  return cells;
}

struct SweepResult {
  std::vector<std::string> reports;
  std::string summary;
};

inline SweepResult cmd_sweep(const SweepCommand& c) {
  ensure(c.parallel >= 1, "sweep: --parallel must be >= 1");
  RunManifest manifest("sweep");
  const auto axes = parse_grid(c.grid);
  const auto cells = expand_grid(axes, c.settings, c.linkpred);
  const Graph g = load_edge_list_file(c.input);
  std::filesystem::create_directories(c.output_dir);

  SweepResult result;
  std::vector<json> reports(cells.size());
  std::vector<std::string> errors(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::ostringstream name;
    name << "cell_" << std::setw(3) << std::setfill('0') << i << ".json";
    result.reports.push_back((std::filesystem::path(c.output_dir) / name.str()).string());
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        const auto& cell = cells[i];
        const LinkPredOutcome o = link_prediction(g, cell.settings, cell.linkpred, c.settings.seed);
        reports[i] = report_json(o, cell.settings, cell.linkpred, cell.seed);
        validate_report_json(reports[i]);
        detail::write_text(result.reports[i], reports[i].dump(2) + "\n");
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  if (c.parallel == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < c.parallel; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!errors[i].empty()) throw Error("sweep cell " + std::to_string(i) + ": " + errors[i]);
  }

  result.summary = (std::filesystem::path(c.output_dir) / "summary.csv").string();
  detail::write_file(result.summary, [&](std::ostream& out) {
    out << "dim,lambda,fraction,accuracy,auc,seed\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << cells[i].settings.dim << ',' << format_double(cells[i].settings.lambda) << ','
          << format_double(cells[i].linkpred.fraction) << ','
          << format_double(reports[i]["accuracy"].get<double>()) << ','
          << format_double(reports[i]["auc"].get<double>()) << ',' << cells[i].seed << '\n';
    }
  });

  manifest.input("edges", c.input);
  manifest.output("summary", result.summary);
  for (const auto& r : result.reports) manifest.doc()["outputs"]["reports"].push_back(r);
  json cfg = c.settings.to_json();
  cfg["grid"] = c.grid;
  cfg["parallel"] = c.parallel;
  manifest.doc()["config"] = cfg;
  manifest.doc()["seed"] = c.settings.seed;
  manifest.write(result.summary + ".manifest.json");
  return result;
}

}  // namespace loge

#endif  // LOGE_COMMANDS_HPP
