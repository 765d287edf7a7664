// Copyright 2026 The pflsim Authors. All Rights Reserved.
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

#include "pflsim/cli/config.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "pflsim/core/error.h"

namespace pflsim::cli {

namespace {

const std::vector<KeyInfo> kKeys = {
    {"preset", "", "named preset applied before the file"},
    {"data.source", "synthetic", "synthetic | csv"},
    {"data.train_path", "", "partition CSV for the training population (csv source)"},
    {"data.val_path", "", "partition CSV for the validation population (csv source)"},
    {"data.num_users", "1000", "training users (synthetic)"},
    {"data.points_per_user", "50", "datapoints per user (synthetic)"},
    {"data.partition", "iid", "iid | dirichlet"},
    {"data.dirichlet_alpha", "0.1", "concentration for the dirichlet partition"},
    {"data.dim", "32", "feature dimension (synthetic)"},
    {"data.num_classes", "10", "number of classes (synthetic)"},
    {"data.margin", "6", "minimum distance between class centers (synthetic)"},
    {"data.val_users", "100", "validation users, IID (synthetic)"},
    {"data.central_eval_points", "2000", "held-out points for central evaluation (synthetic)"},
    {"model.type", "logistic", "logistic | mlp | quadratic"},
    {"model.hidden", "32", "hidden units of the mlp"},
    {"algorithm.name", "fedavg", "fedavg | fedprox | adafedprox | scaffold"},
    {"algorithm.mu", "0.01", "proximal strength (initial value for adafedprox)"},
    {"algorithm.mu_decrease", "0.9", "adafedprox factor when the loss improves"},
    {"algorithm.mu_increase", "1.1", "adafedprox factor when the loss worsens"},
    {"algorithm.mu_min", "0.0001", "adafedprox lower clamp"},
    {"algorithm.mu_max", "1", "adafedprox upper clamp"},
    {"algorithm.weighting", "auto", "auto | datapoints | user (auto: user when DP is on)"},
    {"local.learning_rate", "0.1", "local SGD learning rate"},
    {"local.epochs", "1", "local epochs"},
    {"local.batch_size", "10", "local minibatch size"},
    {"central.optimizer", "sgd", "sgd | adam"},
    {"central.learning_rate", "1", "central learning rate"},
    {"central.lr_warmup", "0", "linear warmup iterations for the central lr"},
    {"central.adam_beta1", "0.9", "Adam beta1"},
    {"central.adam_beta2", "0.99", "Adam beta2"},
    {"central.adam_adaptivity", "0.1", "Adam adaptivity degree (denominator offset)"},
    {"engine.iterations", "100", "central iterations T"},
    {"engine.cohort_size", "50", "cohort size C"},
    {"engine.eval_frequency", "10", "validation every this many iterations (0: never)"},
    {"engine.eval_cohort_size", "0", "validation cohort size (0: all validation users)"},
    {"engine.eval_batch_size", "10000", "evaluation batch size"},
    {"engine.num_workers", "1", "parallel workers"},
    {"engine.seed", "0", "global seed"},
    {"engine.scheduling", "greedy", "greedy | none"},
    {"engine.base_weight", "median", "zero | median | <number>"},
    {"engine.sampling", "fixed", "fixed | poisson (rate cohort_size / num_users)"},
    {"privacy.mechanism", "none", "none | gaussian | laplace | gaussian_local_approx"},
    {"privacy.epsilon", "2", "target epsilon"},
    {"privacy.delta", "", "target delta (empty: 1 / population)"},
    {"privacy.population", "1000000", "population size M used for accounting"},
    {"privacy.noise_cohort_size", "1000", "noise cohort size used for accounting and rescaling"},
    {"privacy.clipping_bound", "1", "clipping bound S"},
    {"privacy.noise_multiplier", "", "fixed noise multiplier (empty: calibrate)"},
    {"privacy.local_noise_std", "0", "per-user noise std for gaussian_local_approx"},
    {"privacy.adaptive_clipping", "false", "adapt the clipping bound toward a clipped quantile"},
    {"privacy.adaptive_clipping.quantile", "0.5", "target fraction of clipped users"},
    {"privacy.adaptive_clipping.lr", "0.2", "adaptive clipping learning rate"},
    {"privacy.adaptive_clipping.noise_std", "0", "noise std on the clipped count (0: not privatized)"},
    {"output.metrics", "metrics.csv", "metrics CSV file name inside the output directory"},
    {"output.metadata", "metadata.json", "metadata JSON file name inside the output directory"},
    {"output.checkpoint", "checkpoint.csv", "final model checkpoint file name"},
};

using Preset = std::vector<std::pair<std::string_view, std::string_view>>;

const Preset kCifarIid = {
    {"engine.iterations", "1500"},       {"engine.cohort_size", "50"},
    {"local.learning_rate", "0.1"},      {"local.epochs", "1"},
    {"local.batch_size", "10"},          {"data.num_users", "1000"},
    {"data.points_per_user", "50"},      {"data.partition", "iid"},
    {"central.optimizer", "sgd"},        {"central.learning_rate", "1.0"},
    {"engine.eval_frequency", "10"},     {"engine.eval_batch_size", "10000"},
};

Preset with(Preset base, const Preset& extra) {
  for (const auto& kv : extra) {
    auto it = std::find_if(base.begin(), base.end(), [&](const auto& e) { return e.first == kv.first; });
    if (it != base.end()) {
      it->second = kv.second;
    } else {
      base.push_back(kv);
    }
  }
  return base;
}

const Preset kDpCifar = {
    {"privacy.mechanism", "gaussian"},      {"privacy.clipping_bound", "0.4"},
    {"privacy.noise_cohort_size", "1000"},  {"privacy.epsilon", "2.0"},
    {"privacy.delta", "1e-6"},              {"privacy.population", "1000000"},
};

const Preset kStackOverflow = {
    {"engine.iterations", "2000"},        {"engine.cohort_size", "400"},
    {"central.optimizer", "adam"},        {"central.learning_rate", "0.1"},
    {"central.lr_warmup", "50"},          {"central.adam_beta1", "0.9"},
    {"central.adam_beta2", "0.99"},       {"central.adam_adaptivity", "0.1"},
    {"local.learning_rate", "0.3"},       {"local.epochs", "1"},
    {"local.batch_size", "16"},           {"engine.eval_frequency", "20"},
    {"engine.eval_batch_size", "1024"},   {"data.num_users", "1000"},
};

const Preset kDpStackOverflow = {
    {"privacy.mechanism", "gaussian"},      {"privacy.clipping_bound", "1.0"},
    {"privacy.noise_cohort_size", "5000"},  {"privacy.epsilon", "2.0"},
    {"privacy.delta", "1e-6"},              {"privacy.population", "1000000"},
};

const std::map<std::string, Preset, std::less<>>& presets() {
  static const std::map<std::string, Preset, std::less<>> table = {
      {"cifar10-iid-like", kCifarIid},
      {"cifar10-noniid-like", with(kCifarIid, {{"data.partition", "dirichlet"}, {"data.dirichlet_alpha", "0.1"}})},
      {"cifar10-dp-like", with(kCifarIid, kDpCifar)},
      {"cifar10-noniid-dp-like",
       with(with(kCifarIid, {{"data.partition", "dirichlet"}, {"data.dirichlet_alpha", "0.1"}}), kDpCifar)},
      {"stackoverflow-like", kStackOverflow},
      {"stackoverflow-dp-like", with(kStackOverflow, kDpStackOverflow)},
      {"smoke",
       {{"engine.iterations", "5"}, {"engine.cohort_size", "10"}, {"data.num_users", "50"},
        {"data.points_per_user", "20"}, {"data.val_users", "10"}, {"data.central_eval_points", "200"},
        {"data.dim", "8"}, {"data.num_classes", "3"}, {"engine.eval_frequency", "2"}}},
  };
  return table;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string_view leaf(std::string_view key) {
  const auto dot = key.rfind('.');
  return dot == std::string_view::npos ? key : key.substr(dot + 1);
}

bool is_known(std::string_view key) {
  return std::any_of(kKeys.begin(), kKeys.end(), [&](const KeyInfo& k) { return k.key == key; });
}

struct Entry {
  std::string value;
  std::string origin;
};

using Raw = std::map<std::string, Entry, std::less<>>;

// Typed accessors that record problems instead of throwing.
class Reader {
 public:
  Reader(const Raw& raw, std::vector<std::string>& problems) : raw_(raw), problems_(problems) {}

  const std::string& text(std::string_view key) const { return raw_.find(key)->second.value; }

  void fail(std::string_view key, const std::string& what) const {
    const auto it = raw_.find(key);
    const std::string origin = it == raw_.end() ? "config" : it->second.origin;
    problems_.push_back(origin + ": " + std::string(key) + ": " + what);
  }

  std::optional<double> real(std::string_view key, double lo, double hi, bool lo_open = false) const {
    const std::string& s = text(key);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
      fail(key, "expected a number, got '" + s + "'");
      return std::nullopt;
    }
    if ((lo_open ? !(v > lo) : !(v >= lo)) || v > hi) {
      std::ostringstream os;
      os << "value " << s << " out of range " << (lo_open ? "(" : "[") << lo << ", " << hi << "]";
      fail(key, os.str());
      return std::nullopt;
    }
    return v;
  }

  std::optional<double> optional_real(std::string_view key, double lo, double hi, bool lo_open) const {
    if (text(key).empty()) return std::nullopt;
    return real(key, lo, hi, lo_open);
  }

  std::optional<std::int64_t> integer(std::string_view key, std::int64_t lo,
                                      std::int64_t hi = std::numeric_limits<std::int64_t>::max()) const {
    const std::string& s = text(key);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      fail(key, "expected an integer, got '" + s + "'");
      return std::nullopt;
    }
    if (v < lo || v > hi) {
      fail(key, "value " + s + " out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
      return std::nullopt;
    }
    return v;
  }

  std::optional<bool> boolean(std::string_view key) const {
    const std::string& s = text(key);
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    fail(key, "expected true or false, got '" + s + "'");
    return std::nullopt;
  }

  template <typename T>
  std::optional<T> choice(std::string_view key,
                          std::initializer_list<std::pair<std::string_view, T>> options) const {
    const std::string& s = text(key);
    std::string names;
    for (const auto& [name, value] : options) {
      if (name == s) return value;
      names += names.empty() ? "" : ", ";
      names += name;
    }
    fail(key, "unknown value '" + s + "' (expected one of: " + names + ")");
    return std::nullopt;
  }

 private:
  const Raw& raw_;
  std::vector<std::string>& problems_;
};

template <typename T, typename U>
void assign(T& field, const std::optional<U>& v) {
  if (v) field = static_cast<T>(*v);
}

RunConfig build(const Raw& raw, std::vector<std::string>& problems) {
  Reader r(raw, problems);
  RunConfig c;
  c.preset = r.text("preset");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr std::int64_t kMaxInt = std::numeric_limits<std::int64_t>::max();

  // data
  assign(c.data.source, r.choice<DataSource>("data.source", {{"synthetic", DataSource::kSynthetic},
                                                             {"csv", DataSource::kCsv}}));
  c.data.train_path = r.text("data.train_path");
  c.data.val_path = r.text("data.val_path");
  assign(c.data.num_users, r.integer("data.num_users", 1));
  assign(c.data.points_per_user, r.integer("data.points_per_user", 1));
  assign(c.data.partition, r.choice<PartitionKind>("data.partition", {{"iid", PartitionKind::kIid},
                                                                      {"dirichlet", PartitionKind::kDirichlet}}));
  assign(c.data.dirichlet_alpha, r.real("data.dirichlet_alpha", 0.0, kInf, true));
  assign(c.data.dim, r.integer("data.dim", 1));
  assign(c.data.num_classes, r.integer("data.num_classes", 2, 1 << 20));
  assign(c.data.margin, r.real("data.margin", 0.0, kInf, true));
  assign(c.data.val_users, r.integer("data.val_users", 0));
  assign(c.data.central_eval_points, r.integer("data.central_eval_points", 0));

  // model
  assign(c.model.kind, r.choice<ModelKind>("model.type", {{"logistic", ModelKind::kLogistic},
                                                          {"mlp", ModelKind::kMlp},
                                                          {"quadratic", ModelKind::kQuadratic}}));
  assign(c.model.hidden, r.integer("model.hidden", 1));

  // algorithm
  assign(c.algorithm.kind, r.choice<AlgorithmKind>("algorithm.name", {{"fedavg", AlgorithmKind::kFedAvg},
                                                                      {"fedprox", AlgorithmKind::kFedProx},
                                                                      {"adafedprox", AlgorithmKind::kAdaFedProx},
                                                                      {"scaffold", AlgorithmKind::kScaffold}}));
  assign(c.algorithm.mu, r.real("algorithm.mu", 0.0, kInf));
  assign(c.algorithm.mu_rule.decrease_factor, r.real("algorithm.mu_decrease", 0.0, 1.0, true));
  assign(c.algorithm.mu_rule.increase_factor, r.real("algorithm.mu_increase", 1.0, kInf));
  assign(c.algorithm.mu_rule.min_mu, r.real("algorithm.mu_min", 0.0, kInf));
  assign(c.algorithm.mu_rule.max_mu, r.real("algorithm.mu_max", 0.0, kInf));
  enum class WeightingChoice { kAuto, kDatapoints, kUser };
  const auto weighting = r.choice<WeightingChoice>(
      "algorithm.weighting",
      {{"auto", WeightingChoice::kAuto}, {"datapoints", WeightingChoice::kDatapoints}, {"user", WeightingChoice::kUser}});

  // local + central
  assign(c.local.learning_rate, r.real("local.learning_rate", 0.0, kInf, true));
  assign(c.local.epochs, r.integer("local.epochs", 0));
  assign(c.local.batch_size, r.integer("local.batch_size", 1));
  assign(c.central.optimizer, r.choice<OptimizerKind>("central.optimizer", {{"sgd", OptimizerKind::kSgd},
                                                                            {"adam", OptimizerKind::kAdam}}));
  assign(c.central.learning_rate, r.real("central.learning_rate", 0.0, kInf));
  assign(c.central.lr_warmup, r.integer("central.lr_warmup", 0));
  assign(c.central.adam.beta1, r.real("central.adam_beta1", 0.0, 1.0));
  assign(c.central.adam.beta2, r.real("central.adam_beta2", 0.0, 1.0));
  assign(c.central.adam.adaptivity_degree, r.real("central.adam_adaptivity", 0.0, kInf, true));

  // engine
  assign(c.engine.iterations, r.integer("engine.iterations", 0));
  assign(c.engine.cohort_size, r.integer("engine.cohort_size", 1));
  assign(c.engine.eval_frequency, r.integer("engine.eval_frequency", 0));
  assign(c.engine.eval_cohort_size, r.integer("engine.eval_cohort_size", 0));
  assign(c.engine.eval_batch_size, r.integer("engine.eval_batch_size", 1));
  assign(c.engine.num_workers, r.integer("engine.num_workers", 1, 1024));
  assign(c.engine.seed, r.integer("engine.seed", 0, kMaxInt));
  assign(c.engine.scheduling, r.choice<engine::SchedulingPolicy>(
                                  "engine.scheduling", {{"greedy", engine::SchedulingPolicy::kGreedy},
                                                        {"none", engine::SchedulingPolicy::kNone}}));
  if (const std::string& base = r.text("engine.base_weight"); base == "zero") {
    c.engine.base = engine::BaseWeightPolicy::zero();
  } else if (base == "median") {
    c.engine.base = engine::BaseWeightPolicy::median();
  } else if (const auto v = r.real("engine.base_weight", 0.0, kInf)) {
    c.engine.base = engine::BaseWeightPolicy::fixed(*v);
  }
  assign(c.engine.sampling, r.choice<data::CohortMode::Kind>(
                                "engine.sampling", {{"fixed", data::CohortMode::Kind::kFixedSize},
                                                    {"poisson", data::CohortMode::Kind::kPoisson}}));

  // privacy
  privacy::PrivacyConfig& p = c.privacy;
  {
    const std::string& m = r.text("privacy.mechanism");
    try {
      p.mechanism = privacy::parse_mechanism(m);
    } catch (const Error&) {
      r.fail("privacy.mechanism",
             "unknown value '" + m + "' (expected one of: none, gaussian, laplace, gaussian_local_approx)");
    }
  }
  assign(p.epsilon, r.real("privacy.epsilon", 0.0, kInf, true));
  p.delta = r.optional_real("privacy.delta", 0.0, 1.0, true);
  assign(p.population, r.integer("privacy.population", 1));
  assign(p.noise_cohort_size, r.integer("privacy.noise_cohort_size", 1));
  assign(p.clip_bound, r.real("privacy.clipping_bound", 0.0, kInf, true));
  p.noise_multiplier = r.optional_real("privacy.noise_multiplier", 0.0, kInf, false);
  assign(p.local_noise_std, r.real("privacy.local_noise_std", 0.0, kInf));
  const auto adaptive = r.boolean("privacy.adaptive_clipping");
  privacy::AdaptiveClipping ac;
  assign(ac.quantile, r.real("privacy.adaptive_clipping.quantile", 0.0, 1.0, true));
  assign(ac.learning_rate, r.real("privacy.adaptive_clipping.lr", 0.0, kInf, true));
  assign(ac.count_noise_std, r.real("privacy.adaptive_clipping.noise_std", 0.0, kInf));
  if (adaptive && *adaptive) p.adaptive_clip = ac;
  p.cohort_size = c.engine.cohort_size;
  p.total_iterations = std::max<std::int64_t>(1, c.engine.iterations);
  p.noise_seed = c.engine.seed;

  c.output.metrics = r.text("output.metrics");
  c.output.metadata = r.text("output.metadata");
  c.output.checkpoint = r.text("output.checkpoint");

  // Cross-field checks.
  const bool dp = p.mechanism != privacy::Mechanism::kNone;
  if (weighting) {
    switch (*weighting) {
      case WeightingChoice::kAuto:
        c.algorithm.weighting = dp ? Weighting::kUniform : Weighting::kDatapoints;
        break;
      case WeightingChoice::kUser:
        c.algorithm.weighting = Weighting::kUniform;
        break;
      case WeightingChoice::kDatapoints:
        c.algorithm.weighting = Weighting::kDatapoints;
        if (dp) {
          r.fail("algorithm.weighting",
                 "datapoint weighting cannot be combined with a privacy mechanism; the average would "
                 "be divided by an unprotected datapoint count (use 'user' or 'auto')");
        }
        break;
    }
  }
  if (c.algorithm.mu_rule.min_mu > c.algorithm.mu_rule.max_mu) {
    r.fail("algorithm.mu_min", "must not exceed algorithm.mu_max");
  }
  if (c.data.source == DataSource::kCsv) {
    if (c.data.train_path.empty()) r.fail("data.train_path", "required when data.source = csv");
    if (c.engine.eval_frequency > 0 && c.data.val_path.empty()) {
      r.fail("data.val_path", "required when data.source = csv and engine.eval_frequency > 0");
    }
  } else {
    if (c.engine.sampling == data::CohortMode::Kind::kFixedSize && c.engine.cohort_size > c.data.num_users) {
      r.fail("engine.cohort_size", "cohort size " + std::to_string(c.engine.cohort_size) +
                                       " exceeds data.num_users = " + std::to_string(c.data.num_users));
    }
    if (c.engine.eval_frequency > 0 && c.data.val_users < 1) {
      r.fail("data.val_users", "must be >= 1 when engine.eval_frequency > 0");
    }
    if (c.engine.eval_cohort_size > c.data.val_users) {
      r.fail("engine.eval_cohort_size", "exceeds data.val_users = " + std::to_string(c.data.val_users));
    }
  }
  if (dp) {
    try {
      p.validate();
    } catch (const Error& e) {
      r.fail("privacy.mechanism", e.message());
    }
  } else if (p.adaptive_clip) {
    r.fail("privacy.adaptive_clipping", "requires privacy.mechanism other than none");
  }
  if (p.mechanism == privacy::Mechanism::kGaussianLocalApprox && p.noise_multiplier) {
    r.fail("privacy.noise_multiplier", "not used by gaussian_local_approx; set privacy.local_noise_std");
  }
  for (const char* key : {"output.metrics", "output.metadata", "output.checkpoint"}) {
    if (r.text(key).empty()) r.fail(key, "must not be empty");
  }

  for (const auto& k : kKeys) {
    std::string value = r.text(k.key);
    if (k.key == "algorithm.weighting") value = c.algorithm.weighting == Weighting::kUniform ? "user" : "datapoints";
    c.resolved.emplace_back(std::string(k.key), std::move(value));
  }
  return c;
}

// Parses `key = value` lines into `out`, recording problems.
void read_lines(std::string_view text, std::string_view origin, Raw& out, std::vector<std::string>& problems) {
  std::map<std::string, std::size_t> first_line;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    const std::string where = std::string(origin) + ":" + std::to_string(line_no);
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      problems.push_back(where + ": expected 'key = value', got '" + trimmed + "'");
      continue;
    }
    const std::string key = trim(std::string_view(trimmed).substr(0, eq));
    const std::string value = trim(std::string_view(trimmed).substr(eq + 1));
    if (!is_known(key)) {
      problems.push_back(where + ": unknown key '" + key + "' (did you mean '" + nearest_key(key) + "'?)");
      continue;
    }
    if (const auto it = first_line.find(key); it != first_line.end()) {
      problems.push_back(where + ": " + key + ": duplicate key (first set on line " +
                         std::to_string(it->second) + ")");
      continue;
    }
    first_line[key] = line_no;
    out[key] = Entry{value, where};
  }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : Error(ErrorCode::kConfig,
            [&] {
              std::string joined;
              for (const auto& p : problems) joined += (joined.empty() ? "" : "\n") + p;
              return joined;
            }()),
      problems_(std::move(problems)) {}

const std::vector<KeyInfo>& config_keys() { return kKeys; }

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, values] : presets()) names.push_back(name);
  return names;
}

const std::vector<std::pair<std::string_view, std::string_view>>& preset_values(std::string_view name) {
  const auto it = presets().find(name);
  if (it == presets().end()) {
    throw ConfigError({"unknown preset '" + std::string(name) + "'"});
  }
  return it->second;
}

std::string nearest_key(std::string_view key) {
  std::string_view best;
  std::size_t best_score = std::numeric_limits<std::size_t>::max();
  for (const auto& k : kKeys) {
    const std::size_t score = std::min(edit_distance(key, k.key), edit_distance(leaf(key), leaf(k.key)));
    if (score < best_score) {
      best_score = score;
      best = k.key;
    }
  }
  return std::string(best);
}

RunConfig parse_config_text(std::string_view text, std::string_view origin,
                            std::span<const std::string> overrides) {
  std::vector<std::string> problems;
  Raw file;
  read_lines(text, origin, file, problems);

  Raw cli;
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    const std::string key = trim(std::string_view(o).substr(0, eq));
    if (eq == std::string::npos) {
      problems.push_back("--set " + o + ": expected key=value");
    } else if (!is_known(key)) {
      problems.push_back("--set " + o + ": unknown key '" + key + "' (did you mean '" + nearest_key(key) + "'?)");
    } else {
      cli[key] = Entry{trim(std::string_view(o).substr(eq + 1)), "--set " + key};
    }
  }

  Raw raw;
  for (const auto& k : kKeys) raw[std::string(k.key)] = Entry{std::string(k.default_value), "default"};
  std::string preset = file.count("preset") ? file.at("preset").value : "";
  if (cli.count("preset")) preset = cli.at("preset").value;
  if (!preset.empty()) {
    const auto it = presets().find(preset);
    if (it == presets().end()) {
      std::string names;
      for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
      const std::string origin_of = cli.count("preset") ? cli.at("preset").origin : file.at("preset").origin;
      problems.push_back(origin_of + ": preset: unknown preset '" + preset + "' (expected one of: " + names + ")");
    } else {
      for (const auto& [k, v] : it->second) raw[std::string(k)] = Entry{std::string(v), "preset " + preset};
    }
  }
  for (auto& [k, e] : file) raw[k] = e;
  for (auto& [k, e] : cli) raw[k] = e;

  RunConfig config = build(raw, problems);
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return config;
}

RunConfig parse_config(const std::filesystem::path& path, std::span<const std::string> overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError({path.string() + ": cannot read config file"});
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path.string(), overrides);
}

}  // namespace pflsim::cli
