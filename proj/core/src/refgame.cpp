#include "lexlab/refgame.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "lexlab/error.hpp"

namespace lexlab::refgame {
namespace {

constexpr std::uint64_t kEmbeddingSalt = 1;
constexpr std::uint64_t kInitSalt = 2;
constexpr std::uint64_t kEpisodeSalt = 3;

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

template <class T>
bool parse_number(const std::string& text, T& out) {
  const std::string t = trim(text);
  const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
  return res.ec == std::errc{} && res.ptr == t.data() + t.size() && !t.empty();
}

int argmax(const nn::Vector& v) {
  return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

std::string to_string(ListenerInput v) { return v == ListenerInput::onehot ? "onehot" : "softmax"; }

ListenerInput listener_input_from_string(const std::string& s) {
  if (s == "onehot") return ListenerInput::onehot;
  if (s == "softmax") return ListenerInput::softmax;
  throw DomainError("listener input must be 'onehot' or 'softmax', got '" + s + "'");
}

void GameConfig::validate() const {
  if (vocab_size < 2) throw DomainError("vocabulary size must exceed 1, got " + std::to_string(vocab_size));
  if (!(bias > 0.0 && bias < 1.0)) throw DomainError("bias must lie in (0, 1), got " + std::to_string(bias));
  if (n_classes < 1 || embed_dim < 1 || hidden < 1 || pool_per_class < 1 || trials_per_episode < 1 || window < 1)
    throw DomainError("game counts must be positive");
  if (episodes < 0) throw DomainError("episodes must be non-negative");
  if (!(learning_rate >= 0.0)) throw DomainError("learning rate must be non-negative");
  if (!(noise_scale >= 0.0)) throw DomainError("noise scale must be non-negative");
}

EmbeddingSet make_embeddings(const GameConfig& config, RngStream& rng) {
  config.validate();
  EmbeddingSet e;
  e.n_classes = config.n_classes;
  e.dim = config.embed_dim;
  for (int c = 0; c < e.n_classes; ++c) {
    nn::Vector proto(e.dim);
    for (double& v : proto) v = rng.normal();
    e.prototypes.push_back(proto);
  }
  for (int c = 0; c < e.n_classes; ++c) {
    std::vector<nn::Vector> pool;
    for (int s = 0; s < config.pool_per_class; ++s) {
      nn::Vector x = e.prototypes[c];
      for (double& v : x) v += config.noise_scale * rng.normal();
      pool.push_back(std::move(x));
    }
    e.pools.push_back(std::move(pool));
  }
  return e;
}

EmbeddingSet embeddings_for(const GameConfig& config) {
  RngStream rng = RngStream(config.seed).derive(kEmbeddingSalt);
  return make_embeddings(config, rng);
}

EmbeddingSet load_embeddings(std::istream& in, int n_classes, int dim) {
  if (n_classes < 1 || dim < 1) throw DomainError("expected class count and dimension must be positive");
  std::string expected_header = "class";
  for (int k = 0; k < dim; ++k) expected_header += ",dim" + std::to_string(k);

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw IngestionError("embedding file is empty", 1);
  ++line_no;
  if (trim(line) != expected_header)
    throw IngestionError("expected header '" + expected_header.substr(0, 40) + (dim > 4 ? "...'" : "'"), line_no);

  std::map<int, std::vector<nn::Vector>> pools;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (trim(line) == expected_header) throw IngestionError("duplicate header", line_no);
    const auto fields = split_csv(trim(line));
    if (static_cast<int>(fields.size()) != dim + 1)
      throw IngestionError("expected " + std::to_string(dim + 1) + " fields, got " + std::to_string(fields.size()),
                           line_no);
    int cls = 0;
    if (!parse_number(fields[0], cls)) throw IngestionError("class label '" + fields[0] + "' is not an integer", line_no);
    if (cls < 0 || cls >= n_classes)
      throw IngestionError("class label " + std::to_string(cls) + " outside 0.." + std::to_string(n_classes - 1),
                           line_no);
    nn::Vector x(dim);
    for (int k = 0; k < dim; ++k)
      if (!parse_number(fields[k + 1], x[k]) || !std::isfinite(x[k]))
        throw IngestionError("value '" + fields[k + 1] + "' in column dim" + std::to_string(k) + " is not a finite number",
                             line_no);
    pools[cls].push_back(std::move(x));
  }

  EmbeddingSet e;
  e.n_classes = n_classes;
  e.dim = dim;
  e.provenance = EmbeddingSet::Provenance::file;
  for (int c = 0; c < n_classes; ++c) {
    auto it = pools.find(c);
    if (it == pools.end()) throw IngestionError("class " + std::to_string(c) + " has no samples");
    nn::Vector mean(dim, 0.0);
    for (const auto& x : it->second)
      for (int k = 0; k < dim; ++k) mean[k] += x[k];
    for (double& v : mean) v /= static_cast<double>(it->second.size());
    e.prototypes.push_back(std::move(mean));
    e.pools.push_back(std::move(it->second));
  }
  return e;
}

EmbeddingSet load_embeddings(const std::string& path, int n_classes, int dim) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open embedding file '" + path + "'");
  return load_embeddings(in, n_classes, dim);
}

void write_embeddings(std::ostream& out, const EmbeddingSet& emb) {
  out << "class";
  for (int k = 0; k < emb.dim; ++k) out << ",dim" << k;
  out << '\n';
  char buf[32];
  for (int c = 0; c < emb.n_classes; ++c)
    for (const auto& x : emb.pools[c]) {
      out << c;
      for (double v : x) {
        const auto res = std::to_chars(buf, buf + sizeof buf, v);
        out << ',';
        out.write(buf, res.ptr - buf);
      }
      out << '\n';
    }
}

Agents init_agents(const GameConfig& config, int dim, RngStream& rng) {
  Agents a;
  a.speaker.layers.push_back(nn::glorot_init(dim, config.hidden, nn::Activation::relu, rng));
  a.speaker.layers.push_back(nn::glorot_init(config.hidden, config.vocab_size, nn::Activation::softmax, rng));
  a.listener.layers.push_back(nn::glorot_init(dim, config.hidden, config.image_activation, rng));
  a.listener.layers.push_back(nn::glorot_init(config.vocab_size, config.hidden, nn::Activation::relu, rng));
  return a;
}

Trial play_episode(const nn::NetworkParams& speaker, const nn::NetworkParams& listener, const EmbeddingSet& emb,
                   RngStream& rng, const PlayOptions& opt) {
  std::vector<nn::Vector> candidates;
  candidates.reserve(emb.n_classes);
  for (int c = 0; c < emb.n_classes; ++c) candidates.push_back(emb.pools[c][rng.below(emb.pools[c].size())]);

  Trial t;
  t.record.target = static_cast<int>(rng.below(emb.n_classes));

  const auto acts = nn::forward(speaker, candidates[t.record.target]);
  const nn::Vector& label_probs = acts.back();
  t.record.label = nn::sample_categorical(label_probs, rng);

  nn::Vector message;
  if (opt.listener_input == ListenerInput::onehot) {
    message.assign(label_probs.size(), 0.0);
    message[t.record.label] = 1.0;
  } else {
    message = label_probs;
  }

  const auto pass = nn::listener_forward(listener, candidates, message);
  t.record.guess = opt.greedy_listener ? argmax(pass.probs) : nn::sample_categorical(pass.probs, rng);
  t.record.reward = t.record.guess == t.record.target ? 1 : 0;

  if (t.record.reward != 0) {
    t.speaker_grad = nn::logprob_grad(speaker, acts, t.record.label);
    t.listener_grad = nn::listener_logprob_grad(listener, candidates, message, pass, t.record.guess);
  }
  return t;
}

TrainResult train_with_steps(const GameConfig& config, const EmbeddingSet& emb, double speaker_step,
                             double listener_step) {
  config.validate();
  if (emb.n_classes != config.n_classes)
    throw ShapeError("embedding set has " + std::to_string(emb.n_classes) + " classes, config expects " +
                     std::to_string(config.n_classes));
  const RngStream root(config.seed);
  RngStream init_rng = root.derive(kInitSalt);
  RngStream episode_rng = root.derive(kEpisodeSalt);

  TrainResult res;
  res.agents = init_agents(config, emb.dim, init_rng);
  auto& [speaker, listener] = res.agents;
  const PlayOptions opt{config.listener_input, false};
  const double inv_batch = 1.0 / config.trials_per_episode;

  for (int ep = 0; ep < config.episodes; ++ep) {
    nn::NetworkParams speaker_acc = speaker.zeros_like();
    nn::NetworkParams listener_acc = listener.zeros_like();
    int wins = 0;
    for (int b = 0; b < config.trials_per_episode; ++b) {
      Trial t = play_episode(speaker, listener, emb, episode_rng, opt);
      t.record.episode = ep;
      if (t.record.reward != 0) {
        ++wins;
        nn::accumulate(speaker_acc, *t.speaker_grad, t.record.reward);
        nn::accumulate(listener_acc, *t.listener_grad, t.record.reward);
      }
      res.records.push_back(t.record);
    }
    // Rewards are folded into the accumulated gradients already.
    if (wins > 0) {
      nn::ascent_update(speaker, speaker_acc, speaker_step * inv_batch, 1.0);
      nn::ascent_update(listener, listener_acc, listener_step * inv_batch, 1.0);
    }
    res.episode_rewards.push_back(wins * inv_batch);
  }
  res.rolling = rolling_accuracy(res.episode_rewards, config.window);
  return res;
}

TrainResult train(const GameConfig& config, const EmbeddingSet& emb) {
  return train_with_steps(config, emb, config.speaker_step(), config.listener_step());
}

double TrainResult::final_accuracy_pct() const { return rolling.empty() ? 0.0 : 100.0 * rolling.back(); }

std::vector<double> rolling_accuracy(std::span<const double> values, int window) {
  if (window < 1) throw DomainError("rolling window must be at least 1");
  std::vector<double> out;
  out.reserve(values.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    sum += values[k];
    if (k >= static_cast<std::size_t>(window)) sum -= values[k - window];
    const std::size_t count = std::min<std::size_t>(k + 1, window);
    out.push_back(sum / static_cast<double>(count));
  }
  return out;
}

std::optional<double> normalized_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ShapeError("normalized_slope: x and y differ in length");
  if (x.size() < 2) return std::nullopt;
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  if (*hi == *lo) return std::nullopt;
  const double span = *hi - *lo;
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += (x[k] - *lo) / span;
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = (x[k] - *lo) / span - mx;
    sxx += dx * dx;
    sxy += dx * (y[k] - my);
  }
  return sxy / sxx;
}

namespace {

SweepResult run_sweep(const std::string& param, const std::vector<GameConfig>& configs,
                      const std::vector<double>& values, const SweepOptions& opt) {
  if (configs.empty()) throw DomainError("sweep needs at least one value");
  if (opt.repeats < 1 || opt.jobs < 1) throw DomainError("sweep repeats and jobs must be positive");

  std::vector<GameConfig> jobs;
  std::vector<double> job_values;
  for (std::size_t k = 0; k < configs.size(); ++k)
    for (int r = 0; r < opt.repeats; ++r) {
      GameConfig c = configs[k];
      c.seed += static_cast<std::uint64_t>(r);
      c.validate();
      jobs.push_back(c);
      job_values.push_back(values[k]);
    }

  auto run_one = [&opt](const GameConfig& c) {
    return train(c, opt.embeddings ? *opt.embeddings : embeddings_for(c));
  };

  SweepResult out;
  out.param = param;
  out.values = values;
  out.traces.resize(jobs.size());
  for (std::size_t start = 0; start < jobs.size(); start += opt.jobs) {
    const std::size_t stop = std::min(jobs.size(), start + static_cast<std::size_t>(opt.jobs));
    std::vector<std::future<TrainResult>> pending;
    for (std::size_t k = start; k < stop; ++k) pending.push_back(std::async(std::launch::async, run_one, jobs[k]));
    for (std::size_t k = start; k < stop; ++k) out.traces[k] = pending[k - start].get();
  }

  for (std::size_t k = 0; k < jobs.size(); ++k)
    out.runs.push_back({job_values[k], out.traces[k].final_accuracy_pct(), jobs[k].seed});
  for (std::size_t k = 0; k < values.size(); ++k) {
    double acc = 0.0;
    for (int r = 0; r < opt.repeats; ++r) acc += out.runs[k * opt.repeats + r].final_accuracy_pct;
    out.accuracy_pct.push_back(acc / opt.repeats);
  }
  out.slope = normalized_slope(out.values, out.accuracy_pct);
  return out;
}

}  // namespace

SweepResult sweep_rank(const GameConfig& tmpl, const std::vector<int>& vocab, double lambda,
                       const SweepOptions& opt) {
  std::vector<GameConfig> configs;
  std::vector<double> values;
  for (int m : vocab) {
    GameConfig c = tmpl;
    c.vocab_size = m;
    c.bias = lambda;
    configs.push_back(c);
    values.push_back(m);
  }
  return run_sweep("vocab_size", configs, values, opt);
}

SweepResult sweep_bias(const GameConfig& tmpl, const std::vector<double>& lambdas, int vocab,
                       const SweepOptions& opt) {
  std::vector<GameConfig> configs;
  for (double l : lambdas) {
    GameConfig c = tmpl;
    c.vocab_size = vocab;
    c.bias = l;
    configs.push_back(c);
  }
  return run_sweep("bias", configs, lambdas, opt);
}

}  // namespace lexlab::refgame
