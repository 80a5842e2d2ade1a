#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexlab/neuralnet.hpp"
#include "lexlab/rng.hpp"

namespace lexlab::refgame {

/// What the listener receives from the speaker: the one-hot of the sampled
/// label, or the speaker's full softmax vector.
enum class ListenerInput { onehot, softmax };

std::string to_string(ListenerInput v);
ListenerInput listener_input_from_string(const std::string& s);

struct GameConfig {
  int n_classes = 10;
  int vocab_size = 10;
  int embed_dim = 64;
  int hidden = 32;
  int pool_per_class = 100;
  int episodes = 1000;
  int trials_per_episode = 1;
  int window = 100;
  double learning_rate = 0.001;
  double bias = 0.5;
  double noise_scale = 0.1;
  ListenerInput listener_input = ListenerInput::onehot;
  nn::Activation image_activation = nn::Activation::relu;
  std::uint64_t seed = 1;

  double speaker_step() const { return learning_rate * (1.0 - bias); }
  double listener_step() const { return learning_rate * bias; }
  /// Throws DomainError on a vocabulary of fewer than two labels, a bias
  /// outside (0, 1) or any non-positive count. Zero episodes is allowed.
  void validate() const;
};

struct EmbeddingSet {
  enum class Provenance { synthetic, file };

  int n_classes = 0;
  int dim = 0;
  std::vector<nn::Vector> prototypes;
  std::vector<std::vector<nn::Vector>> pools;
  Provenance provenance = Provenance::synthetic;
};

/// Gaussian class prototypes (unit variance per dimension); every pool sample
/// is its prototype plus Gaussian noise of config.noise_scale.
EmbeddingSet make_embeddings(const GameConfig& config, RngStream& rng);

/// Reads the CSV embedding format: header `class,dim0,...,dim{d-1}`, one row
/// per sample with integer class labels 0..n-1. Prototypes are class means.
EmbeddingSet load_embeddings(std::istream& in, int n_classes, int dim);
EmbeddingSet load_embeddings(const std::string& path, int n_classes, int dim);
void write_embeddings(std::ostream& out, const EmbeddingSet& emb);

struct Agents {
  nn::NetworkParams speaker;   // d -> hidden (ReLU) -> m (softmax)
  nn::NetworkParams listener;  // {image d -> hidden, label m -> hidden (ReLU)}
};

Agents init_agents(const GameConfig& config, int dim, RngStream& rng);

struct EpisodeRecord {
  int episode = 0;
  int target = 0;
  int label = 0;
  int guess = 0;
  int reward = 0;

  friend bool operator==(const EpisodeRecord&, const EpisodeRecord&) = default;
};

struct PlayOptions {
  ListenerInput listener_input = ListenerInput::onehot;
  /// Listener takes its argmax instead of sampling (evaluation only).
  bool greedy_listener = false;
};

struct Trial {
  EpisodeRecord record;
  /// Log-probability gradients of the sampled label and guess. Only filled
  /// when the reward is 1, since a zero reward contributes no update.
  std::optional<nn::NetworkParams> speaker_grad;
  std::optional<nn::NetworkParams> listener_grad;
};

/// One round: draw a sample per class, pick a target uniformly, let the
/// speaker emit a label and the listener guess among the candidates.
Trial play_episode(const nn::NetworkParams& speaker, const nn::NetworkParams& listener, const EmbeddingSet& emb,
                   RngStream& rng, const PlayOptions& opt = {});

struct TrainResult {
  std::vector<EpisodeRecord> records;
  std::vector<double> episode_rewards;  // mean reward of each episode
  std::vector<double> rolling;          // rolling accuracy, fraction in [0, 1]
  Agents agents;

  /// Last rolling accuracy in percent, 0 for an empty run.
  double final_accuracy_pct() const;
};

/// Bias-weighted REINFORCE: per episode the speaker ascends with step
/// learning_rate * (1 - bias) and the listener with learning_rate * bias, each
/// scaled by the reward. Agents and episode stream derive from config.seed.
TrainResult train(const GameConfig& config, const EmbeddingSet& emb);

/// As train() with explicit per-agent step sizes.
TrainResult train_with_steps(const GameConfig& config, const EmbeddingSet& emb, double speaker_step,
                             double listener_step);

/// Element k is the mean of values[max(0, k - window + 1) .. k].
std::vector<double> rolling_accuracy(std::span<const double> values, int window);

struct SweepRun {
  double value = 0.0;
  double final_accuracy_pct = 0.0;
  std::uint64_t seed = 0;
};

struct SweepResult {
  std::string param;
  std::vector<double> values;
  std::vector<double> accuracy_pct;  // per value, mean over repeats
  std::vector<SweepRun> runs;
  std::vector<TrainResult> traces;  // one per run, same order as runs
  /// OLS slope of accuracy (%) on the min-max normalized parameter. Empty
  /// for fewer than two distinct values.
  std::optional<double> slope;
};

struct SweepOptions {
  int repeats = 1;  // seeds config.seed .. config.seed + repeats - 1
  int jobs = 1;     // concurrent training runs
  /// Shared by every run when set; otherwise each run builds synthetic
  /// embeddings from its own seed.
  std::optional<EmbeddingSet> embeddings;
};

SweepResult sweep_rank(const GameConfig& tmpl, const std::vector<int>& vocab, double lambda = 0.5,
                       const SweepOptions& opt = {});
SweepResult sweep_bias(const GameConfig& tmpl, const std::vector<double>& lambdas, int vocab = 10,
                       const SweepOptions& opt = {});

std::optional<double> normalized_slope(std::span<const double> x, std::span<const double> y);

/// Synthetic embeddings drawn from a stream derived from config.seed.
EmbeddingSet embeddings_for(const GameConfig& config);

}  // namespace lexlab::refgame
