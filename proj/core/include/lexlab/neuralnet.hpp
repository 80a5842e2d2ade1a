#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lexlab/rng.hpp"

namespace lexlab::nn {

using Vector = std::vector<double>;

enum class Activation { identity, relu, softmax };

std::string to_string(Activation a);
Activation activation_from_string(const std::string& s);

/// Fully connected layer y = act(W x + b) with W stored row-major (out x in).
struct DenseLayer {
  int in = 0;
  int out = 0;
  Vector weights;
  Vector biases;
  Activation activation = Activation::identity;

  DenseLayer() = default;
  DenseLayer(int in_dim, int out_dim, Activation act);

  double& w(int o, int i) { return weights[static_cast<std::size_t>(o) * in + i]; }
  double w(int o, int i) const { return weights[static_cast<std::size_t>(o) * in + i]; }

  friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

/// Ordered layers of one agent. For a sequential policy the layers compose
/// front to back; the dot-product listener stores {image layer, label layer}.
struct NetworkParams {
  std::vector<DenseLayer> layers;

  std::size_t parameter_count() const;
  /// Zero-valued parameters with the same shapes, used to hold gradients.
  NetworkParams zeros_like() const;

  friend bool operator==(const NetworkParams&, const NetworkParams&) = default;
};

/// Glorot uniform: weights on +-sqrt(6 / (in + out)), biases zero.
DenseLayer glorot_init(int in, int out, Activation act, RngStream& rng);

Vector softmax(std::span<const double> logits);

/// Layer outputs of a sequential network; element 0 is the input itself and
/// element k + 1 the output of layer k.
std::vector<Vector> forward(const NetworkParams& params, std::span<const double> input);

/// Draws index i with probability probs[i]. The vector must be non-negative
/// and sum to one within 1e-9.
int sample_categorical(std::span<const double> probs, RngStream& rng);

/// Gradient of log pi(sampled) for a sequential network whose final layer is
/// softmax, using the activations returned by forward().
NetworkParams logprob_grad(const NetworkParams& params, const std::vector<Vector>& activations, int sampled);

/// theta <- theta + step * reward * grad.
void ascent_update(NetworkParams& params, const NetworkParams& grads, double step, double reward);

/// Accumulates scale * other into acc (same shapes).
void accumulate(NetworkParams& acc, const NetworkParams& other, double scale = 1.0);

// Dot-product listener: each candidate goes through the shared image layer,
// the message through the label layer, and candidate scores are the dot
// products of the two embeddings, normalized by softmax.

struct ListenerPass {
  std::vector<Vector> image_embeddings;
  Vector label_embedding;
  Vector scores;
  Vector probs;
};

ListenerPass listener_forward(const NetworkParams& listener, std::span<const Vector> candidates,
                              std::span<const double> message);

NetworkParams listener_logprob_grad(const NetworkParams& listener, std::span<const Vector> candidates,
                                    std::span<const double> message, const ListenerPass& pass, int guess);

/// Text format: a `lexlab-params 1` line, `layers <count>`, then per layer
/// `dense <out> <in> <activation>`, `out` rows of `in` weights and one row of
/// biases. Values are written in shortest round-trip decimal form.
void save_params(std::ostream& os, const NetworkParams& params);
NetworkParams load_params(std::istream& is);

}  // namespace lexlab::nn
