#include "lexlab/neuralnet.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "lexlab/error.hpp"

namespace lexlab::nn {
namespace {

Vector affine(const DenseLayer& l, std::span<const double> x) {
  if (static_cast<int>(x.size()) != l.in)
    throw ShapeError("layer expects input of size " + std::to_string(l.in) + ", got " + std::to_string(x.size()));
  Vector z(l.biases);
  for (int o = 0; o < l.out; ++o) {
    double acc = 0.0;
    for (int i = 0; i < l.in; ++i) acc += l.w(o, i) * x[i];
    z[o] += acc;
  }
  return z;
}

Vector activate(const DenseLayer& l, Vector z) {
  switch (l.activation) {
    case Activation::identity:
      return z;
    case Activation::relu:
      for (double& v : z) v = std::max(v, 0.0);
      return z;
    case Activation::softmax:
      return softmax(z);
  }
  return z;
}

// dOut/dz for elementwise activations, expressed through the layer output.
double elementwise_slope(Activation a, double output) {
  if (a == Activation::relu) return output > 0.0 ? 1.0 : 0.0;
  return 1.0;
}

// Propagates delta (gradient w.r.t. the layer's pre-activation) into the
// layer's weight/bias gradients, returning the gradient w.r.t. its input.
Vector backprop_layer(const DenseLayer& l, DenseLayer& g, std::span<const double> input, const Vector& delta) {
  Vector dx(l.in, 0.0);
  for (int o = 0; o < l.out; ++o) {
    g.biases[o] += delta[o];
    if (delta[o] == 0.0) continue;
    for (int i = 0; i < l.in; ++i) {
      g.w(o, i) += delta[o] * input[i];
      dx[i] += l.w(o, i) * delta[o];
    }
  }
  return dx;
}

void write_double(std::ostream& os, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  os.write(buf, res.ptr - buf);
}

}  // namespace

std::string to_string(Activation a) {
  switch (a) {
    case Activation::identity:
      return "identity";
    case Activation::relu:
      return "relu";
    case Activation::softmax:
      return "softmax";
  }
  return "identity";
}

Activation activation_from_string(const std::string& s) {
  if (s == "identity") return Activation::identity;
  if (s == "relu") return Activation::relu;
  if (s == "softmax") return Activation::softmax;
  throw DomainError("unknown activation '" + s + "'");
}

DenseLayer::DenseLayer(int in_dim, int out_dim, Activation act)
    : in(in_dim), out(out_dim), activation(act) {
  if (in_dim <= 0 || out_dim <= 0) throw ShapeError("layer dimensions must be positive");
  weights.assign(static_cast<std::size_t>(in) * out, 0.0);
  biases.assign(out, 0.0);
}

std::size_t NetworkParams::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers) n += l.weights.size() + l.biases.size();
  return n;
}

NetworkParams NetworkParams::zeros_like() const {
  NetworkParams z;
  for (const auto& l : layers) z.layers.emplace_back(l.in, l.out, l.activation);
  return z;
}

DenseLayer glorot_init(int in, int out, Activation act, RngStream& rng) {
  DenseLayer l(in, out, act);
  const double limit = std::sqrt(6.0 / (in + out));
  for (double& w : l.weights) w = rng.uniform(-limit, limit);
  return l;
}

Vector softmax(std::span<const double> logits) {
  if (logits.empty()) return {};
  const double top = *std::max_element(logits.begin(), logits.end());
  Vector p(logits.size());
  double total = 0.0;
  for (std::size_t k = 0; k < logits.size(); ++k) total += p[k] = std::exp(logits[k] - top);
  for (double& v : p) v /= total;
  return p;
}

std::vector<Vector> forward(const NetworkParams& params, std::span<const double> input) {
  std::vector<Vector> acts;
  acts.reserve(params.layers.size() + 1);
  acts.emplace_back(input.begin(), input.end());
  for (std::size_t k = 0; k < params.layers.size(); ++k) {
    const auto& l = params.layers[k];
    if (l.activation == Activation::softmax && k + 1 != params.layers.size())
      throw ShapeError("softmax is only supported on the final layer");
    acts.push_back(activate(l, affine(l, acts.back())));
  }
  return acts;
}

int sample_categorical(std::span<const double> probs, RngStream& rng) {
  if (probs.empty()) throw DomainError("sample_categorical: empty probability vector");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw DomainError("sample_categorical: negative or NaN probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("sample_categorical: probabilities sum to " + std::to_string(total));
  const double u = rng.uniform();
  double cum = 0.0;
  int last_positive = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] <= 0.0) continue;
    last_positive = static_cast<int>(k);
    cum += probs[k];
    if (u < cum) return static_cast<int>(k);
  }
  return last_positive;
}

NetworkParams logprob_grad(const NetworkParams& params, const std::vector<Vector>& activations, int sampled) {
  if (params.layers.empty() || params.layers.back().activation != Activation::softmax)
    throw ShapeError("logprob_grad needs a network ending in a softmax layer");
  if (activations.size() != params.layers.size() + 1) throw ShapeError("activations do not match the network");
  const Vector& probs = activations.back();
  if (sampled < 0 || sampled >= static_cast<int>(probs.size()))
    throw DomainError("sampled index " + std::to_string(sampled) + " out of range");

  NetworkParams grads = params.zeros_like();
  Vector delta(probs.size());
  for (std::size_t k = 0; k < probs.size(); ++k) delta[k] = (static_cast<int>(k) == sampled ? 1.0 : 0.0) - probs[k];

  for (std::size_t k = params.layers.size(); k-- > 0;) {
    Vector dx = backprop_layer(params.layers[k], grads.layers[k], activations[k], delta);
    if (k == 0) break;
    const auto act = params.layers[k - 1].activation;
    for (std::size_t i = 0; i < dx.size(); ++i) dx[i] *= elementwise_slope(act, activations[k][i]);
    delta = std::move(dx);
  }
  return grads;
}

void accumulate(NetworkParams& acc, const NetworkParams& other, double scale) {
  if (acc.layers.size() != other.layers.size()) throw ShapeError("parameter sets differ in layer count");
  for (std::size_t k = 0; k < acc.layers.size(); ++k) {
    auto& a = acc.layers[k];
    const auto& b = other.layers[k];
    if (a.weights.size() != b.weights.size() || a.biases.size() != b.biases.size())
      throw ShapeError("parameter sets differ in layer shape");
    for (std::size_t i = 0; i < a.weights.size(); ++i) a.weights[i] += scale * b.weights[i];
    for (std::size_t i = 0; i < a.biases.size(); ++i) a.biases[i] += scale * b.biases[i];
  }
}

void ascent_update(NetworkParams& params, const NetworkParams& grads, double step, double reward) {
  const double scale = step * reward;
  if (scale == 0.0) return;
  accumulate(params, grads, scale);
}

ListenerPass listener_forward(const NetworkParams& listener, std::span<const Vector> candidates,
                              std::span<const double> message) {
  if (listener.layers.size() != 2) throw ShapeError("listener needs an image layer and a label layer");
  const auto& image = listener.layers[0];
  const auto& label = listener.layers[1];
  if (image.out != label.out) throw ShapeError("listener image and label embeddings differ in width");
  if (candidates.empty()) throw ShapeError("listener needs at least one candidate");

  ListenerPass pass;
  pass.label_embedding = activate(label, affine(label, message));
  for (const auto& c : candidates) {
    pass.image_embeddings.push_back(activate(image, affine(image, c)));
    const auto& u = pass.image_embeddings.back();
    pass.scores.push_back(std::inner_product(u.begin(), u.end(), pass.label_embedding.begin(), 0.0));
  }
  pass.probs = softmax(pass.scores);
  return pass;
}

NetworkParams listener_logprob_grad(const NetworkParams& listener, std::span<const Vector> candidates,
                                    std::span<const double> message, const ListenerPass& pass, int guess) {
  const int n = static_cast<int>(candidates.size());
  if (guess < 0 || guess >= n) throw DomainError("listener guess " + std::to_string(guess) + " out of range");
  const auto& image = listener.layers[0];
  const auto& label = listener.layers[1];
  NetworkParams grads = listener.zeros_like();

  const Vector& v = pass.label_embedding;
  Vector dv(v.size(), 0.0);
  for (int k = 0; k < n; ++k) {
    const double g = (k == guess ? 1.0 : 0.0) - pass.probs[k];
    const Vector& u = pass.image_embeddings[k];
    Vector du(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      dv[i] += g * u[i];
      du[i] = g * v[i] * elementwise_slope(image.activation, u[i]);
    }
    backprop_layer(image, grads.layers[0], candidates[k], du);
  }
  for (std::size_t i = 0; i < v.size(); ++i) dv[i] *= elementwise_slope(label.activation, v[i]);
  backprop_layer(label, grads.layers[1], message, dv);
  return grads;
}

void save_params(std::ostream& os, const NetworkParams& params) {
  os << "lexlab-params 1\n" << "layers " << params.layers.size() << '\n';
  for (const auto& l : params.layers) {
    os << "dense " << l.out << ' ' << l.in << ' ' << to_string(l.activation) << '\n';
    for (int o = 0; o < l.out; ++o) {
      for (int i = 0; i < l.in; ++i) {
        if (i) os << ' ';
        write_double(os, l.w(o, i));
      }
      os << '\n';
    }
    for (int o = 0; o < l.out; ++o) {
      if (o) os << ' ';
      write_double(os, l.biases[o]);
    }
    os << '\n';
  }
}

NetworkParams load_params(std::istream& is) {
  std::string tag;
  int version = 0;
  if (!(is >> tag >> version) || tag != "lexlab-params" || version != 1)
    throw IngestionError("not a lexlab-params version 1 stream");
  std::size_t count = 0;
  if (!(is >> tag >> count) || tag != "layers") throw IngestionError("missing layer count");
  NetworkParams p;
  for (std::size_t k = 0; k < count; ++k) {
    int out = 0;
    int in = 0;
    std::string act;
    if (!(is >> tag >> out >> in >> act) || tag != "dense")
      throw IngestionError("bad header for layer " + std::to_string(k));
    DenseLayer l(in, out, activation_from_string(act));
    for (double& w : l.weights)
      if (!(is >> w)) throw IngestionError("truncated weights in layer " + std::to_string(k));
    for (double& b : l.biases)
      if (!(is >> b)) throw IngestionError("truncated biases in layer " + std::to_string(k));
    p.layers.push_back(std::move(l));
  }
  return p;
}

}  // namespace lexlab::nn
