#pragma once

#include "plrelu/rational.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace plrelu {

enum class Activation { relu, identity };

inline const char* to_string(Activation a) { return a == Activation::relu ? "relu" : "identity"; }

/// Fully connected layer; weights are row-major, outputs x inputs.
struct DenseLayer {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::vector<double> weights;
  std::vector<double> bias;
  Activation activation = Activation::relu;

  double weight(std::size_t out, std::size_t in) const { return weights[out * inputs + in]; }
};

struct LayerShape {
  std::size_t inputs;
  std::size_t outputs;
  Activation activation;
  friend bool operator==(const LayerShape&, const LayerShape&) = default;
};

class ReluNetwork {
public:
  ReluNetwork() = default;
  ReluNetwork(std::size_t input_dim, std::vector<DenseLayer> layers)
      : input_dim_(input_dim), layers_(std::move(layers)) {
    std::size_t width = input_dim_;
    for (std::size_t i = 0; i < layers_.size(); ++i) {
      const auto& l = layers_[i];
      if (l.inputs != width)
        throw std::invalid_argument("layer " + std::to_string(i) + " expects " + std::to_string(l.inputs) +
                                    " inputs but receives " + std::to_string(width));
      if (l.weights.size() != l.inputs * l.outputs || l.bias.size() != l.outputs)
        throw std::invalid_argument("layer " + std::to_string(i) + " has inconsistent weight/bias sizes");
      width = l.outputs;
    }
    if (!layers_.empty() && (layers_.back().activation != Activation::identity || layers_.back().outputs != 1))
      throw std::invalid_argument("final layer must be a single identity output");
  }

  std::size_t input_dim() const { return input_dim_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }

  double forward(std::span<const double> x) const {
    if (x.size() != input_dim_)
      throw std::invalid_argument("network takes " + std::to_string(input_dim_) + " inputs, got " +
                                  std::to_string(x.size()));
    if (layers_.empty()) throw std::logic_error("network has no layers");
    std::vector<double> cur(x.begin(), x.end()), next;
    for (const auto& l : layers_) {
      next.assign(l.outputs, 0.0);
      for (std::size_t o = 0; o < l.outputs; ++o) {
        double acc = l.bias[o];
        const double* row = l.weights.data() + o * l.inputs;
        for (std::size_t i = 0; i < l.inputs; ++i) acc += row[i] * cur[i];
        next[o] = l.activation == Activation::relu ? std::max(acc, 0.0) : acc;
      }
      cur.swap(next);
    }
    return cur.front();
  }

  /// Number of relu layers.
  std::size_t depth() const {
    return static_cast<std::size_t>(std::count_if(layers_.begin(), layers_.end(),
                                                  [](const DenseLayer& l) { return l.activation == Activation::relu; }));
  }
  std::size_t width() const {
    std::size_t w = 0;
    for (const auto& l : layers_) w = std::max(w, l.outputs);
    return w;
  }
  /// Total relu units.
  std::size_t size() const {
    std::size_t s = 0;
    for (const auto& l : layers_)
      if (l.activation == Activation::relu) s += l.outputs;
    return s;
  }

  std::vector<LayerShape> shape_signature() const {
    std::vector<LayerShape> out;
    for (const auto& l : layers_) out.push_back({l.inputs, l.outputs, l.activation});
    return out;
  }

private:
  std::size_t input_dim_ = 0;
  std::vector<DenseLayer> layers_;
};

inline double forward(const ReluNetwork& net, std::span<const double> x) { return net.forward(x); }

struct NetworkStats {
  std::size_t depth = 0;
  std::size_t width = 0;
  std::size_t size = 0;
  double c0 = 0;  ///< depth - 2 log2(d)
  Scalar c1 = 0;  ///< width / (d^2 n)
  Scalar c2 = 0;  ///< size / (d^2 n)
};

inline NetworkStats stats(const ReluNetwork& net, std::size_t d, std::size_t n) {
  NetworkStats s;
  if (net.layers().empty()) return s;
  s.depth = net.depth();
  s.width = net.width();
  s.size = net.size();
  if (d > 0) s.c0 = static_cast<double>(s.depth) - 2.0 * std::log2(static_cast<double>(d));
  if (d > 0 && n > 0) {
    const Scalar scale(static_cast<unsigned long>(d * d * n));
    s.c1 = Scalar(static_cast<unsigned long>(s.width)) / scale;
    s.c2 = Scalar(static_cast<unsigned long>(s.size)) / scale;
  }
  return s;
}

} // namespace plrelu
