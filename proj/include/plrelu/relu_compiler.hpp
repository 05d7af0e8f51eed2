#pragma once

#include "plrelu/cone_decomposition.hpp"
#include "plrelu/relu_network.hpp"
#include "plrelu/simplex_function.hpp"

#include <cstdint>
#include <vector>

namespace plrelu {

namespace detail {

/// Affine expression over the outputs of the previous layer (or the input).
struct Signal {
  std::vector<Scalar> weights;
  Scalar bias;
};

/// A relu layer kept in exact arithmetic until emission.
struct ExactLayer {
  std::size_t inputs = 0;
  std::vector<Signal> units; ///< pre-activations
};

inline Signal combine(const Signal& a, const Scalar& ca, const Signal& b, const Scalar& cb) {
  Signal out{std::vector<Scalar>(a.weights.size()), ca * a.bias + cb * b.bias};
  for (std::size_t i = 0; i < out.weights.size(); ++i) out.weights[i] = ca * a.weights[i] + cb * b.weights[i];
  return out;
}

inline Signal unit_combination(std::size_t width, std::initializer_list<std::pair<std::size_t, Scalar>> terms) {
  Signal s{std::vector<Scalar>(width, Scalar(0)), 0};
  for (const auto& [i, c] : terms) s.weights[i] = c;
  return s;
}

/// One level of the min tree: pairs become four-unit min gadgets, an odd
/// leftover is carried as relu(t) - relu(-t).
inline std::vector<Signal> min_level(const std::vector<Signal>& signals, std::vector<ExactLayer>& layers) {
  ExactLayer layer{signals.front().weights.size(), {}};
  struct Slot {
    std::size_t first;
    bool pair;
  };
  std::vector<Slot> slots;
  const Scalar one(1), half = ratio(1, 2);
  for (std::size_t i = 0; i + 1 < signals.size(); i += 2) {
    const auto& a = signals[i];
    const auto& b = signals[i + 1];
    slots.push_back({layer.units.size(), true});
    layer.units.push_back(combine(a, one, b, -one));
    layer.units.push_back(combine(a, -one, b, one));
    layer.units.push_back(combine(a, one, b, one));
    layer.units.push_back(combine(a, -one, b, -one));
  }
  if (signals.size() % 2 == 1) {
    const auto& t = signals.back();
    slots.push_back({layer.units.size(), false});
    layer.units.push_back(t);
    layer.units.push_back(combine(t, -one, t, Scalar(0)));
  }
  const std::size_t width = layer.units.size();
  std::vector<Signal> next;
  for (const auto& slot : slots) {
    const auto u = slot.first;
    if (slot.pair)
      next.push_back(unit_combination(width, {{u, -half}, {u + 1, -half}, {u + 2, half}, {u + 3, -half}}));
    else
      next.push_back(unit_combination(width, {{u, one}, {u + 1, -one}}));
  }
  layers.push_back(std::move(layer));
  return next;
}

/// Relu layers computing max(0, min_i g_i); the last layer has a single unit.
inline std::vector<ExactLayer> maxmin_layers(const std::vector<AffineFunctional>& functionals) {
  std::vector<Signal> signals;
  for (const auto& g : functionals) signals.push_back({g.normal(), g.offset()});
  std::vector<ExactLayer> layers;
  while (signals.size() > 1) signals = min_level(signals, layers);
  layers.push_back(ExactLayer{signals.front().weights.size(), {signals.front()}});
  return layers;
}

inline DenseLayer emit(const ExactLayer& layer, Activation act) {
  DenseLayer out;
  out.inputs = layer.inputs;
  out.outputs = layer.units.size();
  out.activation = act;
  out.weights.reserve(out.inputs * out.outputs);
  for (const auto& u : layer.units) {
    for (const auto& w : u.weights) out.weights.push_back(to_double(w));
    out.bias.push_back(to_double(u.bias));
  }
  return out;
}

inline DenseLayer output_row(const std::vector<Scalar>& coefficients) {
  DenseLayer out;
  out.inputs = coefficients.size();
  out.outputs = 1;
  out.activation = Activation::identity;
  for (const auto& c : coefficients) out.weights.push_back(to_double(c));
  out.bias.push_back(0.0);
  return out;
}

} // namespace detail

/// min(a, b) on two inputs with four relu units.
inline ReluNetwork pairwise_min_gadget() {
  const Scalar one(1);
  detail::Signal a{{one, Scalar(0)}, 0}, b{{Scalar(0), one}, 0};
  std::vector<detail::ExactLayer> layers;
  auto out = detail::min_level({a, b}, layers);
  std::vector<DenseLayer> dense{detail::emit(layers.front(), Activation::relu),
                                detail::emit(detail::ExactLayer{4, {out.front()}}, Activation::identity)};
  return ReluNetwork(2, std::move(dense));
}

/// Repeats the first functional until there are `slots` of them (min(a, a) = a).
inline std::vector<AffineFunctional> padded_functionals(const MaxMinForm& form, std::size_t slots) {
  if (form.functionals.empty()) throw std::invalid_argument("max-min form has no functionals");
  if (form.functionals.size() > slots)
    throw std::invalid_argument("max-min form has " + std::to_string(form.functionals.size()) +
                                " functionals, more than the " + std::to_string(slots) + " slots available");
  auto out = form.functionals;
  while (out.size() < slots) out.push_back(form.functionals.front());
  return out;
}

/// Network for max(0, min_i g_i): depth ceil(log2 m) + 1. With pad_to > 0 the
/// functional list is padded to that many slots first.
inline ReluNetwork compile_simplex(const MaxMinForm& form, std::size_t pad_to = 0) {
  auto functionals = padded_functionals(form, std::max(pad_to, form.functionals.size()));
  std::vector<DenseLayer> dense;
  for (const auto& layer : detail::maxmin_layers(functionals)) dense.push_back(detail::emit(layer, Activation::relu));
  dense.push_back(detail::output_row({Scalar(1)}));
  return ReluNetwork(form.dim(), std::move(dense));
}

struct CompileOptions {
  /// Pad every term to the largest possible facet count so the layer shapes
  /// depend only on (d, n).
  bool fixed_architecture = true;
  /// When nonzero, the network gets exactly this many term slots (2n for
  /// PL(d, n)); unused slots repeat term 0 with output weight 0.
  std::size_t term_slots = 0;
};

/// Parallel per-term subnetworks summed with weights sign_i.
///
/// Shallower subnetworks are extended with single-unit relu passthroughs,
/// which are exact because each subnetwork's output is nonnegative.
inline ReluNetwork compile_decomposition(const SignedDecomposition& dec, CompileOptions options = {}) {
  const std::size_t d = dec.dim;
  if (options.term_slots != 0 && options.term_slots < dec.terms.size())
    throw std::invalid_argument("decomposition has " + std::to_string(dec.terms.size()) + " terms but only " +
                                std::to_string(options.term_slots) + " slots");
  std::vector<std::vector<detail::ExactLayer>> subnets;
  std::vector<Scalar> signs;
  std::size_t max_depth = 0;
  for (const auto& term : dec.terms) {
    MaxMinForm form = maxmin_form(term.simplex);
    const std::size_t slots = options.fixed_architecture ? max_facet_count(d) : form.functionals.size();
    subnets.push_back(detail::maxmin_layers(padded_functionals(form, slots)));
    signs.emplace_back(term.sign);
    max_depth = std::max(max_depth, subnets.back().size());
  }
  if (!subnets.empty()) {
    while (subnets.size() < options.term_slots) {
      subnets.push_back(subnets.front());
      signs.emplace_back(0);
    }
  }
  for (auto& layers : subnets) {
    while (layers.size() < max_depth) {
      const std::size_t w = layers.back().units.size();
      layers.push_back(detail::ExactLayer{w, {detail::unit_combination(w, {{0, Scalar(1)}})}});
    }
  }

  std::vector<DenseLayer> dense;
  std::size_t width_in = d;
  for (std::size_t level = 0; level < max_depth; ++level) {
    detail::ExactLayer stacked{width_in, {}};
    std::size_t offset = 0;
    for (const auto& layers : subnets) {
      const auto& part = layers[level];
      for (const auto& u : part.units) {
        detail::Signal s{std::vector<Scalar>(width_in, Scalar(0)), u.bias};
        // the first layer reads the shared input; later layers are block diagonal
        const std::size_t base = level == 0 ? 0 : offset;
        for (std::size_t i = 0; i < u.weights.size(); ++i) s.weights[base + i] = u.weights[i];
        stacked.units.push_back(std::move(s));
      }
      offset += level == 0 ? 0 : part.inputs;
    }
    width_in = stacked.units.size();
    dense.push_back(detail::emit(stacked, Activation::relu));
  }

  if (signs.empty()) signs.assign(width_in, Scalar(0));
  dense.push_back(detail::output_row(signs));
  return ReluNetwork(d, std::move(dense));
}

inline ReluNetwork compile_mesh(const PLMesh& mesh, std::uint64_t seed = 0, CompileOptions options = {}) {
  return compile_decomposition(decompose(mesh, std::nullopt, seed), options);
}

} // namespace plrelu
