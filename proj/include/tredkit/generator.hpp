#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include "tredkit/graph.hpp"

namespace tredkit {

struct GeneratorOptions {
  std::size_t nodes = 100;
  std::size_t arcs = 500;
  double negative_fraction = 0.2;
  double critical_fraction = 0.1;
  std::uint64_t seed = 1;
};

/// Uniform draw in [0, bound) by rejection; the same on every platform,
/// unlike std::uniform_int_distribution.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound);

/// Random Hamiltonian cycle plus arcs - nodes further distinct non-loop
/// arcs. Throws DomainError when arcs < nodes or arcs > nodes * (nodes - 1).
SignedDigraph random_strongly_connected(const GeneratorOptions& opts);

/// `arcs` distinct non-loop arcs chosen uniformly; no connectivity promise.
SignedDigraph random_digraph(const GeneratorOptions& opts);

/// Evidence text with `lines` statements over about lines / 2 names, mixing
/// all statement kinds.
std::string synthetic_evidence(std::size_t lines, std::uint64_t seed);

}  // namespace tredkit
