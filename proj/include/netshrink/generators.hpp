#pragma once

#include <cstdint>
#include <string_view>

#include "netshrink/graph.hpp"

namespace netshrink {

enum class GeneratorModel { kErdosRenyi, kBarabasiAlbert };

struct GeneratorSpec {
  GeneratorModel model = GeneratorModel::kErdosRenyi;
  std::size_t n = 0;
  double target_avg_degree = 0.0;  // ER only
  std::size_t m = 0;               // BA only
  std::uint64_t seed = 0;
};

GeneratorModel parse_generator_model(std::string_view name);

// Throws a config error describing the first invalid field.
void validate(const GeneratorSpec& spec);

// G(n, p) with p = target_avg_degree / (n - 1). Uses geometric skipping over
// the C(n, 2) candidate pairs.
Graph erdos_renyi(const GeneratorSpec& spec);

// Preferential attachment grown from a complete graph on m nodes; every new
// node adds m distinct edges to degree-proportional targets. Edge count is
// C(m, 2) + m (n - m).
Graph barabasi_albert(const GeneratorSpec& spec);

Graph generate(const GeneratorSpec& spec);

}  // namespace netshrink
