#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relct/store.hpp"

namespace relct {

struct GenAttribute {
  std::string name;
  std::size_t domain_size = 2;
  /// Correlated mode: copy this attribute of the same table (or, for a
  /// relationship attribute, "<label>.<attr>" of an endpoint entity), folded
  /// into the domain, except with probability `noise` draw uniformly.
  std::optional<std::string> depends_on;
  double noise = 0.0;
};

struct GenEntity {
  std::string name;
  Count population = 0;
  std::vector<GenAttribute> attributes;
};

struct GenEndpoint {
  std::string entity;
  std::string label;
};

struct GenRelationship {
  std::string name;
  GenEndpoint from;
  GenEndpoint to;
  double density = 0.0;  // fraction of the n1*n2 entity pairs that are linked
  std::vector<GenAttribute> attributes;
};

struct GenConfig {
  std::uint64_t seed = 0;
  std::vector<GenEntity> entities;
  std::vector<GenRelationship> relationships;
  std::optional<std::string> preset;
};

/// Number of links a relationship receives: floor(density * n1 * n2).
Count link_count(double density, Count n1, Count n2);

/// Schema implied by a configuration (attribute values are named 1..d).
Schema config_schema(const GenConfig& config);

Database generate(const GenConfig& config);

/// Names accepted by preset().
std::vector<std::string> preset_names();

/// Scaled-down configurations echoing the shapes of common relational
/// benchmarks. Populations scale linearly with `scale` and densities by
/// 1/scale, so total rows are roughly proportional to `scale`.
GenConfig preset(std::string_view name, double scale = 0.1, std::uint64_t seed = 0);

GenConfig parse_gen_config(std::string_view json_text);
std::string gen_config_json(const GenConfig& config);

}  // namespace relct
