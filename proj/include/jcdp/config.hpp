#pragma once

// Experiment configuration file: one "key value..." pair per line.
//
//   length 10
//   size_range 5 500
//   dag_size_range 1000 100000
//   available_threads 1
//   available_memory 0
//   matrix_free 1
//   time_to_solve 5
//   seed 2165743199
//
// `length` is required; every other key falls back to the defaults below.
// Blank lines and lines starting with '#' are ignored.

#include <cstdint>
#include <string>
#include <string_view>

#include "jcdp/dp.hpp"
#include "jcdp/generator.hpp"

namespace jcdp {

struct ConfigFile {
  std::size_t length = 0;
  Range size_range{5, 50};
  Range dag_size_range{1000, 10000};
  std::uint32_t available_threads = 1;
  std::uint64_t available_memory = 0;  ///< 0 = unlimited
  bool matrix_free = true;
  std::uint64_t time_to_solve = 0;     ///< seconds, 0 = unlimited
  std::uint64_t seed = 0;

  friend bool operator==(const ConfigFile&, const ConfigFile&) = default;
};

/// Throws ParseError naming the line and key on malformed input, unknown
/// or duplicate keys, and "missing key: length".
ConfigFile parse_config(std::string_view text);
ConfigFile load_config(const std::string& path);

/// matrix_free 0 -> Dense, 1 -> LimitedMemoryMatrixFree.
Mode mode_of(const ConfigFile& config);
GeneratorConfig generator_of(const ConfigFile& config);

}  // namespace jcdp
