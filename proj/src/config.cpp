#include "jcdp/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "text_util.hpp"

namespace jcdp {

ConfigFile parse_config(std::string_view text) {
  ConfigFile cfg;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  for (auto line : detail::split_lines(text)) {
    ++line_no;
    const auto fields = detail::split_fields(line);
    if (fields.empty() || fields[0].starts_with('#')) continue;

    const std::string key(fields[0]);
    const auto where = "line " + std::to_string(line_no) + ", key " + key;
    auto expect_values = [&](std::size_t n) {
      if (fields.size() != n + 1) {
        throw ParseError(where + ": expected " + std::to_string(n) + " value(s)");
      }
    };
    auto value = [&](std::size_t idx) { return detail::parse_uint(fields[idx], where); };
    auto range = [&] {
      expect_values(2);
      Range r{value(1), value(2)};
      if (r.lo == 0 || r.lo > r.hi) throw ParseError(where + ": need 1 <= lo <= hi");
      return r;
    };

    if (!seen.insert(key).second) throw ParseError(where + ": duplicate key");
    if (key == "length") {
      expect_values(1);
      cfg.length = value(1);
      if (cfg.length == 0) throw ParseError(where + ": length must be at least 1");
    } else if (key == "size_range") {
      cfg.size_range = range();
    } else if (key == "dag_size_range") {
      cfg.dag_size_range = range();
    } else if (key == "available_threads") {
      expect_values(1);
      const auto t = value(1);
      if (t == 0 || t > UINT32_MAX) throw ParseError(where + ": need at least one thread");
      cfg.available_threads = static_cast<std::uint32_t>(t);
    } else if (key == "available_memory") {
      expect_values(1);
      cfg.available_memory = value(1);
    } else if (key == "matrix_free") {
      expect_values(1);
      const auto flag = value(1);
      if (flag > 1) throw ParseError(where + ": expected 0 or 1");
      cfg.matrix_free = flag == 1;
    } else if (key == "time_to_solve") {
      expect_values(1);
      cfg.time_to_solve = value(1);
    } else if (key == "seed") {
      expect_values(1);
      cfg.seed = value(1);
    } else {
      throw ParseError(where + ": unknown key");
    }
  }
  if (!seen.contains("length")) throw ParseError("missing key: length");
  return cfg;
}

ConfigFile load_config(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open config file " + path);
  std::ostringstream text;
  text << file.rdbuf();
  return parse_config(text.str());
}

Mode mode_of(const ConfigFile& config) {
  return config.matrix_free ? Mode::LimitedMemoryMatrixFree : Mode::Dense;
}

GeneratorConfig generator_of(const ConfigFile& config) {
  return {config.length, config.size_range, config.dag_size_range, config.seed};
}

}  // namespace jcdp
