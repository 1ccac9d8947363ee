#include "jcdp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "text_util.hpp"

namespace jcdp {

std::string_view status_name(RecordStatus status) {
  switch (status) {
    case RecordStatus::Proven:
      return "proven";
    case RecordStatus::BudgetExhausted:
      return "budget_exhausted";
    case RecordStatus::Error:
      return "error";
  }
  return "error";
}

namespace {

std::vector<BenchRecord> run_instance(const BatchConfig& config, std::uint64_t id,
                                      std::ostream* log, std::mutex& log_mutex) {
  auto gen = config.generator;
  gen.seed = instance_seed(config.generator.seed, id);
  const auto chain = generate(gen);

  std::vector<BenchRecord> out;
  for (const auto m : config.machines) {
    BenchRecord rec;
    rec.instance = id;
    rec.q = chain.length();
    rec.m = m;
    try {
      const MachineConfig machines{m, config.memory_limit, config.memory_model};
      rec.fma_dp = solve_scheduled(chain, config.mode, machines).root_cost();
      const auto exact = solve_exact(
          chain, {machines, config.mode, config.time_budget_seconds, config.node_limit});
      rec.fma_opt = exact.cost;
      rec.status = exact.status == BnBStatus::Proven ? RecordStatus::Proven
                                                     : RecordStatus::BudgetExhausted;
      rec.ratio = quality_ratio(rec.fma_opt, rec.fma_dp);
      rec.useful_machines = useful_machines(
          chain, config.mode, effective_limit(config.mode, task_memory_limit(machines)));
      if (log && rec.status == RecordStatus::BudgetExhausted) {
        std::lock_guard lock(log_mutex);
        *log << "instance " << id << " m=" << m << ": budget exhausted after " << exact.nodes
             << " nodes\n";
      }
    } catch (const std::exception& e) {
      rec.status = RecordStatus::Error;
      rec.fma_dp = rec.fma_opt = 0;
      rec.ratio = Ratio();
      rec.useful_machines = 0;
      if (log) {
        std::lock_guard lock(log_mutex);
        *log << "instance " << id << " m=" << m << ": " << e.what() << '\n';
      }
    }
    out.push_back(rec);
  }
  return out;
}

}  // namespace

std::vector<BenchRecord> run_batch(const BatchConfig& config, std::ostream* log) {
  if (config.count == 0) throw Error("batch count must be at least 1");
  if (config.machines.empty()) throw Error("no machine counts given");
  for (auto m : config.machines) {
    if (m == 0) throw Error("machine count must be at least 1");
  }

  std::vector<std::vector<BenchRecord>> per_instance(config.count);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (auto id = next++; id < config.count; id = next++) {
      per_instance[id] = run_instance(config, id, log, log_mutex);
      const auto finished = ++done;
      if (log && (finished % 100 == 0 || finished == config.count)) {
        std::lock_guard lock(log_mutex);
        *log << "progress: " << finished << "/" << config.count << " chains\n";
      }
    }
  };
  const unsigned jobs = std::max(1u, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker);
  }

  std::vector<BenchRecord> records;
  records.reserve(config.count * config.machines.size());
  for (auto& chunk : per_instance) {
    records.insert(records.end(), chunk.begin(), chunk.end());
  }
  return records;
}

double AggregateCell::percent_optimal() const {
  return samples == 0 ? 0.0 : 100.0 * static_cast<double>(optimal) / static_cast<double>(samples);
}

std::string AggregateCell::mean_text() const {
  if (mean == 1) return "1";
  // Round half up to three digits.
  const ExactRational scaled = mean * 1000 + ExactRational(1, 2);
  const auto thousandths = boost::multiprecision::cpp_int(
      boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled));
  if (thousandths >= 1000) return "1.00";
  std::ostringstream out;
  out << '.' << std::setw(3) << std::setfill('0') << thousandths.convert_to<unsigned>();
  return out.str();
}

const AggregateCell* AggregateTable::find(std::size_t q, std::uint32_t m) const {
  for (const auto& cell : cells) {
    if (cell.q == q && cell.m == m) return &cell;
  }
  return nullptr;
}

AggregateTable aggregate(const std::vector<BenchRecord>& records) {
  std::map<std::pair<std::size_t, std::uint32_t>, AggregateCell> by_key;
  for (const auto& rec : records) {
    auto& cell = by_key[{rec.q, rec.m}];
    cell.q = rec.q;
    cell.m = rec.m;
    if (rec.status != RecordStatus::Proven) {
      ++cell.excluded;
      continue;
    }
    if (cell.samples == 0 || rec.ratio < cell.min) cell.min = rec.ratio;
    cell.mean += ExactRational(rec.ratio.num(), rec.ratio.den());
    cell.optimal += rec.ratio.is_one() ? 1 : 0;
    ++cell.samples;
  }
  AggregateTable table;
  for (auto& [key, cell] : by_key) {
    if (cell.samples == 0) {
      table.notes.push_back("q=" + std::to_string(key.first) + " m=" +
                            std::to_string(key.second) + ": no proven records (" +
                            std::to_string(cell.excluded) + " excluded)");
      continue;
    }
    cell.mean /= cell.samples;
    table.cells.push_back(std::move(cell));
  }
  return table;
}

std::string format_tables(const AggregateTable& table) {
  std::vector<std::size_t> qs;
  std::vector<std::uint32_t> ms;
  for (const auto& cell : table.cells) {
    if (std::find(qs.begin(), qs.end(), cell.q) == qs.end()) qs.push_back(cell.q);
    if (std::find(ms.begin(), ms.end(), cell.m) == ms.end()) ms.push_back(cell.m);
  }
  std::sort(qs.begin(), qs.end());
  std::sort(ms.begin(), ms.end());

  std::ostringstream out;
  auto emit = [&](std::string_view title, auto render) {
    out << title << '\n' << std::setw(6) << "q\\m";
    for (auto m : ms) out << std::setw(8) << m;
    out << '\n';
    for (auto q : qs) {
      out << std::setw(6) << q;
      for (auto m : ms) {
        const auto* cell = table.find(q, m);
        out << std::setw(8) << (cell ? render(*cell) : std::string("-"));
      }
      out << '\n';
    }
    out << '\n';
  };
  emit("Average C^(m)", [](const AggregateCell& c) { return c.mean_text(); });
  emit("Minimal C^(m)", [](const AggregateCell& c) { return table_decimal(c.min); });
  emit("Percent optimal", [](const AggregateCell& c) {
    if (c.optimal == c.samples) return std::string("100");
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.1f", c.percent_optimal());
    return std::string(buf);
  });
  emit("Proven samples", [](const AggregateCell& c) { return std::to_string(c.samples); });
  for (const auto& note : table.notes) out << "note: " << note << '\n';
  return out.str();
}

std::string to_csv(const std::vector<BenchRecord>& records) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : records) {
    out += std::to_string(r.instance) + ',' + std::to_string(r.q) + ',' + std::to_string(r.m) +
           ',' + std::to_string(r.fma_dp) + ',' + std::to_string(r.fma_opt) + ',' +
           std::string(status_name(r.status)) + ',' +
           (r.status == RecordStatus::Error ? std::string() : r.ratio.to_decimal(6)) + ',' +
           std::to_string(r.useful_machines) + '\n';
  }
  return out;
}

void write_csv(const std::vector<BenchRecord>& records, const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open " + path + " for writing");
  file << to_csv(records);
  file.flush();
  if (!file) throw Error("failed writing " + path);
}

std::vector<BenchRecord> parse_csv(std::string_view text) {
  std::vector<BenchRecord> records;
  std::size_t line_no = 0;
  bool header_seen = false;
  for (auto line : detail::split_lines(text)) {
    ++line_no;
    if (line.empty()) continue;
    const auto where = "line " + std::to_string(line_no);
    if (!header_seen) {
      if (line != kCsvHeader) throw ParseError(where + ": unexpected CSV header");
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> cols;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      cols.push_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (cols.size() != 8) throw ParseError(where + ": expected 8 columns");
    BenchRecord r;
    r.instance = detail::parse_uint(cols[0], where + " instance");
    r.q = detail::parse_uint(cols[1], where + " q");
    r.m = static_cast<std::uint32_t>(detail::parse_uint(cols[2], where + " m"));
    r.fma_dp = detail::parse_uint(cols[3], where + " fma_dp");
    r.fma_opt = detail::parse_uint(cols[4], where + " fma_opt");
    if (cols[5] == "proven") {
      r.status = RecordStatus::Proven;
    } else if (cols[5] == "budget_exhausted") {
      r.status = RecordStatus::BudgetExhausted;
    } else if (cols[5] == "error") {
      r.status = RecordStatus::Error;
    } else {
      throw ParseError(where + ": unknown status \"" + std::string(cols[5]) + "\"");
    }
    if (r.status != RecordStatus::Error) {
      try {
        r.ratio = quality_ratio(r.fma_opt, r.fma_dp);
      } catch (const Error& e) {
        throw ParseError(where + ": " + e.what());
      }
    }
    r.useful_machines =
        static_cast<std::uint32_t>(detail::parse_uint(cols[7], where + " useful_machines"));
    records.push_back(r);
  }
  if (!header_seen) throw ParseError("missing CSV header");
  return records;
}

}  // namespace jcdp
