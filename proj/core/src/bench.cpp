#include "rftrlp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "rftrlp/error.hpp"
#include "rftrlp/oracle.hpp"
#include "rftrlp/solver.hpp"

namespace rftrlp {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

template <typename T>
T get_or(const json& doc, const char* key, T fallback) {
  auto it = doc.find(key);
  if (it == doc.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("bench spec field '") + key + "' has the wrong type");
  }
}

std::string format_seconds(double s) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", s);
  return buf;
}

std::string format_value(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return "";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", *v);
  return buf;
}

struct Job {
  std::size_t instance;
  std::string method;
};

BenchRecord run_one(const Instance& inst, const std::string& method, double time_limit) {
  BenchRecord rec;
  rec.instance = inst.label;
  rec.seed = inst.seed;
  rec.method = method;
  try {
    if (method == "oracle") {
      auto t0 = Clock::now();
      const auto m = build_transformed_graph(inst.network);
      const auto ds = derive_sets(inst.network, m);
      rec.phase_shp_s = seconds_since(t0);
      t0 = Clock::now();
      const auto best = brute_force_optimum(inst, Predicate::Structural);
      rec.phase_ip_s = seconds_since(t0);
      rec.status = best ? "optimal" : "infeasible";
      if (best) rec.objective = rec.bound = static_cast<double>(best->robust_cost);
      return rec;
    }
    SolverOptions opt;
    opt.time_limit = time_limit;
    const auto out = solve_instance(inst, parse_method(method), opt);
    rec.phase_shp_s = out.timings.shp_s;
    rec.phase_ip_s = out.timings.ip_s;
    rec.status = milp::to_string(out.status);
    if (out.solution) rec.objective = static_cast<double>(out.solution->robust_cost);
    if (std::isfinite(out.bound)) rec.bound = out.bound;
  } catch (const Error&) {
    rec.status = "error";
  }
  return rec;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::vector<std::uint64_t> BenchBatch::seed_list() const {
  if (!seeds.empty()) return seeds;
  std::vector<std::uint64_t> out;
  for (int k = 0; k < count; ++k) out.push_back(first_seed + static_cast<std::uint64_t>(k));
  return out;
}

void BenchSpec::validate() const {
  for (const auto& m : methods) {
    if (m != "fb" && m != "cb" && m != "it" && m != "oracle") {
      throw ValidationError("unknown bench method '" + m + "' (expected fb, cb, it or oracle)");
    }
  }
  if (!(time_limit > 0.0)) throw ValidationError("bench time_limit must be positive");
  for (const auto& b : batches) {
    if (b.count < 0) throw ValidationError("bench batch count must be nonnegative");
    b.config.validate();
  }
}

BenchSpec parse_bench_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("bench spec: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("bench spec must be a JSON object");
  BenchSpec spec;
  spec.methods = get_or<std::vector<std::string>>(doc, "methods", {});
  spec.time_limit = get_or<double>(doc, "time_limit", spec.time_limit);
  spec.jobs = get_or<int>(doc, "jobs", spec.jobs);
  const auto batches = doc.find("batches");
  if (batches != doc.end()) {
    if (!batches->is_array()) throw ParseError("bench spec field 'batches' must be an array");
    for (const auto& b : *batches) {
      BenchBatch batch;
      auto& c = batch.config;
      c.flavor = parse_gen_flavor(get_or<std::string>(b, "flavor", "gen1"));
      c.n = get_or<int>(b, "n", c.n);
      c.dens = get_or<double>(b, "dens", c.dens);
      c.scenarios = get_or<int>(b, "scenarios", c.scenarios);
      c.gamma = get_or<int>(b, "gamma", c.gamma);
      c.large_mode = get_or<bool>(b, "large", c.large_mode);
      c.d_max = get_or<Length>(b, "d_max", c.d_max);
      batch.count = get_or<int>(b, "count", batch.count);
      batch.first_seed = get_or<std::uint64_t>(b, "first_seed", batch.first_seed);
      batch.seeds = get_or<std::vector<std::uint64_t>>(b, "seeds", {});
      spec.batches.push_back(std::move(batch));
    }
  }
  spec.validate();
  return spec;
}

BenchSpec load_bench_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_bench_spec(buffer.str());
}

std::vector<BenchRecord> run_experiment(const BenchSpec& spec, const std::optional<std::filesystem::path>& out_dir,
                                        int jobs) {
  spec.validate();
  if (jobs <= 0) jobs = std::max(1, spec.jobs);

  struct Slot {
    std::optional<Instance> instance;
    std::string label;
    std::uint64_t seed;
  };
  std::vector<Slot> slots;
  for (const auto& batch : spec.batches) {
    for (auto seed : batch.seed_list()) {
      GenConfig cfg = batch.config;
      cfg.seed = seed;
      Slot slot{std::nullopt, cfg.label(), seed};
      try {
        slot.instance = generate(cfg);
      } catch (const GenerationError&) {
      }
      slots.push_back(std::move(slot));
    }
  }
  if (out_dir) {
    std::filesystem::create_directories(*out_dir / "instances");
    for (const auto& s : slots) {
      if (s.instance) save(*s.instance, *out_dir / "instances" / (s.label + ".json"));
    }
  }

  std::vector<Job> work;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    for (const auto& m : spec.methods) work.push_back({i, m});
  }
  std::vector<BenchRecord> records(work.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < work.size(); k = next++) {
      const auto& slot = slots[work[k].instance];
      if (!slot.instance) {
        records[k] = BenchRecord{slot.label, slot.seed, work[k].method, 0.0, 0.0, "error", {}, {}};
      } else {
        records[k] = run_one(*slot.instance, work[k].method, spec.time_limit);
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (out_dir) {
    std::ofstream out(*out_dir / "records.csv", std::ios::binary);
    out << records_to_csv(records);
  }
  return records;
}

std::string records_to_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << kRecordsHeader << '\n';
  for (const auto& r : records) {
    out << r.instance << ',' << r.seed << ',' << r.method << ',' << format_seconds(r.phase_shp_s) << ','
        << format_seconds(r.phase_ip_s) << ',' << r.status << ',' << format_value(r.objective) << ','
        << format_value(r.bound) << '\n';
  }
  return out.str();
}

std::vector<BenchRecord> records_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kRecordsHeader) {
    throw ParseError(std::string("records CSV must start with the header '") + kRecordsHeader + "'");
  }
  std::vector<BenchRecord> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 8) throw ParseError("records CSV line " + std::to_string(line_no) + ": expected 8 fields");
    try {
      BenchRecord r;
      r.instance = f[0];
      r.seed = std::stoull(f[1]);
      r.method = f[2];
      r.phase_shp_s = std::stod(f[3]);
      r.phase_ip_s = std::stod(f[4]);
      r.status = f[5];
      if (!f[6].empty()) r.objective = std::stod(f[6]);
      if (!f[7].empty()) r.bound = std::stod(f[7]);
      out.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw ParseError("records CSV line " + std::to_string(line_no) + ": malformed number");
    }
  }
  return out;
}

double ProfileCurve::k_at(double tau) const {
  if (ratios.empty()) return 0.0;
  const auto hits = std::count_if(ratios.begin(), ratios.end(), [&](double r) { return r <= tau; });
  return static_cast<double>(hits) / static_cast<double>(ratios.size());
}

std::vector<double> default_tau_grid() {
  std::vector<double> out;
  for (int i = 0; i < 64; ++i) out.push_back(std::pow(2.0, 10.0 * i / 63.0));
  out.front() = 1.0;
  out.back() = 1024.0;
  return out;
}

PerformanceProfile performance_profile(const std::vector<BenchRecord>& records, const std::vector<double>& taus) {
  std::vector<std::string> methods;
  std::vector<std::string> instances;
  std::map<std::pair<std::string, std::string>, double> times;
  for (const auto& r : records) {
    const std::string key = r.instance + "#" + std::to_string(r.seed);
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) methods.push_back(r.method);
    if (std::find(instances.begin(), instances.end(), key) == instances.end()) instances.push_back(key);
    const double t = r.solved() ? std::max(kMinSeconds, r.phase_shp_s + r.phase_ip_s) : kUnsolvedSeconds;
    if (!times.emplace(std::make_pair(key, r.method), t).second) {
      throw ValidationError("record for instance '" + r.instance + "' and method '" + r.method + "' appears twice");
    }
  }
  std::map<std::string, bool> solved;
  for (const auto& r : records) {
    if (r.solved()) solved[r.instance + "#" + std::to_string(r.seed)] = true;
  }

  PerformanceProfile profile;
  std::vector<std::string> kept;
  for (const auto& key : instances) {
    if (solved.count(key)) kept.push_back(key);
    else ++profile.excluded;
  }
  profile.instances = static_cast<int>(kept.size());
  for (const auto& method : methods) {
    ProfileCurve curve;
    curve.method = method;
    curve.taus = taus;
    for (const auto& key : kept) {
      double best = kUnsolvedSeconds;
      for (const auto& other : methods) {
        auto it = times.find({key, other});
        if (it != times.end()) best = std::min(best, it->second);
      }
      auto it = times.find({key, method});
      const bool ok = it != times.end() && it->second < kUnsolvedSeconds;
      curve.ratios.push_back(ok ? it->second / best : std::numeric_limits<double>::infinity());
    }
    for (double tau : taus) curve.k.push_back(curve.k_at(tau));
    profile.curves.push_back(std::move(curve));
  }
  return profile;
}

std::string profile_to_csv(const PerformanceProfile& profile) {
  std::ostringstream out;
  out << kProfileHeader << '\n';
  char buf[64];
  for (const auto& c : profile.curves) {
    for (std::size_t i = 0; i < c.taus.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.6g,%.6g", c.taus[i], c.k[i]);
      out << c.method << ',' << buf << '\n';
    }
  }
  return out.str();
}

}  // namespace rftrlp
