#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rftrlp/instance.hpp"

namespace rftrlp {

/// One batch of generated instances: `count` seeds starting at `first_seed`
/// (or the explicit `seeds` list when it is nonempty).
struct BenchBatch {
  GenConfig config;
  int count = 1;
  std::uint64_t first_seed = 1;
  std::vector<std::uint64_t> seeds;

  std::vector<std::uint64_t> seed_list() const;
};

/// Experiment description. JSON form:
///   {"methods": ["fb", "cb", "it", "oracle"], "time_limit": 60, "jobs": 1,
///    "batches": [{"flavor": "gen1", "n": 8, "dens": 0.6, "scenarios": 1,
///                 "gamma": 1, "large": false, "d_max": 300,
///                 "count": 5, "first_seed": 1}]}
/// Every key except "methods" and "batches" is optional; a batch may give
/// "seeds": [...] instead of count/first_seed.
struct BenchSpec {
  std::vector<std::string> methods;
  std::vector<BenchBatch> batches;
  double time_limit = 60.0;
  int jobs = 1;

  void validate() const;
};

BenchSpec parse_bench_spec(const std::string& json_text);
BenchSpec load_bench_spec(const std::filesystem::path& path);

struct BenchRecord {
  std::string instance;
  std::uint64_t seed = 0;
  std::string method;
  double phase_shp_s = 0.0;
  double phase_ip_s = 0.0;
  std::string status;  ///< optimal, feasible, infeasible, time_limit or error
  std::optional<double> objective;
  std::optional<double> bound;

  bool solved() const { return status == "optimal" || status == "infeasible"; }
};

inline constexpr const char* kRecordsHeader = "instance,seed,method,phase_shp_s,phase_ip_s,status,objective,bound";
inline constexpr const char* kProfileHeader = "method,tau,k";
inline constexpr double kUnsolvedSeconds = 1e6;
inline constexpr double kMinSeconds = 1e-6;

/// Generates every instance, then runs each (instance, method) pair on a pool
/// of `jobs` workers (spec.jobs when jobs <= 0). Records come back in
/// (batch, seed, method) order regardless of scheduling. A generation failure
/// yields status "error" records for that instance and the run continues.
/// With `out_dir`, instances go to out_dir/instances/<label>.json and records
/// to out_dir/records.csv.
std::vector<BenchRecord> run_experiment(const BenchSpec& spec, const std::optional<std::filesystem::path>& out_dir = {},
                                        int jobs = 0);

std::string records_to_csv(const std::vector<BenchRecord>& records);
std::vector<BenchRecord> records_from_csv(const std::string& text);

/// k_s(tau) for one method over the instances kept in the profile.
struct ProfileCurve {
  std::string method;
  std::vector<double> taus;
  std::vector<double> k;
  std::vector<double> ratios;  ///< per kept instance; +inf when unsolved

  /// Fraction of kept instances with ratio <= tau.
  double k_at(double tau) const;
};

struct PerformanceProfile {
  std::vector<ProfileCurve> curves;  ///< methods in first-appearance order
  int instances = 0;                 ///< instances with at least one solved method
  int excluded = 0;                  ///< instances no method solved
};

/// 64 geometric points from 1 to 2^10.
std::vector<double> default_tau_grid();

/// Dolan-More profile: t = shp + ip (at least 1e-6 s) for solved records,
/// 1e6 s otherwise; ratios against the per-instance best. Throws
/// ValidationError when an (instance, method) pair appears twice.
PerformanceProfile performance_profile(const std::vector<BenchRecord>& records,
                                       const std::vector<double>& taus = default_tau_grid());

std::string profile_to_csv(const PerformanceProfile& profile);

}  // namespace rftrlp
