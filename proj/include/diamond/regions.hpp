#pragma once

// Boundary tracing, time-sharing hulls, containment checks, and the
// brute-force grid oracle.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "diamond/channel.hpp"
#include "diamond/error.hpp"
#include "diamond/oracle.hpp"
#include "diamond/rates.hpp"

namespace diamond::regions {

struct Sample {
  double k = 0.0;
  RatePair rates;
  StateSchedule schedule;
  double residual = 0.0;
};

struct RateRegion {
  std::string label;
  Convention convention = Convention::complex;
  ChannelConfig channel;
  std::vector<Sample> samples;  // sorted by k, k = kBAxis last

  // Sample at ratio k (exact match up to 1e-12 relative), or nullptr.
  const Sample* find(double k) const;
};

enum class Kind { outer, mdf, cf_cmac, cf_bc, comabc, ar_df };

std::string_view to_string(Kind kind);
// Accepts "outer", "mdf", "cf-cmac", "cf-bc", "comabc", "ar-df" and the
// underscore spellings.
Kind parse_kind(std::string_view s);

using SupportFn = std::function<SupportPoint(double k)>;

struct GeneratorOptions {
  int ardf_grid = 11;
  int mdf_theta_points = 101;
};

// Support function of one bound or protocol on a channel. Variant checks
// and the k-independent precomputation (MDF axis points, AR-DF parameter
// search) happen here, so the returned function is cheap and thread-safe.
SupportFn make_generator(Kind kind, const ChannelConfig& channel,
                         const GeneratorOptions& opts = {});

// 25 log-spaced ratios in [0.1, 10]; sweep adds the two axis points.
std::vector<double> default_k_grid();

// "start:stop:count" or "start:stop:count,log" (log spacing, start > 0), or
// an explicit comma-separated list ("inf" allowed).
std::vector<double> parse_k_grid(std::string_view spec);

struct SweepOptions {
  unsigned threads = 1;  // 0 = hardware concurrency
};

// Thrown by sweep when the generator fails; carries the offending ratio.
// The category of the original failure is kept so callers can tell solver
// trouble from bad input.
class SweepError : public Error {
 public:
  enum class Cause { solver, domain, validation, unsupported, other };
  SweepError(const std::string& what, double k, Cause cause)
      : Error(what), k_(k), cause_(cause) {}
  double k() const { return k_; }
  Cause cause() const { return cause_; }

 private:
  double k_;
  Cause cause_;
};

// Evaluates the generator at every ratio of k_grid plus 0 and kBAxis.
// k_grid must be strictly increasing and >= 0.
RateRegion sweep(const SupportFn& generator, std::string label,
                 const ChannelConfig& channel, std::vector<double> k_grid,
                 const SweepOptions& opts = {});

RateRegion compute_region(Kind kind, const ChannelConfig& channel,
                          const std::vector<double>& k_grid,
                          const GeneratorOptions& gen = {},
                          const SweepOptions& opts = {});

// Upper-right convex hull of all samples plus the origin, sampled on the
// union of the inputs' k grids. Schedules are the matching convex
// combinations of the two hull vertices around each boundary point.
RateRegion hull_of(const std::vector<RateRegion>& regions);

struct ContainmentEntry {
  double k = 0.0;
  double outer_support = 0.0;
  double inner_support = 0.0;
  double margin = 0.0;  // outer - inner
  bool pass = false;
};

struct ContainmentReport {
  std::string outer_label;
  std::string inner_label;
  double tolerance = 0.0;
  std::vector<ContainmentEntry> entries;

  bool pass() const;
  double min_margin() const;
};

// Checks inner support <= outer support + tolerance on every ratio the two
// regions share. Throws ValidationError on mismatched channels or when they
// share no ratio.
ContainmentReport contains(const RateRegion& outer, const RateRegion& inner,
                           double tolerance);

// Best support value along each ray over the mu-grid with denominator
// `resolution` on the simplex of `states`.
std::vector<double> grid_oracle(const oracle::BoxEvaluator& box,
                                const std::vector<int>& states, int resolution,
                                const std::vector<double>& ks);
double grid_oracle(const oracle::BoxEvaluator& box,
                   const std::vector<int>& states, int resolution, double k);

}  // namespace diamond::regions
