#include "diamond/regions.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <memory>
#include <sstream>
#include <thread>

#include "diamond/cutset.hpp"
#include "diamond/protocols.hpp"

namespace diamond::regions {

namespace {

bool same_k(double x, double y) {
  if (std::isinf(x) || std::isinf(y)) return x == y;
  return std::fabs(x - y) <= 1e-12 * std::max(1.0, std::max(std::fabs(x), std::fabs(y)));
}

std::string k_text(double k) {
  if (is_b_axis(k)) return "inf";
  std::ostringstream os;
  os.precision(12);
  os << k;
  return os.str();
}

double parse_number(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s == "inf" || s == "Inf" || s == "INF") return kBAxis;
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size() || s.empty())
    throw ValidationError("bad number in k grid: '" + std::string(s) + "'");
  return v;
}

void require(bool ok, Variant need, const ChannelConfig& c, Kind kind) {
  if (!ok)
    throw UnsupportedVariantError(
        std::string(to_string(kind)) + " needs the " +
        std::string(to_string(need)) + " variant, channel is " +
        std::string(to_string(c.variant)));
}

Sample to_sample(const SupportPoint& p) {
  return {p.k, p.rates, p.schedule, p.residual};
}

double cross(double ax, double ay, double bx, double by) {
  return ax * by - ay * bx;
}

struct HullVertex {
  double x, y;
  const StateSchedule* schedule;
};

// Andrew's monotone chain; returns the hull counter-clockwise without
// repeating the first vertex. Collinear points are dropped.
std::vector<HullVertex> convex_hull(std::vector<HullVertex> pts) {
  std::sort(pts.begin(), pts.end(), [](const HullVertex& a, const HullVertex& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  if (pts.size() < 3) return pts;
  std::vector<HullVertex> h(2 * pts.size());
  std::size_t n = 0;
  auto turn = [](const HullVertex& o, const HullVertex& a, const HullVertex& b) {
    return cross(a.x - o.x, a.y - o.y, b.x - o.x, b.y - o.y);
  };
  for (const auto& p : pts) {
    while (n >= 2 && turn(h[n - 2], h[n - 1], p) <= 0) --n;
    h[n++] = p;
  }
  const std::size_t lower = n + 1;
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    while (n >= lower && turn(h[n - 2], h[n - 1], pts[i]) <= 0) --n;
    h[n++] = pts[i];
  }
  h.resize(n - 1);
  return h;
}

}  // namespace

const Sample* RateRegion::find(double k) const {
  for (const auto& s : samples)
    if (same_k(s.k, k)) return &s;
  return nullptr;
}

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::outer: return "outer";
    case Kind::mdf: return "mdf";
    case Kind::cf_cmac: return "cf-cmac";
    case Kind::cf_bc: return "cf-bc";
    case Kind::comabc: return "comabc";
    case Kind::ar_df: return "ar-df";
  }
  return "?";
}

Kind parse_kind(std::string_view s) {
  std::string t(s);
  std::replace(t.begin(), t.end(), '_', '-');
  for (Kind k : {Kind::outer, Kind::mdf, Kind::cf_cmac, Kind::cf_bc,
                 Kind::comabc, Kind::ar_df})
    if (t == to_string(k)) return k;
  throw ValidationError("unknown protocol '" + std::string(s) + "'");
}

SupportFn make_generator(Kind kind, const ChannelConfig& channel,
                         const GeneratorOptions& opts) {
  channel.validate();
  const ChannelConfig c = channel;
  switch (kind) {
    case Kind::outer:
      return [c](double k) { return cutset::outer_support(c, k); };
    case Kind::mdf: {
      const protocols::MdfOptions mo{opts.mdf_theta_points};
      auto ab = std::make_shared<const protocols::OneWayResult>(
          protocols::mdf_one_way(c, cutset::Direction::a_to_b, mo));
      auto ba = std::make_shared<const protocols::OneWayResult>(
          protocols::mdf_one_way(c, cutset::Direction::b_to_a, mo));
      return [ab, ba](double k) {
        return protocols::mdf_two_way_support(*ab, *ba, k);
      };
    }
    case Kind::cf_cmac:
      return [c](double k) { return protocols::cf_cmac_support(c, k); };
    case Kind::cf_bc:
      return [c](double k) { return protocols::cf_bc_support(c, k); };
    case Kind::comabc:
      require(c.variant == Variant::direct_link, Variant::direct_link, c, kind);
      return [c](double k) { return protocols::comabc_support(c, k); };
    case Kind::ar_df: {
      require(c.variant == Variant::interfering_relays,
              Variant::interfering_relays, c, kind);
      const ArdfParams params = protocols::ardf_search(c, opts.ardf_grid).params;
      return [c, params](double k) {
        return protocols::ardf_support_with(c, k, params);
      };
    }
  }
  throw ValidationError("unknown protocol kind");
}

std::vector<double> default_k_grid() {
  std::vector<double> ks(25);
  for (int i = 0; i < 25; ++i)
    ks[static_cast<std::size_t>(i)] = std::pow(10.0, -1.0 + 2.0 * i / 24.0);
  ks.front() = 0.1;
  ks.back() = 10.0;
  ks[12] = 1.0;
  return ks;
}

std::vector<double> parse_k_grid(std::string_view spec) {
  std::string s(spec);
  if (s.empty()) throw ValidationError("empty k grid");
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    bool log = false;
    const auto comma = s.find(',');
    if (comma != std::string::npos) {
      const std::string mode = s.substr(comma + 1);
      if (mode == "log") log = true;
      else if (mode != "lin") throw ValidationError("k grid spacing must be 'log' or 'lin', got '" + mode + "'");
      s.resize(comma);
    }
    const auto c1 = s.find(':');
    const auto c2 = s.find(':', c1 + 1);
    if (c2 == std::string::npos || s.find(':', c2 + 1) != std::string::npos)
      throw ValidationError("k grid range must be start:stop:count");
    const double start = parse_number(std::string_view(s).substr(0, c1));
    const double stop = parse_number(std::string_view(s).substr(c1 + 1, c2 - c1 - 1));
    const double count_d = parse_number(std::string_view(s).substr(c2 + 1));
    if (!(count_d >= 1.0) || count_d != std::floor(count_d) || count_d > 1e6)
      throw ValidationError("k grid count must be a positive integer");
    const int count = static_cast<int>(count_d);
    if (!std::isfinite(start) || !std::isfinite(stop) || start < 0.0 || stop < start)
      throw ValidationError("k grid range needs 0 <= start <= stop < inf");
    if (log && start <= 0.0)
      throw ValidationError("log-spaced k grid needs start > 0");
    if (count == 1) {
      if (start != stop) throw ValidationError("k grid with one point needs start == stop");
      out.push_back(start);
    } else {
      for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        out.push_back(log ? start * std::pow(stop / start, t)
                          : start + (stop - start) * t);
      }
      out.back() = stop;
    }
  } else {
    std::size_t pos = 0;
    while (pos <= s.size()) {
      const auto next = s.find(',', pos);
      const auto end = next == std::string::npos ? s.size() : next;
      out.push_back(parse_number(std::string_view(s).substr(pos, end - pos)));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    check_ratio(out[i]);
    if (i > 0 && !(out[i] > out[i - 1]))
      throw ValidationError("k grid must be strictly increasing");
  }
  return out;
}

RateRegion sweep(const SupportFn& generator, std::string label,
                 const ChannelConfig& channel, std::vector<double> k_grid,
                 const SweepOptions& opts) {
  if (k_grid.empty()) throw ValidationError("k grid is empty");
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    check_ratio(k_grid[i]);
    if (i > 0 && !(k_grid[i] > k_grid[i - 1]))
      throw ValidationError("k grid must be strictly increasing");
  }
  if (k_grid.front() != 0.0) k_grid.insert(k_grid.begin(), 0.0);
  if (!is_b_axis(k_grid.back())) k_grid.push_back(kBAxis);

  const std::size_t n = k_grid.size();
  std::vector<Sample> samples(n);
  std::vector<std::exception_ptr> errors(n);
  auto work = [&](std::size_t i) {
    try {
      samples[i] = to_sample(generator(k_grid[i]));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  unsigned threads = opts.threads == 0 ? std::thread::hardware_concurrency()
                                       : opts.threads;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) work(i);
      });
    for (auto& th : pool) th.join();
  }

  // Report the failure at the smallest k so the outcome does not depend on
  // thread timing.
  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    const std::string where = label + " at k=" + k_text(k_grid[i]) + ": ";
    try {
      std::rethrow_exception(errors[i]);
    } catch (const lp::SolverError& e) {
      throw SweepError(where + e.what(), k_grid[i], SweepError::Cause::solver);
    } catch (const DomainError& e) {
      throw SweepError(where + e.what(), k_grid[i], SweepError::Cause::domain);
    } catch (const ValidationError& e) {
      throw SweepError(where + e.what(), k_grid[i], SweepError::Cause::validation);
    } catch (const UnsupportedVariantError& e) {
      throw SweepError(where + e.what(), k_grid[i], SweepError::Cause::unsupported);
    } catch (const std::exception& e) {
      throw SweepError(where + e.what(), k_grid[i], SweepError::Cause::other);
    }
  }

  RateRegion r;
  r.label = std::move(label);
  r.convention = channel.convention;
  r.channel = channel;
  r.samples = std::move(samples);
  return r;
}

RateRegion compute_region(Kind kind, const ChannelConfig& channel,
                          const std::vector<double>& k_grid,
                          const GeneratorOptions& gen,
                          const SweepOptions& opts) {
  return sweep(make_generator(kind, channel, gen), std::string(to_string(kind)),
               channel, k_grid, opts);
}

RateRegion hull_of(const std::vector<RateRegion>& regions) {
  if (regions.empty()) throw ValidationError("hull of no regions");
  for (const auto& r : regions) {
    if (!(r.channel == regions.front().channel) ||
        r.convention != regions.front().convention)
      throw ValidationError("hull inputs '" + regions.front().label + "' and '" +
                            r.label + "' are on different channels");
    if (r.samples.empty())
      throw ValidationError("hull input '" + r.label + "' has no samples");
  }

  // Union of the ratio grids.
  std::vector<double> ks;
  for (const auto& r : regions)
    for (const auto& s : r.samples) ks.push_back(s.k);
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end(), same_k), ks.end());

  // Every sample, its projections on both axes (same schedule, one flow
  // idle) and the origin.
  const StateSchedule* any = &regions.front().samples.front().schedule;
  std::vector<HullVertex> pts{{0.0, 0.0, any}};
  for (const auto& r : regions)
    for (const auto& s : r.samples) {
      pts.push_back({s.rates.r_a, s.rates.r_b, &s.schedule});
      pts.push_back({s.rates.r_a, 0.0, &s.schedule});
      pts.push_back({0.0, s.rates.r_b, &s.schedule});
    }
  const std::vector<HullVertex> hull = convex_hull(pts);

  RateRegion out;
  out.label = "hull";
  out.convention = regions.front().convention;
  out.channel = regions.front().channel;
  for (double k : ks) {
    const double dx = is_b_axis(k) ? 0.0 : 1.0;
    const double dy = is_b_axis(k) ? 1.0 : k;
    double best_t = 0.0;
    StateSchedule best_sched = *any;
    const std::size_t m = hull.size();
    for (std::size_t i = 0; i < m; ++i) {
      const HullVertex& p = hull[i];
      const HullVertex& q = hull[(i + 1) % m];
      const double ex = q.x - p.x, ey = q.y - p.y;
      const double den = cross(dx, dy, ex, ey);
      const double scale = std::max({1.0, std::fabs(p.x), std::fabs(p.y),
                                     std::fabs(q.x), std::fabs(q.y)});
      auto consider = [&](double t, double lambda) {
        if (t > best_t) {
          best_t = t;
          best_sched.clear();
          for (const auto& [id, mu] : *p.schedule)
            best_sched[id] += (1.0 - lambda) * mu;
          for (const auto& [id, mu] : *q.schedule)
            best_sched[id] += lambda * mu;
        }
      };
      const double norm2 = dx * dx + dy * dy;
      if (std::fabs(den) <= 1e-14 * scale * std::sqrt(norm2)) {
        // Edge parallel to the ray: only matters when it lies on it.
        if (std::fabs(cross(dx, dy, p.x, p.y)) <= 1e-14 * scale * std::sqrt(norm2)) {
          consider((p.x * dx + p.y * dy) / norm2, 0.0);
          consider((q.x * dx + q.y * dy) / norm2, 1.0);
        }
        continue;
      }
      const double lambda = cross(p.x, p.y, dx, dy) / den;
      if (lambda < -1e-12 || lambda > 1.0 + 1e-12) continue;
      const double t = cross(p.x, p.y, ex, ey) / den;
      consider(t, std::clamp(lambda, 0.0, 1.0));
    }
    Sample s;
    s.k = k;
    s.rates = is_b_axis(k) ? RatePair{0.0, best_t}
                           : RatePair{best_t, k == 0.0 ? 0.0 : k * best_t};
    s.schedule = std::move(best_sched);
    out.samples.push_back(std::move(s));
  }
  return out;
}

bool ContainmentReport::pass() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const ContainmentEntry& e) { return e.pass; });
}

double ContainmentReport::min_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& e : entries) m = std::min(m, e.margin);
  return m;
}

ContainmentReport contains(const RateRegion& outer, const RateRegion& inner,
                           double tolerance) {
  if (!(outer.channel == inner.channel) || outer.convention != inner.convention)
    throw ValidationError("regions '" + outer.label + "' and '" + inner.label +
                          "' are on different channels");
  if (!(tolerance >= 0.0)) throw ValidationError("tolerance must be >= 0");
  ContainmentReport rep;
  rep.outer_label = outer.label;
  rep.inner_label = inner.label;
  rep.tolerance = tolerance;
  for (const auto& s : inner.samples) {
    const Sample* o = outer.find(s.k);
    if (!o) continue;
    ContainmentEntry e;
    e.k = s.k;
    e.outer_support = o->rates.support();
    e.inner_support = s.rates.support();
    e.margin = e.outer_support - e.inner_support;
    e.pass = e.inner_support <= e.outer_support + tolerance;
    rep.entries.push_back(e);
  }
  if (rep.entries.empty())
    throw ValidationError("regions '" + outer.label + "' and '" + inner.label +
                          "' share no k value");
  return rep;
}

std::vector<double> grid_oracle(const oracle::BoxEvaluator& box,
                                const std::vector<int>& states, int resolution,
                                const std::vector<double>& ks) {
  if (states.empty()) throw ValidationError("grid oracle needs at least one state");
  if (resolution < 10) throw ValidationError("grid oracle resolution must be >= 10");
  for (int id : states)
    if (id < 1 || id > kNumStates) throw ValidationError("bad state id in oracle");
  for (double k : ks) check_ratio(k);

  std::vector<double> best(ks.size(), 0.0);
  oracle::Mu mu{};
  std::vector<int> parts(states.size(), 0);
  const double res = resolution;

  // Compositions of `resolution` into states.size() parts, in
  // lexicographic order of the leading parts.
  const std::size_t n = states.size();
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == n) {
      parts[i] = left;
      for (std::size_t j = 0; j < n; ++j)
        mu[static_cast<std::size_t>(states[j])] = parts[j] / res;
      const RatePair b = box(mu);
      for (std::size_t j = 0; j < ks.size(); ++j)
        best[j] = std::max(best[j],
                           ray_point_in_box(std::max(0.0, b.r_a),
                                            std::max(0.0, b.r_b), ks[j])
                               .support());
      return;
    }
    for (int v = 0; v <= left; ++v) {
      parts[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, resolution);
  return best;
}

double grid_oracle(const oracle::BoxEvaluator& box,
                   const std::vector<int>& states, int resolution, double k) {
  return grid_oracle(box, states, resolution, std::vector<double>{k})[0];
}

}  // namespace diamond::regions
