#include "rhk/hawkes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rhk/errors.hpp"

namespace rhk {

void validate(const HawkesParams& p) {
  if (!(p.mu > 0.0)) throw DomainError("HawkesParams: mu must be > 0");
  if (!(p.a > 0.0) || !(p.a < 1.0))
    throw DomainError("HawkesParams: branching ratio must be in (0, 1)");
  if (!(p.horizon > 0.0)) throw DomainError("HawkesParams: horizon must be > 0");
  validate(p.kernel);
}

std::size_t EventRecord::count_until(double t) const {
  return static_cast<std::size_t>(
      std::upper_bound(times.begin(), times.end(), t) - times.begin());
}

namespace detail {

std::size_t grow_cluster(RngStream& rng, const HawkesParams& p, double root_time,
                         std::uint32_t root_gen, std::vector<double>& times,
                         std::vector<std::uint32_t>& gens,
                         std::uint64_t remaining_budget) {
  // breadth-first over the branching tree; delays are positive, so children
  // past the horizon can be dropped without losing within-horizon descendants
  std::size_t appended = 0;
  std::size_t frontier_begin = times.size();
  times.push_back(root_time);
  gens.push_back(root_gen);
  ++appended;
  while (frontier_begin < times.size()) {
    std::size_t frontier_end = times.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      const double parent = times[i];
      const std::uint32_t gen = gens[i] + 1;
      std::uint64_t n_children = rng.poisson(p.a);
      for (std::uint64_t c = 0; c < n_children; ++c) {
        double t = parent + sample_delay(p.kernel, rng.uniform01());
        if (t > p.horizon) continue;
        if (appended >= remaining_budget)
          throw ResourceError("hawkes: event cap exceeded (max_events)");
        times.push_back(t);
        gens.push_back(gen);
        ++appended;
      }
    }
    frontier_begin = frontier_end;
  }
  return appended;
}

}  // namespace detail

namespace {

void sort_record(std::vector<double>& times, std::vector<std::uint32_t>& gens) {
  std::vector<std::size_t> idx(times.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (times[a] != times[b]) return times[a] < times[b];
    if (gens[a] != gens[b]) return gens[a] < gens[b];
    return a < b;
  });
  std::vector<double> ts(times.size());
  std::vector<std::uint32_t> gs(times.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    ts[i] = times[idx[i]];
    gs[i] = gens[idx[i]];
  }
  times.swap(ts);
  gens.swap(gs);
}

}  // namespace

EventRecord simulate_cluster(const HawkesParams& p, std::uint64_t seed) {
  validate(p);
  RngStream rng(seed, 0);

  std::vector<double> times;
  std::vector<std::uint32_t> gens;

  std::uint64_t n_imm = rng.poisson(p.mu * p.horizon);
  if (n_imm > p.max_events)
    throw ResourceError("hawkes: immigrant count exceeds max_events");
  std::vector<double> roots(n_imm);
  for (auto& t : roots) t = p.horizon * rng.uniform01();
  std::sort(roots.begin(), roots.end());

  for (double root : roots) {
    if (times.size() >= p.max_events)
      throw ResourceError("hawkes: event cap exceeded (max_events)");
    detail::grow_cluster(rng, p, root, 0, times, gens,
                         p.max_events - times.size());
  }
  sort_record(times, gens);

  EventRecord rec;
  rec.times = std::move(times);
  rec.generation = std::move(gens);
  rec.seed = seed;
  rec.params = p;
  return rec;
}

namespace {

// Monotone envelope of the kernel density: sup_{d' >= d} phi(d').  Equal to
// phi itself for ShiftedPareto; for ParetoFrom1 the density is zero before
// the support opens at 1 but jumps up there, so the future supremum is
// phi(max(d, 1)).
inline double phi_envelope(const KernelSpec& k, double d) {
  double lo = support_left(k);
  return phi(k, d < lo ? lo : d);
}

// Intensity bookkeeping for thinning.  Exact by default; with compression on,
// events older than compress_after are summarized into coarse time bins whose
// contribution is certified by an interval from phi's monotonicity.  If the
// interval ever gets wider than eps_hist the exact sum is used instead.
class IntensityCache {
 public:
  IntensityCache(const HawkesParams& p, const ThinningOptions& opt)
      : p_(p), opt_(opt), bin_w_(opt.compress_after / 8.0) {}

  void add_event(double t) { events_.push_back(t); }

  // fold aged events into bins; event times arrive in increasing order
  void advance(double now) {
    if (!opt_.compress) return;
    while (comp_end_ < events_.size() &&
           events_[comp_end_] < now - opt_.compress_after) {
      double t = events_[comp_end_];
      long cell = static_cast<long>(std::floor(t / bin_w_));
      if (bins_.empty() || bins_.back().cell != cell)
        bins_.push_back({cell, t, t, 0});
      bins_.back().last = t;
      bins_.back().count += 1;
      ++comp_end_;
    }
  }

  // exact intensity
  double exact(double t) const {
    double s = 0.0;
    for (double e : events_) {
      if (e >= t) break;
      s += phi(p_.kernel, t - e);
    }
    return p_.mu + p_.a * s;
  }

  // intensity with |error| <= eps_hist/2, falling back to exact
  double approx(double t) const {
    if (!opt_.compress) return exact(t);
    double lo = 0.0, hi = 0.0;
    for (const auto& b : bins_) {
      double n = static_cast<double>(b.count);
      lo += n * phi(p_.kernel, t - b.first);
      hi += n * phi_envelope(p_.kernel, t - b.last);
    }
    if (p_.a * (hi - lo) > opt_.eps_hist) return exact(t);
    double s = 0.5 * (lo + hi);
    for (std::size_t i = comp_end_; i < events_.size(); ++i) {
      if (events_[i] >= t) break;
      s += phi(p_.kernel, t - events_[i]);
    }
    return p_.mu + p_.a * s;
  }

  // Dominating rate valid on (t, infinity).  Events at exactly t must count:
  // right after an acceptance the current time sits on the newest event, whose
  // future contribution is bounded by phi_envelope(0).
  double majorant(double t) const {
    double s = 0.0;
    if (opt_.compress) {
      for (const auto& b : bins_)
        s += static_cast<double>(b.count) * phi_envelope(p_.kernel, t - b.last);
      for (std::size_t i = comp_end_; i < events_.size(); ++i) {
        if (events_[i] > t) break;
        s += phi_envelope(p_.kernel, t - events_[i]);
      }
    } else {
      for (double e : events_) {
        if (e > t) break;
        s += phi_envelope(p_.kernel, t - e);
      }
    }
    return p_.mu + p_.a * s;
  }

  const std::vector<double>& events() const { return events_; }

 private:
  struct Bin {
    long cell;
    double first, last;
    std::uint32_t count;
  };
  const HawkesParams& p_;
  const ThinningOptions& opt_;
  double bin_w_;
  std::vector<double> events_;
  std::vector<Bin> bins_;
  std::size_t comp_end_ = 0;
};

}  // namespace

EventRecord simulate_thinning(const HawkesParams& p, std::uint64_t seed,
                              const ThinningOptions& opt) {
  validate(p);
  RngStream rng(seed, 0);
  IntensityCache cache(p, opt);
  std::vector<std::uint32_t> gens;

  double t = 0.0;
  while (true) {
    cache.advance(t);
    double bound = cache.majorant(t);
    t += rng.exponential(bound);
    if (t > p.horizon) break;
    double lam = cache.approx(t);
    if (rng.uniform01() * bound <= lam) {
      // attribute the trigger: immigrant with prob mu/lam, else event i with
      // prob a*phi(t-t_i)/lam (exact contributions, not the cached ones)
      double pick = rng.uniform01() * cache.exact(t);
      std::uint32_t gen = 0;
      double acc = p.mu;
      if (pick > acc) {
        const auto& ev = cache.events();
        for (std::size_t i = 0; i < ev.size(); ++i) {
          acc += p.a * phi(p.kernel, t - ev[i]);
          if (pick <= acc) {
            gen = gens[i] + 1;
            break;
          }
        }
        if (gen == 0) gen = gens.empty() ? 0 : gens.back() + 1;  // rounding tail
      }
      if (cache.events().size() >= p.max_events)
        throw ResourceError("hawkes: event cap exceeded (max_events)");
      cache.add_event(t);
      gens.push_back(gen);
    }
  }

  EventRecord rec;
  rec.times = cache.events();
  rec.generation = std::move(gens);
  rec.seed = seed;
  rec.params = p;
  return rec;
}

double intensity_at(const EventRecord& r, double t) {
  if (t < 0.0 || t > r.params.horizon)
    throw DomainError("intensity_at: t outside [0, horizon]");
  double s = 0.0;
  for (double e : r.times) {
    if (e >= t) break;
    s += phi(r.params.kernel, t - e);
  }
  return r.params.mu + r.params.a * s;
}

double compensator(const EventRecord& r, double t) {
  if (t < 0.0 || t > r.params.horizon)
    throw DomainError("compensator: t outside [0, horizon]");
  double s = 0.0;
  for (double e : r.times) {
    if (e >= t) break;
    s += cdf(r.params.kernel, t - e);
  }
  return r.params.mu * t + r.params.a * s;
}

}  // namespace rhk
