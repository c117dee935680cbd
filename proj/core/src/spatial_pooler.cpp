#include <htmkit/spatial_pooler.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include <htmkit/errors.hpp>
#include <htmkit/metrics.hpp>

namespace htmkit {

void NetworkTopology::validate(std::size_t winners) const {
  if (columns == 0) throw ConfigError("columns", "must be >= 1");
  if (cells_per_column == 0) throw ConfigError("cells_per_column", "must be >= 1");
  if (input_width == 0) throw ConfigError("input_width", "must be >= 1");
  if (columns < winners) throw ConfigError("columns", "must be >= the desired winner count");
}

ProximalPermanences::ProximalPermanences(std::size_t columns, std::size_t input_width,
                                         double connect_threshold)
    : columns_(columns),
      input_width_(input_width),
      threshold_(connect_threshold),
      values_(columns * input_width, 0.0) {
  if (!(connect_threshold > 0.0 && connect_threshold < 1.0)) {
    throw ConfigError("perms_th", "must be in (0, 1)");
  }
}

ProximalPermanences ProximalPermanences::sample(std::size_t columns, std::size_t input_width,
                                                double connect_threshold, double potential_fraction,
                                                Rng& rng) {
  ProximalPermanences p(columns, input_width, connect_threshold);
  for (auto& v : p.values_) {
    v = rng.uniform() < potential_fraction ? rng.uniform() : 0.0;
  }
  return p;
}

void ProximalPermanences::set(std::size_t column, std::size_t bit, double value) {
  values_[column * input_width_ + bit] = std::clamp(value, 0.0, 1.0);
}

std::uint32_t InhibitionResult::min_winner_overlap() const {
  if (winners.empty()) return 0;
  std::uint32_t m = std::numeric_limits<std::uint32_t>::max();
  for (auto c : winners.active()) m = std::min(m, raw_overlaps[c]);
  return m;
}

std::vector<std::uint32_t> column_overlaps(const Sdr& input, const ProximalPermanences& perms,
                                           std::size_t min_overlap) {
  if (input.width() != perms.input_width()) {
    throw StructuralError("column_overlaps: input width " + std::to_string(input.width()) +
                          " does not match permanence width " +
                          std::to_string(perms.input_width()));
  }
  std::vector<std::uint32_t> scores(perms.columns(), 0);
  for (std::size_t c = 0; c < perms.columns(); ++c) {
    std::uint32_t n = 0;
    for (auto bit : input.active()) {
      if (perms.connected(c, bit)) ++n;
    }
    scores[c] = n >= min_overlap ? n : 0;
  }
  return scores;
}

InhibitionResult inhibit(std::span<const std::uint32_t> scores, std::size_t desired_local_activity) {
  std::vector<std::pair<std::uint32_t, double>> indexed(scores.size());
  for (std::size_t c = 0; c < scores.size(); ++c) {
    indexed[c] = {static_cast<std::uint32_t>(c), static_cast<double>(scores[c])};
  }
  auto winners = top_k(indexed, desired_local_activity);
  return InhibitionResult{Sdr(scores.size(), std::move(winners)),
                          std::vector<std::uint32_t>(scores.begin(), scores.end())};
}

std::size_t PoolerConfig::winner_count() const {
  if (desired_local_activity) return *desired_local_activity;
  const auto k = static_cast<std::size_t>(
      std::llround(*sparsity_percent / 100.0 * static_cast<double>(columns)));
  return std::max<std::size_t>(k, 1);
}

void PoolerConfig::validate() const {
  if (desired_local_activity.has_value() == sparsity_percent.has_value()) {
    throw ConfigError("desired_localActivity",
                      "exactly one of desired_localActivity and sparsity_percent must be set");
  }
  if (desired_local_activity && *desired_local_activity == 0) {
    throw ConfigError("desired_localActivity", "must be >= 1");
  }
  if (sparsity_percent && !(*sparsity_percent > 0.0 && *sparsity_percent <= 100.0)) {
    throw ConfigError("sparsity_percent", "must be in (0, 100]");
  }
  if (columns == 0) throw ConfigError("columns", "must be >= 1");
  if (winner_count() > columns) throw ConfigError("columns", "must be >= the desired winner count");
  if (!(connect_threshold > 0.0 && connect_threshold < 1.0)) {
    throw ConfigError("perms_th", "must be in (0, 1)");
  }
  if (!(potential_fraction > 0.0 && potential_fraction <= 1.0)) {
    throw ConfigError("potential_fraction", "must be in (0, 1]");
  }
  if (iters == 0) throw ConfigError("iters", "must be >= 1");
  if (seq_size == 0) throw ConfigError("seq_size", "must be >= 1");
}

InhibitionResult pool(const Sdr& input, const ProximalPermanences& perms, const PoolerConfig& cfg) {
  const auto scores = column_overlaps(input, perms, cfg.min_overlap);
  return inhibit(scores, cfg.winner_count());
}

std::vector<double> McTrace::running_min() const {
  std::vector<double> out(mape.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < mape.size(); ++i) {
    best = std::min(best, mape[i]);
    out[i] = best;
  }
  return out;
}

MixedIntegerSequence decode_pooled(std::span<const Sdr> pooled, const MixedIntegerSequence& original) {
  if (pooled.size() != original.size()) {
    throw StructuralError("decode_pooled: pooled and original row counts differ");
  }
  MixedIntegerSequence out;
  out.rows.reserve(pooled.size());
  for (std::size_t r = 0; r < pooled.size(); ++r) {
    const std::size_t ceiling = pooled[r].size();
    std::size_t best_q = 0;
    std::size_t best = 0;
    bool found = false;
    // q == r reaches the ceiling, so the scan always stops by r.
    for (std::size_t q = 0; q <= r; ++q) {
      const auto s = overlap(pooled[q], pooled[r]).value;
      if (!found || s > best) {
        best = s;
        best_q = q;
        found = true;
      }
      if (best == ceiling) break;
    }
    out.rows.push_back(original.rows[best_q]);
  }
  return out;
}

namespace {

std::vector<double> flatten(const MixedIntegerSequence& s) {
  std::vector<double> out;
  for (const auto& row : s.rows) out.insert(out.end(), row.begin(), row.end());
  return out;
}

struct Trial {
  ProximalPermanences perms;
  std::vector<InhibitionResult> pooled;
  MixedIntegerSequence decoded;
  double mape = 0.0;
};

Trial run_trial(const std::vector<Sdr>& inputs, const MixedIntegerSequence& original,
                const std::vector<double>& truth, std::size_t input_width, const PoolerConfig& cfg,
                std::uint64_t seed, std::size_t index) {
  Rng rng(derive_seed(seed, index));
  Trial t;
  t.perms = ProximalPermanences::sample(cfg.columns, input_width, cfg.connect_threshold,
                                        cfg.potential_fraction, rng);
  t.pooled.reserve(inputs.size());
  std::vector<Sdr> winners;
  winners.reserve(inputs.size());
  for (const auto& in : inputs) {
    t.pooled.push_back(pool(in, t.perms, cfg));
    winners.push_back(t.pooled.back().winners);
  }
  t.decoded = decode_pooled(winners, original);
  t.mape = mape(truth, flatten(t.decoded)).percent;
  return t;
}

}  // namespace

EvolveResult evolve_sdr(const MixedIntegerSequence& data, const RowEncoder& encoder,
                        const PoolerConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  if (data.empty()) throw DataError("evolve_sdr: empty dataset");

  EvolveResult result;
  const auto n = std::min(cfg.seq_size, data.size());
  result.original.rows.assign(data.rows.begin(), data.rows.begin() + static_cast<std::ptrdiff_t>(n));
  result.inputs.reserve(n);
  for (const auto& row : result.original.rows) result.inputs.push_back(encoder.encode(row));

  const auto truth = flatten(result.original);
  if (std::all_of(truth.begin(), truth.end(), [](double v) { return v == 0.0; })) {
    throw DataError("evolve_sdr: dataset is all zeros, reconstruction MAPE is undefined");
  }

  std::vector<double> trial_mape(cfg.iters, 0.0);
  std::size_t workers = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, cfg.iters);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      for (auto i = next.fetch_add(1); i < cfg.iters; i = next.fetch_add(1)) {
        trial_mape[i] =
            run_trial(result.inputs, result.original, truth, encoder.width(), cfg, seed, i).mape;
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool_threads;
    for (std::size_t w = 0; w < workers; ++w) pool_threads.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  result.trace.mape = trial_mape;
  result.trace.best_iteration = static_cast<std::size_t>(
      std::min_element(trial_mape.begin(), trial_mape.end()) - trial_mape.begin());

  // Re-run the winning trial; it is fully determined by its sub-seed.
  auto best = run_trial(result.inputs, result.original, truth, encoder.width(), cfg, seed,
                        result.trace.best_iteration);
  result.trace.best_permanences = std::move(best.perms);
  result.pooled = std::move(best.pooled);
  result.decoded = std::move(best.decoded);
  return result;
}

}  // namespace htmkit
