#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <htmkit/encoders.hpp>
#include <htmkit/rng.hpp>
#include <htmkit/sdr.hpp>

namespace htmkit {

/// N columns of M cells over an input space of `input_width` bits.
struct NetworkTopology {
  std::size_t columns = 0;
  std::size_t cells_per_column = 0;
  std::size_t input_width = 0;

  /// Throws ConfigError unless columns >= winners and every size is positive.
  void validate(std::size_t winners) const;
};

/// Dense columns x input_width proximal permanence matrix. A synapse is
/// connected when its permanence is >= connect_threshold.
class ProximalPermanences {
public:
  ProximalPermanences() = default;
  ProximalPermanences(std::size_t columns, std::size_t input_width, double connect_threshold);

  /// Fresh matrix: each synapse is potential with probability
  /// `potential_fraction`, and potential synapses get a uniform [0,1)
  /// permanence. Non-potential synapses are 0.
  static ProximalPermanences sample(std::size_t columns, std::size_t input_width,
                                    double connect_threshold, double potential_fraction, Rng& rng);

  std::size_t columns() const { return columns_; }
  std::size_t input_width() const { return input_width_; }
  double connect_threshold() const { return threshold_; }

  double at(std::size_t column, std::size_t bit) const { return values_[column * input_width_ + bit]; }
  /// Stores the value clamped into [0,1].
  void set(std::size_t column, std::size_t bit, double value);
  bool connected(std::size_t column, std::size_t bit) const {
    return at(column, bit) >= threshold_;
  }

  std::span<const double> values() const { return values_; }

private:
  std::size_t columns_ = 0;
  std::size_t input_width_ = 0;
  double threshold_ = 0.0;
  std::vector<double> values_;
};

/// Winning columns for one input plus the per-column scores they were
/// selected from.
struct InhibitionResult {
  Sdr winners;
  std::vector<std::uint32_t> raw_overlaps;

  /// Smallest overlap among the winners (0 when there are none).
  std::uint32_t min_winner_overlap() const;
};

/// Per-column count of active input bits on connected synapses, zeroed when
/// below `min_overlap`. Throws StructuralError on width mismatch.
std::vector<std::uint32_t> column_overlaps(const Sdr& input, const ProximalPermanences& perms,
                                           std::size_t min_overlap);

/// k-winners-take-all over the column scores (ties to the lowest column).
InhibitionResult inhibit(std::span<const std::uint32_t> scores, std::size_t desired_local_activity);

struct PoolerConfig {
  std::size_t columns = 128;
  std::size_t min_overlap = 2;
  double connect_threshold = 0.21;
  /// Absolute winner count. Exactly one of this and sparsity_percent is set.
  std::optional<std::size_t> desired_local_activity = 2;
  std::optional<double> sparsity_percent;
  double potential_fraction = 0.5;
  std::size_t iters = 50;
  std::size_t seq_size = 700;
  /// Worker threads for the trials; 0 picks the hardware concurrency.
  std::size_t threads = 0;

  std::size_t winner_count() const;
  void validate() const;
};

/// Spatially pools one encoded input.
InhibitionResult pool(const Sdr& input, const ProximalPermanences& perms, const PoolerConfig& cfg);

/// Per-iteration reconstruction MAPE of the Monte Carlo search.
struct McTrace {
  std::vector<double> mape;
  std::size_t best_iteration = 0;
  ProximalPermanences best_permanences;

  /// Best-so-far MAPE after each iteration.
  std::vector<double> running_min() const;
};

/// Integer view recovered from pooled rows: each pooled row decodes to the
/// original row of the lowest-index exemplar whose pooled SDR overlaps it the
/// most. Collisions between distinct exemplars show up as errors.
MixedIntegerSequence decode_pooled(std::span<const Sdr> pooled, const MixedIntegerSequence& original);

struct EvolveResult {
  McTrace trace;
  /// Rows actually used (min(seq_size, data rows)).
  MixedIntegerSequence original;
  std::vector<Sdr> inputs;
  std::vector<InhibitionResult> pooled;
  MixedIntegerSequence decoded;
};

/// Random-restart Monte Carlo search over proximal permanences.
///
/// Runs cfg.iters independent trials on the first seq_size rows. Trial t
/// draws its permanences from derive_seed(seed, t), pools every row, decodes
/// the pooled rows and records the reconstruction MAPE. Returns the full
/// trace and the pooled rows of the minimum-MAPE trial (ties to the lowest
/// trial). Results do not depend on the thread count.
///
/// Throws DataError on empty data, ConfigError on invalid config.
EvolveResult evolve_sdr(const MixedIntegerSequence& data, const RowEncoder& encoder,
                        const PoolerConfig& cfg, std::uint64_t seed);

}  // namespace htmkit
