#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include <htmkit/rng.hpp>
#include <htmkit/sdr.hpp>

namespace htmkit {

/// M x N binary matrix over the cells of the region, cell i of column j.
/// Cells are flattened column-major: flat = j * M + i.
class CellMatrix {
public:
  CellMatrix() = default;
  CellMatrix(std::size_t cells_per_column, std::size_t columns)
      : cells_(cells_per_column), columns_(columns), bits_(cells_per_column * columns, 0) {}

  std::size_t cells_per_column() const { return cells_; }
  std::size_t columns() const { return columns_; }
  std::size_t size() const { return bits_.size(); }

  std::uint32_t flat(std::size_t cell, std::size_t column) const {
    return static_cast<std::uint32_t>(column * cells_ + cell);
  }
  bool at(std::size_t cell, std::size_t column) const { return bits_[column * cells_ + cell] != 0; }
  bool at_flat(std::uint32_t flat) const { return bits_[flat] != 0; }
  void set(std::size_t cell, std::size_t column, bool on = true) {
    bits_[column * cells_ + cell] = on ? 1 : 0;
  }

  std::size_t count_in_column(std::size_t column) const;
  std::size_t count() const;
  /// Flat indices of the set cells, ascending.
  std::vector<std::uint32_t> set_cells() const;
  /// Columns with at least one set cell.
  Sdr columns_sdr() const;
  /// Cell-level SDR of width M * N.
  Sdr cells_sdr() const;

  friend bool operator==(const CellMatrix&, const CellMatrix&) = default;

private:
  std::size_t cells_ = 0;
  std::size_t columns_ = 0;
  std::vector<std::uint8_t> bits_;
};

struct Synapse {
  std::uint32_t presynaptic = 0;  // flat cell index
  double permanence = 0.0;

  friend bool operator==(const Synapse&, const Synapse&) = default;
};

/// Distal dendrite segment. Its permanence matrix over the cell space is the
/// synapse list with zeros everywhere else.
struct Segment {
  std::vector<Synapse> synapses;  // sorted by presynaptic index
  std::uint64_t created = 0;      // growth order, for oldest-first replacement

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Distal segments of every cell, with the thresholds that derive the
/// connected view and the predictive test.
class SegmentStore {
public:
  SegmentStore() = default;
  SegmentStore(std::size_t cells_per_column, std::size_t columns, double connect_threshold,
               std::size_t activation_threshold, std::size_t max_segments_per_cell = 32);

  std::size_t cells_per_column() const { return cells_; }
  std::size_t columns() const { return columns_; }
  std::size_t cell_count() const { return segments_.size(); }
  double connect_threshold() const { return connect_threshold_; }
  std::size_t activation_threshold() const { return activation_threshold_; }
  std::size_t max_segments_per_cell() const { return max_segments_; }

  std::span<const Segment> segments(std::uint32_t cell) const { return segments_[cell]; }
  std::vector<Segment>& mutable_segments(std::uint32_t cell) { return segments_[cell]; }
  std::size_t segment_count() const;

  /// ||connected(segment) o active||_1.
  std::size_t connected_overlap(const Segment& segment, const CellMatrix& active) const;

  /// Appends a segment; replaces the oldest one when the cell is at capacity.
  /// Returns true when a segment was replaced.
  bool add_segment(std::uint32_t cell, Segment segment);

  std::uint64_t next_created() const { return created_counter_; }
  void set_next_created(std::uint64_t value) { created_counter_ = value; }

  friend bool operator==(const SegmentStore&, const SegmentStore&) = default;

private:
  std::size_t cells_ = 0;
  std::size_t columns_ = 0;
  double connect_threshold_ = 0.21;
  std::size_t activation_threshold_ = 1;
  std::size_t max_segments_ = 32;
  std::uint64_t created_counter_ = 0;
  std::vector<std::vector<Segment>> segments_;
};

enum class LearningRule {
  /// dD = p+ (D o A) - p- D, both terms scaled by the current permanence.
  multiplicative,
  /// Existing synapses move by +p+ when the presynaptic cell was active and
  /// by -p- otherwise.
  additive,
};

struct LearningParams {
  double p_plus = 0.1;
  double p_minus = 0.02;
  LearningRule rule = LearningRule::multiplicative;

  void validate() const;
};

struct TemporalParams {
  std::size_t columns = 0;
  std::size_t cells_per_column = 4;
  std::size_t activation_threshold = 1;  // theta
  double connect_threshold = 0.21;
  double initial_permanence = 0.22;
  std::size_t max_segments_per_cell = 32;
  LearningParams learning;

  void validate() const;
};

/// Activation and prediction matrices for t and t-1.
struct TemporalState {
  CellMatrix active;
  CellMatrix predictive;
  CellMatrix prev_active;
  CellMatrix prev_predictive;

  TemporalState() = default;
  TemporalState(std::size_t cells_per_column, std::size_t columns)
      : active(cells_per_column, columns),
        predictive(cells_per_column, columns),
        prev_active(cells_per_column, columns),
        prev_predictive(cells_per_column, columns) {}
};

struct SegmentRef {
  std::uint32_t cell = 0;
  std::uint32_t segment = 0;
};

/// pi_ij = 1 iff some segment of cell (i,j) has connected-active overlap
/// strictly greater than the activation threshold.
CellMatrix compute_predictive(const CellMatrix& active, const SegmentStore& segments);

/// Winning columns activate their previously predicted cells, or every cell
/// when none was predicted (burst). Other columns stay silent.
CellMatrix compute_active(const Sdr& winning_columns, const CellMatrix& prev_predictive);

/// Applies the learning rule to each referenced segment against A^{t-1},
/// clamping every permanence into [0,1].
void learn(SegmentStore& segments, const CellMatrix& prev_active, const LearningParams& params,
           std::span<const SegmentRef> reinforced);

/// Grows one segment on `cell` with `initial_permanence` at each sampled
/// presynaptic cell. Returns true when the cell was at capacity and its
/// oldest segment was replaced. Throws StructuralError on an empty sample.
bool grow_segment(SegmentStore& segments, std::uint32_t cell, std::span<const std::uint32_t> sample,
                  double initial_permanence);

struct StepReport {
  std::vector<std::uint32_t> bursting_columns;
  std::vector<SegmentRef> reinforced;
  /// Flat cells that received a new segment.
  std::vector<std::uint32_t> grown_on;
  std::size_t replaced = 0;
};

/// One time step: compute_active, then (if learning) reinforcement of the
/// segments that correctly predicted and growth on bursting columns, then
/// compute_predictive. Rotates the t / t-1 views of `state`.
///
/// On a burst the winner cell is the one owning the highest-overlap segment
/// against A^{t-1} (ties to the lowest cell index); the new segment samples
/// up to theta + 1 cells of A^{t-1} using `rng`.
StepReport temporal_step(const Sdr& winning_columns, TemporalState& state, SegmentStore& segments,
                         const TemporalParams& params, bool learning_enabled, Rng& rng);

/// Single-writer temporal memory region.
class TemporalMemory {
public:
  TemporalMemory(const TemporalParams& params, std::uint64_t seed);

  StepReport step(const Sdr& winning_columns, bool learning_enabled);

  /// Clears the activity (not the learned segments), e.g. between passes.
  void reset_state();

  const TemporalState& state() const { return state_; }
  const SegmentStore& segments() const { return segments_; }
  const TemporalParams& params() const { return params_; }

  /// Columns holding at least one predictive cell.
  Sdr predicted_columns() const { return state_.predictive.columns_sdr(); }

  void restore(SegmentStore segments);

private:
  TemporalParams params_;
  TemporalState state_;
  SegmentStore segments_;
  Rng rng_;
};

/// Versioned checkpoint document, see the README for the layout.
nlohmann::json segments_to_json(const SegmentStore& segments);
/// Throws DataError on an unknown format or version.
SegmentStore segments_from_json(const nlohmann::json& doc);

}  // namespace htmkit
