#include <htmkit/temporal_memory.hpp>

#include <algorithm>
#include <string>

#include <nlohmann/json.hpp>

#include <htmkit/errors.hpp>

namespace htmkit {

std::size_t CellMatrix::count_in_column(std::size_t column) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < cells_; ++i) n += bits_[column * cells_ + i];
  return n;
}

std::size_t CellMatrix::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<std::uint32_t> CellMatrix::set_cells() const {
  std::vector<std::uint32_t> out;
  for (std::size_t k = 0; k < bits_.size(); ++k) {
    if (bits_[k] != 0) out.push_back(static_cast<std::uint32_t>(k));
  }
  return out;
}

Sdr CellMatrix::columns_sdr() const {
  std::vector<std::uint32_t> cols;
  for (std::size_t j = 0; j < columns_; ++j) {
    if (count_in_column(j) > 0) cols.push_back(static_cast<std::uint32_t>(j));
  }
  return Sdr(columns_, std::move(cols));
}

Sdr CellMatrix::cells_sdr() const { return Sdr(bits_.size(), set_cells()); }

SegmentStore::SegmentStore(std::size_t cells_per_column, std::size_t columns,
                           double connect_threshold, std::size_t activation_threshold,
                           std::size_t max_segments_per_cell)
    : cells_(cells_per_column),
      columns_(columns),
      connect_threshold_(connect_threshold),
      activation_threshold_(activation_threshold),
      max_segments_(max_segments_per_cell),
      segments_(cells_per_column * columns) {
  if (max_segments_per_cell == 0) throw ConfigError("max_segments_per_cell", "must be >= 1");
}

std::size_t SegmentStore::segment_count() const {
  std::size_t n = 0;
  for (const auto& s : segments_) n += s.size();
  return n;
}

std::size_t SegmentStore::connected_overlap(const Segment& segment, const CellMatrix& active) const {
  std::size_t n = 0;
  for (const auto& syn : segment.synapses) {
    if (syn.permanence >= connect_threshold_ && active.at_flat(syn.presynaptic)) ++n;
  }
  return n;
}

bool SegmentStore::add_segment(std::uint32_t cell, Segment segment) {
  segment.created = created_counter_++;
  auto& list = segments_[cell];
  if (list.size() < max_segments_) {
    list.push_back(std::move(segment));
    return false;
  }
  auto oldest = std::min_element(list.begin(), list.end(), [](const Segment& a, const Segment& b) {
    return a.created < b.created;
  });
  *oldest = std::move(segment);
  return true;
}

void LearningParams::validate() const {
  if (!(p_plus > 0.0 && p_plus <= 1.0)) throw ConfigError("p_plus", "must be in (0, 1]");
  if (!(p_minus >= 0.0 && p_minus <= 1.0)) throw ConfigError("p_minus", "must be in [0, 1]");
}

void TemporalParams::validate() const {
  if (columns == 0) throw ConfigError("columns", "must be >= 1");
  if (cells_per_column == 0) throw ConfigError("cells_per_column", "must be >= 1");
  if (!(connect_threshold > 0.0 && connect_threshold < 1.0)) {
    throw ConfigError("perms_th", "must be in (0, 1)");
  }
  if (!(initial_permanence >= connect_threshold && initial_permanence <= 1.0)) {
    throw ConfigError("initial_permanence", "must be in [perms_th, 1]");
  }
  if (max_segments_per_cell == 0) throw ConfigError("max_segments_per_cell", "must be >= 1");
  learning.validate();
}

CellMatrix compute_predictive(const CellMatrix& active, const SegmentStore& segments) {
  CellMatrix pi(active.cells_per_column(), active.columns());
  for (std::uint32_t cell = 0; cell < segments.cell_count(); ++cell) {
    for (const auto& seg : segments.segments(cell)) {
      if (segments.connected_overlap(seg, active) > segments.activation_threshold()) {
        pi.set(cell % active.cells_per_column(), cell / active.cells_per_column());
        break;
      }
    }
  }
  return pi;
}

CellMatrix compute_active(const Sdr& winning_columns, const CellMatrix& prev_predictive) {
  if (winning_columns.width() != prev_predictive.columns()) {
    throw StructuralError("compute_active: winner width does not match the column count");
  }
  const auto m = prev_predictive.cells_per_column();
  CellMatrix a(m, prev_predictive.columns());
  for (auto j : winning_columns.active()) {
    const bool any_predicted = prev_predictive.count_in_column(j) > 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!any_predicted || prev_predictive.at(i, j)) a.set(i, j);
    }
  }
  return a;
}

void learn(SegmentStore& segments, const CellMatrix& prev_active, const LearningParams& params,
           std::span<const SegmentRef> reinforced) {
  for (const auto& ref : reinforced) {
    auto& seg = segments.mutable_segments(ref.cell).at(ref.segment);
    for (auto& syn : seg.synapses) {
      const double a = prev_active.at_flat(syn.presynaptic) ? 1.0 : 0.0;
      const double d = syn.permanence;
      double next = 0.0;
      if (params.rule == LearningRule::multiplicative) {
        next = d + params.p_plus * (d * a) - params.p_minus * d;
      } else {
        next = d + params.p_plus * a - params.p_minus * (1.0 - a);
      }
      syn.permanence = std::clamp(next, 0.0, 1.0);
    }
  }
}

bool grow_segment(SegmentStore& segments, std::uint32_t cell, std::span<const std::uint32_t> sample,
                  double initial_permanence) {
  if (sample.empty()) throw StructuralError("grow_segment: empty presynaptic sample");
  Segment seg;
  seg.synapses.reserve(sample.size());
  for (auto pre : sample) seg.synapses.push_back(Synapse{pre, std::clamp(initial_permanence, 0.0, 1.0)});
  std::sort(seg.synapses.begin(), seg.synapses.end(),
            [](const Synapse& l, const Synapse& r) { return l.presynaptic < r.presynaptic; });
  seg.synapses.erase(std::unique(seg.synapses.begin(), seg.synapses.end(),
                                 [](const Synapse& l, const Synapse& r) {
                                   return l.presynaptic == r.presynaptic;
                                 }),
                     seg.synapses.end());
  return segments.add_segment(cell, std::move(seg));
}

namespace {

std::uint32_t burst_winner_cell(std::uint32_t column, const CellMatrix& prev_active,
                                const SegmentStore& segments) {
  const auto m = segments.cells_per_column();
  std::uint32_t best_cell = 0;
  std::size_t best = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto flat = static_cast<std::uint32_t>(column * m + i);
    for (const auto& seg : segments.segments(flat)) {
      const auto o = segments.connected_overlap(seg, prev_active);
      if (o > best) {
        best = o;
        best_cell = static_cast<std::uint32_t>(i);
      }
    }
  }
  return static_cast<std::uint32_t>(column * m + best_cell);
}

std::vector<std::uint32_t> sample_cells(std::vector<std::uint32_t> pool, std::size_t n, Rng& rng) {
  n = std::min(n, pool.size());
  for (std::size_t k = 0; k < n; ++k) {
    const auto pick = k + rng.index(pool.size() - k);
    std::swap(pool[k], pool[pick]);
  }
  pool.resize(n);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

StepReport temporal_step(const Sdr& winning_columns, TemporalState& state, SegmentStore& segments,
                         const TemporalParams& params, bool learning_enabled, Rng& rng) {
  StepReport report;
  const auto& prev_active = state.active;
  const auto& prev_predictive = state.predictive;

  auto active = compute_active(winning_columns, prev_predictive);
  for (auto j : winning_columns.active()) {
    if (prev_predictive.count_in_column(j) == 0) report.bursting_columns.push_back(j);
  }

  if (learning_enabled) {
    for (auto cell : active.set_cells()) {
      const auto segs = segments.segments(cell);
      for (std::size_t s = 0; s < segs.size(); ++s) {
        if (segments.connected_overlap(segs[s], prev_active) > segments.activation_threshold()) {
          report.reinforced.push_back(SegmentRef{cell, static_cast<std::uint32_t>(s)});
        }
      }
    }

    std::vector<std::uint32_t> winners;
    for (auto j : report.bursting_columns) winners.push_back(burst_winner_cell(j, prev_active, segments));

    learn(segments, prev_active, params.learning, report.reinforced);

    const auto prev_cells = prev_active.set_cells();
    if (!prev_cells.empty()) {
      for (auto cell : winners) {
        const auto sample = sample_cells(prev_cells, params.activation_threshold + 1, rng);
        if (grow_segment(segments, cell, sample, params.initial_permanence)) ++report.replaced;
        report.grown_on.push_back(cell);
      }
    }
  }

  auto predictive = compute_predictive(active, segments);
  state.prev_active = std::move(state.active);
  state.prev_predictive = std::move(state.predictive);
  state.active = std::move(active);
  state.predictive = std::move(predictive);
  return report;
}

TemporalMemory::TemporalMemory(const TemporalParams& params, std::uint64_t seed)
    : params_(params),
      state_(params.cells_per_column, params.columns),
      segments_(params.cells_per_column, params.columns, params.connect_threshold,
                params.activation_threshold, params.max_segments_per_cell),
      rng_(seed) {
  params_.validate();
}

StepReport TemporalMemory::step(const Sdr& winning_columns, bool learning_enabled) {
  return temporal_step(winning_columns, state_, segments_, params_, learning_enabled, rng_);
}

void TemporalMemory::reset_state() { state_ = TemporalState(params_.cells_per_column, params_.columns); }

void TemporalMemory::restore(SegmentStore segments) {
  if (segments.cells_per_column() != params_.cells_per_column || segments.columns() != params_.columns) {
    throw StructuralError("restore: checkpoint topology does not match this region");
  }
  segments_ = std::move(segments);
}

namespace {
constexpr const char* kSegmentsFormat = "htmkit.segments";
constexpr int kSegmentsVersion = 1;
}  // namespace

nlohmann::json segments_to_json(const SegmentStore& segments) {
  nlohmann::json cells = nlohmann::json::array();
  const auto m = segments.cells_per_column();
  for (std::uint32_t cell = 0; cell < segments.cell_count(); ++cell) {
    const auto segs = segments.segments(cell);
    if (segs.empty()) continue;
    nlohmann::json seg_docs = nlohmann::json::array();
    for (const auto& seg : segs) {
      nlohmann::json syns = nlohmann::json::array();
      for (const auto& syn : seg.synapses) syns.push_back({syn.presynaptic, syn.permanence});
      seg_docs.push_back({{"created", seg.created}, {"synapses", std::move(syns)}});
    }
    cells.push_back({{"cell", cell % m}, {"column", cell / m}, {"segments", std::move(seg_docs)}});
  }
  return nlohmann::json{{"format", kSegmentsFormat},
                        {"version", kSegmentsVersion},
                        {"cells_per_column", m},
                        {"columns", segments.columns()},
                        {"connect_threshold", segments.connect_threshold()},
                        {"activation_threshold", segments.activation_threshold()},
                        {"max_segments_per_cell", segments.max_segments_per_cell()},
                        {"next_created", segments.next_created()},
                        {"cells", std::move(cells)}};
}

SegmentStore segments_from_json(const nlohmann::json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kSegmentsFormat) {
      throw DataError("segments checkpoint: unknown format");
    }
    if (doc.at("version").get<int>() != kSegmentsVersion) {
      throw DataError("segments checkpoint: unsupported version " +
                      std::to_string(doc.at("version").get<int>()));
    }
    const auto m = doc.at("cells_per_column").get<std::size_t>();
    const auto n = doc.at("columns").get<std::size_t>();
    SegmentStore store(m, n, doc.at("connect_threshold").get<double>(),
                       doc.at("activation_threshold").get<std::size_t>(),
                       doc.at("max_segments_per_cell").get<std::size_t>());
    for (const auto& c : doc.at("cells")) {
      const auto i = c.at("cell").get<std::size_t>();
      const auto j = c.at("column").get<std::size_t>();
      if (i >= m || j >= n) throw DataError("segments checkpoint: cell out of range");
      auto& list = store.mutable_segments(static_cast<std::uint32_t>(j * m + i));
      for (const auto& s : c.at("segments")) {
        Segment seg;
        seg.created = s.at("created").get<std::uint64_t>();
        for (const auto& syn : s.at("synapses")) {
          const auto pre = syn.at(0).get<std::uint32_t>();
          const auto perm = syn.at(1).get<double>();
          if (pre >= m * n) throw DataError("segments checkpoint: presynaptic index out of range");
          if (!(perm >= 0.0 && perm <= 1.0)) {
            throw DataError("segments checkpoint: permanence outside [0,1]");
          }
          seg.synapses.push_back(Synapse{pre, perm});
        }
        list.push_back(std::move(seg));
      }
      if (list.size() > store.max_segments_per_cell()) {
        throw DataError("segments checkpoint: cell exceeds max_segments_per_cell");
      }
    }
    store.set_next_created(doc.at("next_created").get<std::uint64_t>());
    return store;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("segments checkpoint: ") + e.what());
  }
}

}  // namespace htmkit
