#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace htmkit {

/// Sparse distributed representation: a fixed-width binary vector stored as
/// the sorted set of its active bit indices.
///
/// Values are immutable once constructed; every operation returns a new Sdr.
class Sdr {
public:
  Sdr() = default;

  /// Empty SDR of the given width. Throws StructuralError if width == 0.
  explicit Sdr(std::size_t width);

  /// Validates and canonicalizes `active` (sorted, deduplicated). Throws
  /// StructuralError if width == 0 or an index is out of range.
  Sdr(std::size_t width, std::vector<std::uint32_t> active);

  /// Builds from a dense 0/1 view.
  static Sdr from_dense(std::span<const std::uint8_t> bits);

  std::size_t width() const { return width_; }
  std::span<const std::uint32_t> active() const { return active_; }
  std::size_t size() const { return active_.size(); }
  bool empty() const { return active_.empty(); }
  bool contains(std::uint32_t bit) const;

  /// |active| / width.
  double sparsity() const;

  /// Dense 0/1 view of length width().
  std::vector<std::uint8_t> dense() const;

  friend bool operator==(const Sdr&, const Sdr&) = default;

private:
  std::size_t width_ = 0;
  std::vector<std::uint32_t> active_;
};

/// Count of shared active bits.
struct OverlapScore {
  std::size_t value = 0;
  friend auto operator<=>(const OverlapScore&, const OverlapScore&) = default;
};

/// |a.active ∩ b.active|. Throws StructuralError on width mismatch.
OverlapScore overlap(const Sdr& a, const Sdr& b);

/// Sorted union of the active sets. Throws StructuralError on width mismatch.
Sdr union_of(const Sdr& a, const Sdr& b);

/// Selects up to k indices with the highest strictly positive scores, ties
/// broken by lowest index. The result is sorted ascending.
///
/// Throws StructuralError if `scores` is empty or k == 0.
std::vector<std::uint32_t> top_k(std::span<const std::pair<std::uint32_t, double>> scores,
                                 std::size_t k);

void to_json(nlohmann::json& j, const Sdr& s);
void from_json(const nlohmann::json& j, Sdr& s);

}  // namespace htmkit
