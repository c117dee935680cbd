#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <htmkit/sdr.hpp>

namespace htmkit {

/// One row of the mixed-integer view. Character data holds character codes
/// (0 = pad); numeric data holds the field values as read.
using IntegerRow = std::vector<double>;

/// Ordered exemplars, one IntegerRow per exemplar.
struct MixedIntegerSequence {
  std::vector<IntegerRow> rows;

  std::size_t size() const { return rows.size(); }
  bool empty() const { return rows.empty(); }
};

/// Parameters of the sliding-window scalar encoder.
///
/// A value maps to `active_width` consecutive bits starting at its bucket, so
/// adjacent buckets share active_width - 1 bits and the total width is
/// buckets + active_width - 1.
struct ScalarEncoderSpec {
  double min_value = 0.0;
  double max_value = 1.0;
  std::size_t buckets = 64;
  std::size_t active_width = 3;

  std::size_t total_width() const { return buckets + active_width - 1; }

  /// Throws ConfigError if min >= max, buckets < 2 or active_width == 0.
  void validate() const;
};

/// Bucket index of `v` after clamping into [min_value, max_value].
std::size_t scalar_bucket(double v, const ScalarEncoderSpec& spec);

/// Encodes one value. Out-of-range inputs are clamped; `clamped`, when given,
/// is incremented for each clamp. Throws DataError on a non-finite value.
Sdr encode_scalar(double v, const ScalarEncoderSpec& spec, std::size_t* clamped = nullptr);

/// Pad code. Never a data symbol.
inline constexpr int kPadCode = 0;

/// True for the supported character set: printable 7-bit codes 32..126.
bool is_supported_char(char c);

/// Character codes of `line`, right-padded with kPadCode to `pad_to`.
/// Throws DataError naming the first unsupported character position, or if
/// the line is longer than pad_to.
IntegerRow encode_text_row(std::string_view line, std::size_t pad_to);

/// Inverse of encode_text_row. Pad codes are skipped; any other code outside
/// the supported set throws DataError.
std::string decode_row(std::span<const double> codes);

enum class EncoderMode { scalar, identity };

/// Encodes whole rows into one input SDR by concatenating a per-field block.
///
/// `scalar` mode scalar-encodes each field with its own min/max taken from
/// the data; `identity` mode one-hot encodes each integer field over its
/// observed integer range. Built once from the dataset, then applied per row.
class RowEncoder {
public:
  /// Fits field ranges on `data`. Throws DataError on empty or ragged data, or
  /// on non-integer values in identity mode.
  RowEncoder(const MixedIntegerSequence& data, EncoderMode mode, std::size_t buckets,
             std::size_t active_width);

  /// Identity encoder over a fixed value range for every field (used for
  /// character data, range 0..127).
  static RowEncoder identity_fixed(std::size_t arity, int min_value, int max_value);

  Sdr encode(std::span<const double> row) const;

  std::size_t width() const { return width_; }
  std::size_t arity() const { return fields_.size(); }
  EncoderMode mode() const { return mode_; }

  /// Number of scalar values clamped so far.
  std::size_t clamped() const { return clamped_; }

private:
  struct Field {
    ScalarEncoderSpec scalar;  // scalar mode
    int min_int = 0;           // identity mode
    int max_int = 0;
    std::size_t offset = 0;
    std::size_t width = 0;
  };

  RowEncoder() = default;

  EncoderMode mode_ = EncoderMode::scalar;
  std::vector<Field> fields_;
  std::size_t width_ = 0;
  mutable std::size_t clamped_ = 0;
};

}  // namespace htmkit
