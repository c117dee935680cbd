#include <htmkit/encoders.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include <htmkit/errors.hpp>

namespace htmkit {

void ScalarEncoderSpec::validate() const {
  if (!(std::isfinite(min_value) && std::isfinite(max_value)) || !(min_value < max_value)) {
    throw ConfigError("encoder range", "min_value must be < max_value");
  }
  if (buckets < 2) throw ConfigError("buckets", "must be >= 2");
  if (active_width == 0) throw ConfigError("active_width", "must be >= 1");
}

std::size_t scalar_bucket(double v, const ScalarEncoderSpec& spec) {
  const double c = std::clamp(v, spec.min_value, spec.max_value);
  const double frac = (c - spec.min_value) / (spec.max_value - spec.min_value);
  const auto b = static_cast<std::size_t>(std::llround(frac * static_cast<double>(spec.buckets - 1)));
  return std::min(b, spec.buckets - 1);
}

Sdr encode_scalar(double v, const ScalarEncoderSpec& spec, std::size_t* clamped) {
  spec.validate();
  if (!std::isfinite(v)) throw DataError("encode_scalar: non-finite value");
  if (clamped != nullptr && (v < spec.min_value || v > spec.max_value)) ++*clamped;
  const auto start = static_cast<std::uint32_t>(scalar_bucket(v, spec));
  std::vector<std::uint32_t> active(spec.active_width);
  for (std::size_t i = 0; i < spec.active_width; ++i) {
    active[i] = start + static_cast<std::uint32_t>(i);
  }
  return Sdr(spec.total_width(), std::move(active));
}

bool is_supported_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 32 && u <= 126;
}

IntegerRow encode_text_row(std::string_view line, std::size_t pad_to) {
  if (line.size() > pad_to) {
    throw DataError("encode_text_row: line of length " + std::to_string(line.size()) +
                    " exceeds pad_to " + std::to_string(pad_to));
  }
  IntegerRow row(pad_to, static_cast<double>(kPadCode));
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (!is_supported_char(line[i])) {
      throw DataError("unsupported character (code " +
                      std::to_string(static_cast<unsigned char>(line[i])) + ") at position " +
                      std::to_string(i + 1));
    }
    row[i] = static_cast<double>(static_cast<unsigned char>(line[i]));
  }
  return row;
}

std::string decode_row(std::span<const double> codes) {
  std::string out;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const double c = codes[i];
    if (c == kPadCode) continue;
    if (c != std::floor(c) || c < 32 || c > 126) {
      throw DataError("decode_row: unmappable code " + std::to_string(c) + " at position " +
                      std::to_string(i + 1));
    }
    out.push_back(static_cast<char>(static_cast<int>(c)));
  }
  return out;
}

RowEncoder::RowEncoder(const MixedIntegerSequence& data, EncoderMode mode, std::size_t buckets,
                       std::size_t active_width)
    : mode_(mode) {
  if (data.empty()) throw DataError("RowEncoder: empty dataset");
  const auto arity = data.rows.front().size();
  if (arity == 0) throw DataError("RowEncoder: rows have no fields");
  for (std::size_t r = 0; r < data.size(); ++r) {
    if (data.rows[r].size() != arity) {
      throw DataError("RowEncoder: row " + std::to_string(r + 1) + " has " +
                      std::to_string(data.rows[r].size()) + " fields, expected " +
                      std::to_string(arity));
    }
  }

  fields_.resize(arity);
  std::size_t offset = 0;
  for (std::size_t f = 0; f < arity; ++f) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& row : data.rows) {
      if (!std::isfinite(row[f])) {
        throw DataError("RowEncoder: non-finite value in field " + std::to_string(f + 1));
      }
      lo = std::min(lo, row[f]);
      hi = std::max(hi, row[f]);
    }
    auto& field = fields_[f];
    field.offset = offset;
    if (mode == EncoderMode::scalar) {
      // A constant field still gets a valid range; every value lands in bucket 0.
      field.scalar = ScalarEncoderSpec{lo, hi > lo ? hi : lo + 1.0, buckets, active_width};
      field.scalar.validate();
      field.width = field.scalar.total_width();
    } else {
      for (const auto& row : data.rows) {
        if (row[f] != std::floor(row[f])) {
          throw DataError("identity encoder: non-integer value in field " + std::to_string(f + 1));
        }
      }
      field.min_int = static_cast<int>(lo);
      field.max_int = static_cast<int>(hi);
      field.width = static_cast<std::size_t>(field.max_int - field.min_int + 1);
    }
    offset += field.width;
  }
  width_ = offset;
}

RowEncoder RowEncoder::identity_fixed(std::size_t arity, int min_value, int max_value) {
  if (arity == 0) throw ConfigError("arity", "must be >= 1");
  if (max_value < min_value) throw ConfigError("identity range", "max < min");
  RowEncoder enc;
  enc.mode_ = EncoderMode::identity;
  enc.fields_.resize(arity);
  std::size_t offset = 0;
  for (auto& field : enc.fields_) {
    field.min_int = min_value;
    field.max_int = max_value;
    field.offset = offset;
    field.width = static_cast<std::size_t>(max_value - min_value + 1);
    offset += field.width;
  }
  enc.width_ = offset;
  return enc;
}

Sdr RowEncoder::encode(std::span<const double> row) const {
  if (row.size() != fields_.size()) {
    throw StructuralError("RowEncoder: row arity " + std::to_string(row.size()) +
                          " does not match encoder arity " + std::to_string(fields_.size()));
  }
  std::vector<std::uint32_t> active;
  for (std::size_t f = 0; f < fields_.size(); ++f) {
    const auto& field = fields_[f];
    if (mode_ == EncoderMode::scalar) {
      const auto s = encode_scalar(row[f], field.scalar, &clamped_);
      for (auto bit : s.active()) active.push_back(static_cast<std::uint32_t>(field.offset + bit));
    } else {
      const auto v = static_cast<long long>(std::llround(row[f]));
      const auto clamped_v = std::clamp<long long>(v, field.min_int, field.max_int);
      if (clamped_v != v) ++clamped_;
      active.push_back(static_cast<std::uint32_t>(field.offset +
                                                  static_cast<std::size_t>(clamped_v - field.min_int)));
    }
  }
  return Sdr(width_, std::move(active));
}

}  // namespace htmkit
