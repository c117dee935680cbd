#include <htmkit/sdr.hpp>

#include <algorithm>
#include <string>

#include <nlohmann/json.hpp>

#include <htmkit/errors.hpp>

namespace htmkit {

Sdr::Sdr(std::size_t width) : width_(width) {
  if (width == 0) throw StructuralError("Sdr: width must be > 0");
}

Sdr::Sdr(std::size_t width, std::vector<std::uint32_t> active)
    : width_(width), active_(std::move(active)) {
  if (width == 0) throw StructuralError("Sdr: width must be > 0");
  std::sort(active_.begin(), active_.end());
  active_.erase(std::unique(active_.begin(), active_.end()), active_.end());
  if (!active_.empty() && active_.back() >= width_) {
    throw StructuralError("Sdr: active index " + std::to_string(active_.back()) +
                          " out of range for width " + std::to_string(width_));
  }
}

Sdr Sdr::from_dense(std::span<const std::uint8_t> bits) {
  std::vector<std::uint32_t> active;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0) active.push_back(static_cast<std::uint32_t>(i));
  }
  return Sdr(bits.size(), std::move(active));
}

bool Sdr::contains(std::uint32_t bit) const {
  return std::binary_search(active_.begin(), active_.end(), bit);
}

double Sdr::sparsity() const {
  if (width_ == 0) return 0.0;
  return static_cast<double>(active_.size()) / static_cast<double>(width_);
}

std::vector<std::uint8_t> Sdr::dense() const {
  std::vector<std::uint8_t> bits(width_, 0);
  for (auto i : active_) bits[i] = 1;
  return bits;
}

namespace {

void require_same_width(const Sdr& a, const Sdr& b, const char* op) {
  if (a.width() != b.width()) {
    throw StructuralError(std::string(op) + ": width mismatch (" + std::to_string(a.width()) +
                          " vs " + std::to_string(b.width()) + ")");
  }
}

}  // namespace

OverlapScore overlap(const Sdr& a, const Sdr& b) {
  require_same_width(a, b, "overlap");
  auto x = a.active();
  auto y = b.active();
  std::size_t i = 0, j = 0, n = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i] < y[j]) {
      ++i;
    } else if (y[j] < x[i]) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return OverlapScore{n};
}

Sdr union_of(const Sdr& a, const Sdr& b) {
  require_same_width(a, b, "union");
  std::vector<std::uint32_t> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.active().begin(), a.active().end(), b.active().begin(), b.active().end(),
                 std::back_inserter(out));
  return Sdr(a.width(), std::move(out));
}

std::vector<std::uint32_t> top_k(std::span<const std::pair<std::uint32_t, double>> scores,
                                 std::size_t k) {
  if (scores.empty()) throw StructuralError("top_k: empty score sequence");
  if (k == 0) throw StructuralError("top_k: k must be >= 1");

  std::vector<std::pair<std::uint32_t, double>> positive;
  for (const auto& s : scores) {
    if (s.second > 0.0) positive.push_back(s);
  }
  const auto take = std::min(k, positive.size());
  std::partial_sort(positive.begin(), positive.begin() + static_cast<std::ptrdiff_t>(take),
                    positive.end(), [](const auto& l, const auto& r) {
                      if (l.second != r.second) return l.second > r.second;
                      return l.first < r.first;
                    });
  std::vector<std::uint32_t> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(positive[i].first);
  std::sort(out.begin(), out.end());
  return out;
}

void to_json(nlohmann::json& j, const Sdr& s) {
  j = nlohmann::json{{"width", s.width()},
                     {"active", std::vector<std::uint32_t>(s.active().begin(), s.active().end())}};
}

void from_json(const nlohmann::json& j, Sdr& s) {
  s = Sdr(j.at("width").get<std::size_t>(), j.at("active").get<std::vector<std::uint32_t>>());
}

}  // namespace htmkit
