#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace htmkit {

/// Published RMSE values per dataset, shipped so comparison tables never
/// need the third-party tools. Mirrors data/reference_values.json.
struct ReferenceRmseRow {
  std::string_view dataset;
  double os_elm_rbf;
  double os_elm_sig;
  double os_elm_sin;
  double htm_mat;
};

inline constexpr std::array<ReferenceRmseRow, 3> kReferenceRmse{{
    {"heart_data", 1.5275, 0.6734, 1.5816, 0.2582},
    {"australian_data", 0.8236, 0.7164, 0.8249, 0.0381},
    {"pressure_data", 0.5075, 0.5075, 0.5075, 0.0000},
}};

/// Published toy-dataset outputs.
struct ReferencePredictionRow {
  std::string_view dataset;
  std::string_view recurrentjs;
  std::string_view htm_mat;
};

inline constexpr std::array<ReferencePredictionRow, 4> kReferencePredictions{{
    {"times_trainv1", "2 3 6", "2 3 6"},
    {"word3a", "Fishing, Fish-feed, Fish", "Fast, F sh"},
    {"word3b", "Football, Fans", "Foot"},
    {"word3c", "Video- Player, Video", "Video"},
}};

inline std::optional<ReferenceRmseRow> reference_rmse(std::string_view dataset) {
  for (const auto& r : kReferenceRmse) {
    if (r.dataset == dataset) return r;
  }
  return std::nullopt;
}

}  // namespace htmkit
