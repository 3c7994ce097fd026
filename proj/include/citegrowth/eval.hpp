#pragma once

#include <optional>
#include <string>
#include <vector>

namespace citegrowth::eval {

struct MapeResult {
    std::optional<double> value;   // percent; absent when every truth point is zero
    std::size_t excluded_zeros = 0;
};

/// 100 x mean over points with nonzero truth of |truth - pred| / |truth|.
/// Zero-truth points are excluded and counted instead of epsilon-padded.
MapeResult mape(const std::vector<double>& truth, const std::vector<double>& pred);

/// Share of steps where sign(pred_t - truth_{t-1}) matches
/// sign(truth_t - truth_{t-1}); zero only matches zero. Needs at least two
/// points, absent otherwise.
std::optional<double> direction_accuracy(const std::vector<double>& truth,
                                         const std::vector<double>& pred);

struct CommunityMetrics {
    int community_id = 0;
    std::optional<double> mape;           // percent
    std::optional<double> direction;      // percent
    std::size_t n_test_points = 0;
    std::size_t mape_excluded_zeros = 0;
};

struct MetricReport {
    std::vector<CommunityMetrics> per_community;
    std::optional<double> aggregate_mape;       // weighted by n_test_points
    std::optional<double> aggregate_direction;  // weighted by n_test_points
    std::size_t total_test_points = 0;
    std::size_t total_excluded_zeros = 0;
};

/// Point-weighted aggregation; communities whose metric is absent do not
/// enter that metric's mean. Throws when no community has any metric.
MetricReport aggregate_report(const std::vector<CommunityMetrics>& per_community);

std::string report_to_json(const MetricReport& report, const std::string& config_echo);
void save_report_csv(const MetricReport& report, const std::string& path);

}  // namespace citegrowth::eval
