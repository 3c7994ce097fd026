#include "citegrowth/eval.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace citegrowth::eval {

MapeResult mape(const std::vector<double>& truth, const std::vector<double>& pred) {
    if (truth.size() != pred.size()) {
        throw std::invalid_argument("mape: length mismatch");
    }
    if (truth.empty()) {
        throw std::invalid_argument("mape: empty input");
    }
    MapeResult result;
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] == 0.0) {
            ++result.excluded_zeros;
            continue;
        }
        sum += std::abs(truth[i] - pred[i]) / std::abs(truth[i]);
        ++used;
    }
    if (used > 0) {
        result.value = 100.0 * sum / static_cast<double>(used);
    }
    return result;
}

namespace {

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

}  // namespace

std::optional<double> direction_accuracy(const std::vector<double>& truth,
                                         const std::vector<double>& pred) {
    if (truth.size() != pred.size()) {
        throw std::invalid_argument("direction_accuracy: length mismatch");
    }
    if (truth.size() < 2) {
        return std::nullopt;
    }
    std::size_t correct = 0;
    std::size_t steps = truth.size() - 1;
    for (std::size_t t = 1; t < truth.size(); ++t) {
        if (sign_of(pred[t] - truth[t - 1]) == sign_of(truth[t] - truth[t - 1])) {
            ++correct;
        }
    }
    return 100.0 * static_cast<double>(correct) / static_cast<double>(steps);
}

MetricReport aggregate_report(const std::vector<CommunityMetrics>& per_community) {
    MetricReport report;
    report.per_community = per_community;
    double mape_sum = 0.0, mape_weight = 0.0;
    double dir_sum = 0.0, dir_weight = 0.0;
    bool any = false;
    for (const auto& m : per_community) {
        report.total_test_points += m.n_test_points;
        report.total_excluded_zeros += m.mape_excluded_zeros;
        double w = static_cast<double>(m.n_test_points);
        if (m.mape) {
            mape_sum += *m.mape * w;
            mape_weight += w;
            any = true;
        }
        if (m.direction) {
            dir_sum += *m.direction * w;
            dir_weight += w;
            any = true;
        }
    }
    if (!any) {
        throw std::invalid_argument("aggregate_report: no community has a defined metric");
    }
    if (mape_weight > 0.0) report.aggregate_mape = mape_sum / mape_weight;
    if (dir_weight > 0.0) report.aggregate_direction = dir_sum / dir_weight;
    return report;
}

std::string report_to_json(const MetricReport& report, const std::string& config_echo) {
    nlohmann::json j;
    if (!config_echo.empty()) j["config"] = config_echo;
    j["communities"] = nlohmann::json::array();
    for (const auto& m : report.per_community) {
        nlohmann::json c;
        c["community_id"] = m.community_id;
        c["n_test_points"] = m.n_test_points;
        c["mape_excluded_zeros"] = m.mape_excluded_zeros;
        if (m.mape) c["mape_pct"] = *m.mape;
        if (m.direction) c["direction_accuracy_pct"] = *m.direction;
        j["communities"].push_back(c);
    }
    j["aggregate"]["total_test_points"] = report.total_test_points;
    j["aggregate"]["total_mape_excluded_zeros"] = report.total_excluded_zeros;
    if (report.aggregate_mape) j["aggregate"]["mape_pct"] = *report.aggregate_mape;
    if (report.aggregate_direction) {
        j["aggregate"]["direction_accuracy_pct"] = *report.aggregate_direction;
    }
    return j.dump(2);
}

void save_report_csv(const MetricReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("report: cannot write " + path);
    out << "community_id,mape_pct,direction_accuracy_pct,n_test_points,mape_excluded_zeros\n";
    auto field = [](const std::optional<double>& v) {
        return v ? std::to_string(*v) : std::string();
    };
    for (const auto& m : report.per_community) {
        out << m.community_id << ',' << field(m.mape) << ',' << field(m.direction) << ','
            << m.n_test_points << ',' << m.mape_excluded_zeros << '\n';
    }
}

}  // namespace citegrowth::eval
