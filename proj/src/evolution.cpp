#include "orgcoupling/evolution.hpp"

#include "orgcoupling/history.hpp"
#include "orgcoupling/time_util.hpp"

#include <json.hpp>

#include <algorithm>
#include <future>
#include <set>

namespace orgcoupling {

namespace {

CouplingMatrix align_matrix(const CouplingMatrix& matrix,
                            const std::vector<std::string>& services) {
    CouplingMatrix aligned;
    aligned.services = services;
    const std::size_t count = services.size();
    aligned.values.assign(count, std::vector<double>(count, 0.0));
    aligned.shared_devs.assign(count, std::vector<int>(count, 0));
    aligned.bands.assign(count, std::vector<CouplingBand>(count, CouplingBand::VeryLoose));
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        const auto ti = aligned.index_of(matrix.services[i]);
        if (!ti) continue;
        for (std::size_t j = 0; j < matrix.size(); ++j) {
            const auto tj = aligned.index_of(matrix.services[j]);
            if (!tj) continue;
            aligned.values[*ti][*tj] = matrix.values[i][j];
            aligned.shared_devs[*ti][*tj] = matrix.shared_devs[i][j];
            aligned.bands[*ti][*tj] = matrix.bands[i][j];
        }
    }
    return aligned;
}

}  // namespace

EvolutionSeries windowed_matrices(const History& history, const WindowSpec& spec) {
    if (spec.width_seconds <= 0) throw Error("window width must be positive");
    if (spec.count < 1) throw Error("window count must be at least 1");

    EvolutionSeries series;
    // Windows are independent: each one filters and recomputes the whole
    // pipeline on its own slice, so they run concurrently and the series is
    // assembled by index.
    using WindowResult = std::pair<bool, CouplingMatrix>;  // (had commits, matrix)
    std::vector<std::future<WindowResult>> jobs;
    for (int i = 0; i < spec.count; ++i) {
        const UnixTime wstart = spec.start + static_cast<std::int64_t>(i) * spec.width_seconds;
        const UnixTime wend = wstart + spec.width_seconds;
        series.windows.push_back({wstart, wend});
        jobs.push_back(std::async(std::launch::async, [&history, wstart, wend] {
            const History window = filter_by_time(history, wstart, wend);
            if (window.commits.empty()) return WindowResult{false, CouplingMatrix{}};
            return WindowResult{true, coupling_matrix(window)};
        }));
    }

    std::set<std::string> union_services;
    std::vector<CouplingMatrix> raw;
    for (auto& job : jobs) {
        auto [had_commits, matrix] = job.get();
        if (had_commits) series.any_commits = true;
        for (const auto& service : matrix.services) union_services.insert(service);
        raw.push_back(std::move(matrix));
    }

    series.services.assign(union_services.begin(), union_services.end());
    for (const auto& matrix : raw)
        series.matrices.push_back(align_matrix(matrix, series.services));
    return series;
}

std::vector<DeltaMatrix> series_delta(const EvolutionSeries& series) {
    if (series.matrices.size() < 2)
        throw TooFewWindows("series delta needs at least 2 windows, got " +
                            std::to_string(series.matrices.size()));
    std::vector<DeltaMatrix> deltas;
    const std::size_t count = series.services.size();
    for (std::size_t w = 0; w + 1 < series.matrices.size(); ++w) {
        DeltaMatrix delta;
        delta.services = series.services;
        delta.delta.assign(count, std::vector<double>(count, 0.0));
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = 0; j < count; ++j)
                delta.delta[i][j] =
                    series.matrices[w + 1].values[i][j] - series.matrices[w].values[i][j];
        deltas.push_back(std::move(delta));
    }
    return deltas;
}

std::string series_to_json(const EvolutionSeries& series) {
    using nlohmann::json;
    json windows = json::array();
    for (std::size_t w = 0; w < series.matrices.size(); ++w) {
        const auto& matrix = series.matrices[w];
        json pairs = json::array();
        for (std::size_t i = 0; i < matrix.size(); ++i) {
            for (std::size_t j = i + 1; j < matrix.size(); ++j) {
                pairs.push_back(json{{"a", matrix.services[i]},
                                     {"b", matrix.services[j]},
                                     {"oc", matrix.values[i][j]},
                                     {"band", band_name(matrix.bands[i][j])},
                                     {"shared_developers", matrix.shared_devs[i][j]}});
            }
        }
        windows.push_back(json{{"index", w},
                               {"start", format_iso8601(series.windows[w].start)},
                               {"end", format_iso8601(series.windows[w].end)},
                               {"pairs", std::move(pairs)}});
    }
    return json{{"services", series.services}, {"windows", std::move(windows)}}.dump(2) + "\n";
}

}  // namespace orgcoupling
