// orgcoupling — mines git commit histories of microservice projects and
// reports how strongly service pairs are coupled by developers who
// contribute across them.

#include "orgcoupling/commit_log.hpp"
#include "orgcoupling/coupling.hpp"
#include "orgcoupling/evolution.hpp"
#include "orgcoupling/github_client.hpp"
#include "orgcoupling/heatmap.hpp"
#include "orgcoupling/history.hpp"
#include "orgcoupling/ownership.hpp"
#include "orgcoupling/synth.hpp"
#include "orgcoupling/time_util.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace fs = std::filesystem;
using namespace orgcoupling;

namespace {

struct InputOptions {
    std::vector<std::string> repos;  // PATH or SLUG=PATH
    std::vector<std::string> logs;
    std::string service_map_path;
    std::string alias_path;
    bool include_merges = false;
    std::string cutoff;
};

void add_source_flags(CLI::App* cmd, InputOptions& in, bool need_map) {
    cmd->add_option("--repos", in.repos,
                    "Local git clones to mine (PATH or SLUG=PATH), repeatable");
    cmd->add_option("--log", in.logs, "Commit-log files (JSON Lines), repeatable")
        ->check(CLI::ExistingFile);
    auto* map = cmd->add_option("--service-map", in.service_map_path,
                                "Service map file (rule <service> <repo-glob> <path-glob>)")
                    ->check(CLI::ExistingFile);
    if (need_map) map->required();
    cmd->add_option("--aliases", in.alias_path,
                    "Identity alias file (raw-email = canonical-id)")
        ->check(CLI::ExistingFile);
    cmd->add_flag("--include-merges", in.include_merges,
                  "Keep merge commits when extracting from git");
}

std::vector<HistorySource> gather_sources(const InputOptions& in) {
    std::vector<HistorySource> sources;
    for (const auto& spec : in.repos) {
        const auto eq = spec.find('=');
        std::string slug = eq == std::string::npos ? "" : spec.substr(0, eq);
        std::string path = eq == std::string::npos ? spec : spec.substr(eq + 1);
        sources.push_back(git_repo_source(path, slug, in.include_merges));
    }
    for (const auto& path : in.logs) sources.push_back(commit_log_source(path));
    if (sources.empty())
        throw CLI::ValidationError("inputs", "need at least one --repos or --log input");
    return sources;
}

AliasMap load_aliases(const InputOptions& in) {
    if (in.alias_path.empty()) return {};
    return load_alias_file(in.alias_path);
}

History load_from(const InputOptions& in) {
    const ServiceMap map = load_service_map(in.service_map_path);
    return load_history(gather_sources(in), map, load_aliases(in));
}

void print_summary(const HistorySummary& summary) {
    std::printf("commits:          %zu\n", summary.commits);
    std::printf("developers:       %zu\n", summary.developers);
    std::printf("file changes:     %zu\n", summary.file_changes);
    std::printf("churn lines:      %lld\n", static_cast<long long>(summary.churn_lines));
    if (summary.unmapped_changes)
        std::printf("unmapped changes: %zu\n", summary.unmapped_changes);
    if (summary.dropped_no_identity)
        std::printf("dropped (no identity): %zu\n", summary.dropped_no_identity);
}

void write_text_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    out.flush();
    if (!out) throw IoError("failed while writing " + path.string());
    std::printf("wrote %s\n", path.string().c_str());
}

std::string file_safe(const std::string& name) {
    std::string out = name;
    for (char& c : out)
        if (c == '/' || c == '\\' || c == ':' || c == ' ') c = '_';
    return out;
}

std::set<std::string> parse_formats(const std::vector<std::string>& formats,
                                    const std::set<std::string>& allowed) {
    std::set<std::string> out;
    for (const auto& f : formats) {
        if (!allowed.count(f))
            throw CLI::ValidationError("--format", "unsupported format: " + f);
        out.insert(f);
    }
    return out;
}

std::string matrix_csv(const CouplingMatrix& matrix) {
    std::ostringstream out;
    write_matrix_csv(out, matrix);
    return out.str();
}

int run_ingest(const InputOptions& in, const std::string& out_path) {
    // The portable log keeps raw author fields; services get resolved at
    // analysis time, so no service map is needed here.
    ServiceMap catch_all;
    catch_all.rules.push_back({"all", "*", "**"});
    const History history = load_history(gather_sources(in), catch_all, load_aliases(in));
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot write " + out_path);
    write_commit_log(out, history.commits);
    out.flush();
    if (!out) throw IoError("failed while writing " + out_path);
    print_summary(history.summary);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

int run_ownership(const InputOptions& in, const std::string& out_dir,
                  const std::set<std::string>& formats) {
    History history = load_from(in);
    if (!in.cutoff.empty())
        history = filter_by_time(history, std::nullopt, parse_iso8601(in.cutoff));
    const ContributionLedger ledger = build_ledger(history);
    std::vector<OwnershipProfile> profiles;
    for (const auto& [service, entries] : ledger.per_service) {
        if (ledger.service_total(service) <= 0) {
            std::fprintf(stderr, "warning: service %s has zero total churn, skipped\n",
                         service.c_str());
            continue;
        }
        profiles.push_back(ownership_profile(ledger, service));
    }
    print_summary(history.summary);
    if (formats.count("csv")) {
        for (const auto& profile : profiles) {
            std::ostringstream csv;
            write_ownership_csv(csv, profile);
            write_text_file(fs::path(out_dir) / "ownership" /
                                (file_safe(profile.service) + ".csv"),
                            csv.str());
        }
    }
    if (formats.count("json"))
        write_text_file(fs::path(out_dir) / "ownership.json", ownership_report_json(profiles));
    return 0;
}

int run_coupling(const InputOptions& in, const std::string& out_dir,
                 const std::set<std::string>& formats) {
    const History history = load_from(in);
    std::optional<UnixTime> cutoff;
    if (!in.cutoff.empty()) cutoff = parse_iso8601(in.cutoff);
    const CouplingMatrix matrix = coupling_matrix(history, cutoff);
    print_summary(cutoff ? filter_by_time(history, std::nullopt, cutoff).summary
                         : history.summary);
    if (formats.count("csv"))
        write_text_file(fs::path(out_dir) / "matrix.csv", matrix_csv(matrix));
    if (formats.count("json"))
        write_text_file(fs::path(out_dir) / "matrix.json", matrix_to_json(matrix));
    if (formats.count("svg"))
        write_text_file(fs::path(out_dir) / "heatmap.svg", render_heatmap(matrix));
    return 0;
}

int run_evolve(const InputOptions& in, const std::string& start,
               int windows, const std::string& width, const std::string& out_dir,
               const std::set<std::string>& formats) {
    const History history = load_from(in);
    WindowSpec spec;
    spec.start = parse_iso8601(start);
    spec.width_seconds = parse_duration_seconds(width);
    spec.count = windows;
    const EvolutionSeries series = windowed_matrices(history, spec);
    if (!series.any_commits)
        std::fprintf(stderr, "warning: no commit falls inside any window\n");
    print_summary(history.summary);
    char name[64];
    for (std::size_t w = 0; w < series.matrices.size(); ++w) {
        const auto& matrix = series.matrices[w];
        if (formats.count("csv")) {
            std::snprintf(name, sizeof(name), "window_%02zu.csv", w);
            write_text_file(fs::path(out_dir) / name, matrix_csv(matrix));
        }
        if (formats.count("json")) {
            std::snprintf(name, sizeof(name), "window_%02zu.json", w);
            write_text_file(fs::path(out_dir) / name, matrix_to_json(matrix));
        }
        if (formats.count("svg") && !matrix.services.empty()) {
            std::snprintf(name, sizeof(name), "heatmap_%02zu.svg", w);
            write_text_file(fs::path(out_dir) / name, render_heatmap(matrix));
        }
    }
    write_text_file(fs::path(out_dir) / "series.json", series_to_json(series));
    return 0;
}

int run_heatmap(const std::string& matrix_path, const std::string& series_path,
                const std::string& out_file, const std::string& out_dir) {
    const auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot open " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    if (!matrix_path.empty()) {
        const CouplingMatrix matrix = matrix_from_json(slurp(matrix_path));
        write_text_file(out_file.empty() ? "heatmap.svg" : out_file, render_heatmap(matrix));
        return 0;
    }
    // Series mode: one SVG per non-empty window, named by window index.
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(slurp(series_path));
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid series JSON: ") + e.what());
    }
    const std::string dir = out_dir.empty() ? "." : out_dir;
    char name[64];
    for (const auto& window : doc.at("windows")) {
        json matrix_doc{{"services", doc.at("services")}, {"pairs", window.at("pairs")}};
        const CouplingMatrix matrix = matrix_from_json(matrix_doc.dump());
        if (matrix.services.empty()) continue;
        std::snprintf(name, sizeof(name), "heatmap_%02d.svg", window.at("index").get<int>());
        write_text_file(fs::path(dir) / name, render_heatmap(matrix));
    }
    return 0;
}

struct FetchCliOptions {
    std::string owner;
    std::string repo;
    std::string since, until;
    std::string token_env = "GITHUB_TOKEN";
    bool token_env_explicit = false;
    std::string cache_dir = ".orgcoupling-cache";
    std::string api_base = "https://api.github.com";
    std::string rate_policy = "wait";
    int parallelism = 4;
    bool include_merges = false;
    std::string out_path;
};

int run_fetch(const FetchCliOptions& cli) {
    FetchJob job;
    job.owner = cli.owner;
    job.repo = cli.repo;
    if (!cli.since.empty()) job.since = parse_iso8601(cli.since);
    if (!cli.until.empty()) job.until = parse_iso8601(cli.until);
    job.cache_dir = cli.cache_dir;
    if (const char* token = std::getenv(cli.token_env.c_str())) job.token = token;
    else if (cli.token_env_explicit)
        std::fprintf(stderr, "warning: %s is not set, fetching anonymously\n",
                     cli.token_env.c_str());

    FetchOptions options;
    options.api_base = cli.api_base;
    options.parallelism = cli.parallelism;
    options.rate_policy = cli.rate_policy == "fail" ? RatePolicy::Fail : RatePolicy::Wait;
    options.include_merges = cli.include_merges;

    const auto [commits, report] = fetch_repo_commits(job, options);
    std::ofstream out(cli.out_path, std::ios::binary);
    if (!out) throw IoError("cannot write " + cli.out_path);
    write_commit_log(out, commits);
    out.flush();
    if (!out) throw IoError("failed while writing " + cli.out_path);

    std::printf("commits fetched:   %zu\n", report.commits_fetched);
    std::printf("commits cached:    %zu\n", report.commits_from_cache);
    std::printf("requests made:     %zu\n", report.requests_made);
    std::printf("rate-limit waits:  %zu\n", report.rate_limit_waits);
    std::printf("merges excluded:   %zu\n", report.merges_excluded);
    std::printf("wrote %s\n", cli.out_path.c_str());
    return 0;
}

struct GenerateCliOptions {
    SynthSpec spec;
    std::string start;
    std::string out_path = "synthetic.jsonl";
    std::string map_out;
};

int run_generate(GenerateCliOptions& cli) {
    if (!cli.start.empty()) cli.spec.start_time = parse_iso8601(cli.start);
    const History history = generate_history(cli.spec);
    std::ofstream out(cli.out_path, std::ios::binary);
    if (!out) throw IoError("cannot write " + cli.out_path);
    write_commit_log(out, history.commits);
    out.flush();
    if (!out) throw IoError("failed while writing " + cli.out_path);
    print_summary(history.summary);
    std::printf("wrote %s\n", cli.out_path.c_str());
    if (!cli.map_out.empty()) {
        std::ostringstream map;
        map << "# generated service map\nunmapped_policy ignore\n";
        for (const auto& service : history.services)
            map << "rule " << service << " * " << service << "/**\n";
        write_text_file(cli.map_out, map.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"organizational coupling analyzer for microservice repositories"};
    app.require_subcommand(1);

    InputOptions ingest_in, ownership_in, coupling_in, evolve_in;
    std::string ingest_out = "commits.jsonl";
    std::string ownership_out = ".", coupling_out = ".", evolve_out = ".";
    std::vector<std::string> ownership_fmt{"csv", "json"};
    std::vector<std::string> coupling_fmt{"csv", "json"};
    std::vector<std::string> evolve_fmt{"csv", "json"};
    std::string evolve_start, evolve_width = "365d";
    int evolve_windows = 1;
    std::string heatmap_matrix, heatmap_series, heatmap_out, heatmap_out_dir;
    FetchCliOptions fetch_cli;
    GenerateCliOptions generate_cli;

    auto* ingest = app.add_subcommand(
        "ingest", "Extract commits from local clones into a portable commit log");
    add_source_flags(ingest, ingest_in, false);
    ingest->add_option("--out", ingest_out, "Output commit-log path")
        ->capture_default_str();

    auto* fetch = app.add_subcommand(
        "fetch", "Fetch a repository's commits from the GitHub REST API");
    fetch->add_option("--owner", fetch_cli.owner, "Repository owner")->required();
    fetch->add_option("--repo", fetch_cli.repo, "Repository name")->required();
    fetch->add_option("--since", fetch_cli.since, "Window start (ISO-8601)");
    fetch->add_option("--until", fetch_cli.until, "Window end (ISO-8601)");
    fetch->add_option("--token-env", fetch_cli.token_env, "Env var holding the API token")
        ->capture_default_str();
    fetch->add_option("--cache-dir", fetch_cli.cache_dir, "On-disk commit cache")
        ->capture_default_str();
    fetch->add_option("--api-base", fetch_cli.api_base, "API base URL")
        ->capture_default_str();
    fetch->add_option("--parallelism", fetch_cli.parallelism,
                      "Concurrent detail fetches")->capture_default_str();
    fetch->add_option("--rate-policy", fetch_cli.rate_policy, "wait or fail")
        ->check(CLI::IsMember({"wait", "fail"}))->capture_default_str();
    fetch->add_flag("--include-merges", fetch_cli.include_merges, "Keep merge commits");
    fetch->add_option("--out", fetch_cli.out_path, "Output commit-log path")->required();

    auto* ownership = app.add_subcommand(
        "ownership", "Per-service ownership profiles and contributor roles");
    add_source_flags(ownership, ownership_in, true);
    ownership->add_option("--cutoff", ownership_in.cutoff,
                          "Only commits strictly before this instant");
    ownership->add_option("--out", ownership_out, "Output directory")->capture_default_str();
    ownership->add_option("--format", ownership_fmt, "csv, json")->delimiter(',')->capture_default_str();

    auto* coupling = app.add_subcommand(
        "coupling", "Pairwise organizational coupling matrix");
    add_source_flags(coupling, coupling_in, true);
    coupling->add_option("--cutoff", coupling_in.cutoff,
                         "Only commits strictly before this instant");
    coupling->add_option("--out", coupling_out, "Output directory")->capture_default_str();
    coupling->add_option("--format", coupling_fmt, "csv, json, svg")->delimiter(',')->capture_default_str();

    auto* evolve = app.add_subcommand(
        "evolve", "Coupling matrices over consecutive time windows");
    add_source_flags(evolve, evolve_in, true);
    evolve->add_option("--start", evolve_start, "First window start (ISO-8601)")->required();
    evolve->add_option("--windows", evolve_windows, "Number of windows")
        ->check(CLI::PositiveNumber)->capture_default_str();
    evolve->add_option("--width", evolve_width, "Window width (e.g. 365d)")
        ->capture_default_str();
    evolve->add_option("--out", evolve_out, "Output directory")->capture_default_str();
    evolve->add_option("--format", evolve_fmt, "csv, json, svg")->delimiter(',')->capture_default_str();

    auto* heatmap = app.add_subcommand("heatmap", "Render SVG heatmaps from matrix JSON");
    heatmap->add_option("--matrix", heatmap_matrix, "matrix.json input")
        ->check(CLI::ExistingFile);
    heatmap->add_option("--series", heatmap_series, "series.json input")
        ->check(CLI::ExistingFile);
    heatmap->add_option("--out", heatmap_out, "SVG output path (matrix mode)");
    heatmap->add_option("--out-dir", heatmap_out_dir, "Output directory (series mode)");

    auto* generate = app.add_subcommand(
        "generate", "Write a seeded synthetic commit log for demos and benchmarks");
    generate->add_option("--seed", generate_cli.spec.seed)->capture_default_str();
    generate->add_option("--services", generate_cli.spec.n_services)->capture_default_str();
    generate->add_option("--developers", generate_cli.spec.n_developers)->capture_default_str();
    generate->add_option("--commits", generate_cli.spec.n_commits)->capture_default_str();
    generate->add_option("--cross-rate", generate_cli.spec.cross_contribution_rate)
        ->capture_default_str();
    generate->add_option("--both-rate", generate_cli.spec.both_touch_rate)
        ->capture_default_str();
    generate->add_option("--churn-min", generate_cli.spec.churn_min)->capture_default_str();
    generate->add_option("--churn-max", generate_cli.spec.churn_max)->capture_default_str();
    generate->add_option("--start", generate_cli.start, "First timestamp (ISO-8601)");
    generate->add_option("--step", generate_cli.spec.step_seconds,
                         "Base seconds between commits")->capture_default_str();
    generate->add_option("--out", generate_cli.out_path, "Output commit-log path")
        ->capture_default_str();
    generate->add_option("--map-out", generate_cli.map_out,
                         "Also write a matching service map");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (ingest->parsed()) return run_ingest(ingest_in, ingest_out);
        if (fetch->parsed()) {
            fetch_cli.token_env_explicit = fetch->count("--token-env") > 0;
            return run_fetch(fetch_cli);
        }
        if (ownership->parsed())
            return run_ownership(ownership_in, ownership_out,
                                 parse_formats(ownership_fmt, {"csv", "json"}));
        if (coupling->parsed())
            return run_coupling(coupling_in, coupling_out,
                                parse_formats(coupling_fmt, {"csv", "json", "svg"}));
        if (evolve->parsed())
            return run_evolve(evolve_in, evolve_start, evolve_windows, evolve_width,
                              evolve_out, parse_formats(evolve_fmt, {"csv", "json", "svg"}));
        if (heatmap->parsed()) {
            if (heatmap_matrix.empty() == heatmap_series.empty()) {
                std::fprintf(stderr, "heatmap needs exactly one of --matrix or --series\n");
                return 1;
            }
            return run_heatmap(heatmap_matrix, heatmap_series, heatmap_out, heatmap_out_dir);
        }
        if (generate->parsed()) return run_generate(generate_cli);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
