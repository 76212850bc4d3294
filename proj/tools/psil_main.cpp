#include <chrono>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "psimine/config.hpp"
#include "psimine/gen.hpp"
#include "psimine/property.hpp"
#include "psimine/report.hpp"

namespace {

using namespace psimine;

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> trace_paths;
    std::string json_path;
    bool quiet = false;
};

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--config", args.config_path,
                    "run configuration (JSON)")
        ->required();
    sub->add_option("--trace", args.trace_paths, "trace CSV file (repeatable)")
        ->required();
    sub->add_option("--json", args.json_path, "also write a JSON report here");
    sub->add_flag("--quiet", args.quiet, "terse output");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<TraceTruth> load_traces(const RunConfig& cfg,
                                    const std::vector<std::string>& paths) {
    std::vector<TraceTruth> out;
    out.reserve(paths.size());
    for (const auto& p : paths) {
        Trace tr = load_trace_csv(p, cfg.time_column);
        out.push_back(booleanize(tr, cfg.predicates));
    }
    return out;
}

void write_json_report(const std::string& path, nlohmann::json report,
                       nlohmann::json timings) {
    nlohmann::json doc;
    doc["report"] = std::move(report);
    doc["timings_ms"] = std::move(timings);
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot write report");
    out << doc.dump(2) << "\n";
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"psil: miner, checker and ranker for timed sequence properties"};
    app.require_subcommand(1);

    CommonArgs mine_args;
    std::string target_override;
    int n_override = 0, depth_override = 0;
    double k_override = 0, support_override = 0, correlation_override = 0;
    auto* cmd_mine = app.add_subcommand(
        "mine", "learn sequence properties that explain a target event");
    add_common(cmd_mine, mine_args);
    cmd_mine->add_option("--target", target_override,
                         "target predicate (overrides config)");
    cmd_mine->add_option("-n", n_override, "past horizon in buckets");
    cmd_mine->add_option("-k", k_override, "bucket width in time units");
    cmd_mine->add_option("--max-depth", depth_override, "tree depth limit");
    cmd_mine->add_option("--min-support", support_override,
                         "prune nodes below this support percentage");
    cmd_mine->add_option("--min-correlation", correlation_override,
                         "prune nodes below this correlation percentage");

    CommonArgs check_args;
    std::string check_props;
    auto* cmd_check =
        app.add_subcommand("check", "re-evaluate properties against traces");
    add_common(cmd_check, check_args);
    cmd_check->add_option("props", check_props, "property file (.psil)")
        ->required();

    CommonArgs rank_args;
    std::string rank_props;
    auto* cmd_rank =
        app.add_subcommand("rank", "score properties by support and correlation");
    add_common(cmd_rank, rank_args);
    cmd_rank->add_option("props", rank_props, "property file (.psil)")
        ->required();

    std::string gen_scenario, gen_dir = ".";
    std::uint64_t gen_seed = 1;
    bool gen_quiet = false;
    auto* cmd_gen =
        app.add_subcommand("gen", "write a synthetic benchmark scenario");
    cmd_gen->add_option("--scenario", gen_scenario, "routes | pulse | traffic")
        ->required();
    cmd_gen->add_option("--seed", gen_seed, "RNG seed");
    cmd_gen->add_option("--out", gen_dir, "output directory");
    cmd_gen->add_flag("--quiet", gen_quiet, "terse output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (cmd_mine->parsed()) {
            RunConfig cfg = load_config(mine_args.config_path);
            if (cmd_mine->count("--target")) cfg.miner.target = target_override;
            if (cmd_mine->count("-n")) cfg.miner.n = n_override;
            if (cmd_mine->count("-k")) cfg.miner.k = k_override;
            if (cmd_mine->count("--max-depth")) cfg.miner.max_depth = depth_override;
            if (cmd_mine->count("--min-support")) {
                cfg.miner.min_support_pct = support_override;
            }
            if (cmd_mine->count("--min-correlation")) {
                cfg.miner.min_correlation_pct = correlation_override;
            }
            auto t0 = std::chrono::steady_clock::now();
            auto traces = load_traces(cfg, mine_args.trace_paths);
            double input_ms = ms_since(t0);
            auto t1 = std::chrono::steady_clock::now();
            MineResult result = mine(traces, cfg.miner);
            double tree_ms = ms_since(t1);
            std::cout << render_mine_text(result, traces.front().names,
                                          mine_args.quiet);
            if (!mine_args.quiet) {
                std::cout << "input processing " << input_ms
                          << " ms, tree generation " << tree_ms << " ms\n";
            }
            if (!mine_args.json_path.empty()) {
                write_json_report(
                    mine_args.json_path, mine_json(result, traces.front().names),
                    {{"input_processing", input_ms}, {"tree_generation", tree_ms}});
            }
            return 0;
        }
        if (cmd_check->parsed()) {
            RunConfig cfg = load_config(check_args.config_path);
            auto t0 = std::chrono::steady_clock::now();
            auto traces = load_traces(cfg, check_args.trace_paths);
            auto props = parse_psil_file(read_file(check_props), check_props);
            double input_ms = ms_since(t0);
            auto t1 = std::chrono::steady_clock::now();
            auto rows = check_properties(props, traces);
            double eval_ms = ms_since(t1);
            std::cout << render_check_text(rows, check_args.quiet);
            if (!check_args.json_path.empty()) {
                write_json_report(
                    check_args.json_path, check_json(rows),
                    {{"input_processing", input_ms}, {"evaluation", eval_ms}});
            }
            return 0;
        }
        if (cmd_rank->parsed()) {
            RunConfig cfg = load_config(rank_args.config_path);
            auto t0 = std::chrono::steady_clock::now();
            auto traces = load_traces(cfg, rank_args.trace_paths);
            auto props = parse_psil_file(read_file(rank_props), rank_props);
            double input_ms = ms_since(t0);
            auto t1 = std::chrono::steady_clock::now();
            RankReport report = rank_properties(props, traces);
            double eval_ms = ms_since(t1);
            std::cout << render_rank_text(report, rank_args.quiet);
            if (!rank_args.json_path.empty()) {
                write_json_report(
                    rank_args.json_path, rank_json(report),
                    {{"input_processing", input_ms}, {"evaluation", eval_ms}});
            }
            return 0;
        }
        if (cmd_gen->parsed()) {
            GenOutput out = generate_scenario(gen_scenario, gen_seed, gen_dir);
            if (!gen_quiet) {
                for (const auto& f : out.trace_files) std::cout << f << "\n";
                std::cout << out.config_file << "\n";
            }
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
