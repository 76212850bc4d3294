#include "psimine/gen.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace psimine {

namespace {

// Uniform doubles built from raw engine words, so every platform produces
// the same byte stream for the same seed.
struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}
    double uniform() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

struct Column {
    std::string name;
    // truth as sorted [lo, hi) windows; sampled value is 1 inside, 0 outside
    std::vector<std::pair<double, double>> windows;
    bool active(double t) const {
        for (const auto& w : windows) {
            if (t >= w.first && t < w.second) return true;
        }
        return false;
    }
};

void write_csv(const std::string& path, double t_end, double step,
               const std::vector<Column>& cols) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("gen: cannot write " + path);
    out << "time";
    for (const auto& c : cols) out << "," << c.name;
    out << "\n";
    long rows = static_cast<long>(std::floor(t_end / step)) + 1;
    for (long i = 0; i < rows; ++i) {
        double t = static_cast<double>(i) * step;
        out << num(t);
        for (const auto& c : cols) out << "," << (c.active(t) ? 1 : 0);
        out << "\n";
    }
}

std::string write_config(const std::string& out_dir, const std::string& name,
                         const std::vector<std::string>& preds,
                         const std::string& target, int n, double k) {
    nlohmann::json cfg;
    cfg["time_column"] = "time";
    auto arr = nlohmann::json::array();
    for (const auto& p : preds) {
        arr.push_back({{"name", p}, {"expr", p + " > 0.5"}});
    }
    cfg["predicates"] = arr;
    cfg["target"] = target;
    cfg["n"] = n;
    cfg["k"] = k;
    cfg["max_depth"] = 20;
    cfg["min_support"] = 0.0;
    cfg["min_correlation"] = 0.0;
    std::string path = out_dir + "/" + name + "_config.json";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("gen: cannot write " + path);
    out << cfg.dump(2) << "\n";
    return path;
}

// Travel times are redrawn when the sampled arrival row lands just past a
// bucket-width multiple. Arrivals in that sliver make the recovered delay
// window clip the departure pulse's tail, so the mined property would stop
// short of 100% correlation on its own trace.
double draw_travel(Rng& rng, double lo, double hi, double dep_width,
                   double step, double bucket) {
    long bucket_rows = std::lround(bucket / step);
    long dep_rows = std::lround(dep_width / step);
    for (;;) {
        double travel = rng.uniform(lo, hi);
        double arrival = dep_width + travel;
        long row = static_cast<long>(std::ceil(arrival / step));
        while (static_cast<double>(row) * step < arrival) ++row;
        while (row > 0 && static_cast<double>(row - 1) * step >= arrival) --row;
        long rem = row % bucket_rows;
        if (rem == 0 || rem > dep_rows) return travel;
    }
}

GenOutput gen_routes(std::uint64_t seed, const std::string& out_dir) {
    const double bands[3][2] = {{26.90, 28.0}, {14.21, 16.0}, {18.82, 20.0}};
    Rng rng(seed);
    GenOutput out;
    for (int r = 0; r < 3; ++r) {
        for (int t = 0; t < 3; ++t) {
            double travel =
                draw_travel(rng, bands[r][0], bands[r][1], 0.25, 0.05, 2.0);
            double arrival = 0.25 + travel;
            double t_end = arrival + 0.25;
            std::vector<Column> cols{
                {"D", {{0.0, 0.25}}},
                {"A", {{arrival, t_end + 1.0}}},
            };
            std::string path = out_dir + "/route" + std::to_string(r + 1) +
                               "_trace" + std::to_string(t + 1) + ".csv";
            write_csv(path, t_end, 0.05, cols);
            out.trace_files.push_back(path);
        }
    }
    out.config_file = write_config(out_dir, "routes", {"D", "A"}, "A", 15, 2.0);
    return out;
}

GenOutput gen_pulse(std::uint64_t seed, const std::string& out_dir) {
    Rng rng(seed);
    std::vector<Column> cols{{"P", {}}, {"E", {}}};
    double t = 5.0 + rng.uniform() * 5.0;
    for (int i = 0; i < 10; ++i) {
        cols[0].windows.push_back({t, t + 1.0});
        double d = rng.uniform(3.0, 5.0);
        cols[1].windows.push_back({t + d, t + d + 1.0});
        if (i % 3 == 2) {  // unexplained blip between pulses
            double o = t + 8.5 + rng.uniform();
            cols[1].windows.push_back({o, o + 0.5});
        }
        t += rng.uniform(12.0, 18.0);
    }
    GenOutput out;
    std::string path = out_dir + "/pulse_trace.csv";
    write_csv(path, 200.0, 0.5, cols);
    out.trace_files.push_back(path);
    out.config_file = write_config(out_dir, "pulse", {"P", "E"}, "E", 5, 2.0);
    return out;
}

// One intersection episode anchored at e; window bounds are offsets from e.
// Kinds model recurring days at the junction:
//   crash    - incident, lane 1 blocked, spare lane 2 shut right when the
//              reroute sensor fires; a fresh jam follows (and the tail of an
//              earlier jam is still draining when the incident happens)
//   calm     - incident while lane 2 stays open the whole time, no jam
//   through  - incident, lane 1 blocked for a long stretch and the sensor
//              fires, but lane 2 reopens quickly, so no jam
//   works    - roadworks block lane 1 in two stints and trip the sensor
//              early; lane 2 carries the load, no jam
//   storm_a  - day-long jam already in progress; a late incident and sensor
//              burst happen inside it
//   storm_b  - longer jam variant with an evening lane closure on top
void traffic_episode(std::vector<Column>& cols, int kind, double e) {
    auto put = [&](int c, double lo, double hi) {
        cols[c].windows.push_back({e + lo, e + hi});
    };
    switch (kind) {
        case 0:  // crash
            put(0, 0, 2);
            put(1, 5, 23);
            put(1, 35, 40);
            put(2, 35, 70);
            put(3, 23, 31);
            put(4, -20, 5);
            put(4, 35, 60);
            break;
        case 1:  // calm
            put(0, 0, 6);
            put(1, 6, 20);
            put(2, 0, 80);
            break;
        case 2:  // through
            put(0, 0, 6);
            put(1, 6, 80);
            put(2, 0, 6);
            put(2, 42, 80);
            put(3, 23, 31);
            break;
        case 3:  // works
            put(0, 0, 6);
            put(1, 6, 16);
            put(1, 24, 51);
            put(2, 46, 80);
            put(3, 8, 16);
            break;
        case 4:  // storm_a
            put(0, 19.5, 23);
            put(1, 23, 50);
            put(2, 1, 19);
            put(2, 59, 94);
            put(3, 50, 62);
            put(4, 0, 94);
            break;
        case 5:  // storm_b
            put(0, 1, 33);
            put(1, 33, 50);
            put(1, 73, 78);
            put(2, 1, 19);
            put(2, 73, 110);
            put(3, 33, 43);
            put(3, 50, 70);
            put(4, 0, 110);
            break;
    }
}

template <typename T>
void shuffle_vals(T* v, int n, Rng& rng) {
    for (int i = n - 1; i > 0; --i) {
        int j = static_cast<int>(rng.engine() %
                                 static_cast<std::uint64_t>(i + 1));
        std::swap(v[i], v[j]);
    }
}

GenOutput gen_traffic(std::uint64_t seed, const std::string& out_dir) {
    Rng rng(seed);
    GenOutput out;
    for (int t = 0; t < 3; ++t) {
        std::vector<Column> cols{
            {"I1", {}}, {"LANE1", {}}, {"LANE2", {}}, {"R3S3", {}}, {"DELAY", {}}};
        // Every trace carries the same episode mix, and the slack between
        // episodes is a fixed multiset. The seed only shuffles the day order
        // and which slack goes where, so the traces differ byte-wise while
        // pooled statistics (and the mined tree) stay identical. The lead-in
        // and the minimum slack are generous enough that neighbouring
        // episodes never interact, even through bucket-widened sets.
        int kinds[9] = {0, 0, 0, 1, 1, 2, 3, 4, 5};
        double gaps[9] = {205, 206, 207, 208, 209, 210, 211, 212, 213};
        shuffle_vals(kinds, 9, rng);
        shuffle_vals(gaps, 9, rng);
        double e = 95.0;
        for (int i = 0; i < 9; ++i) {
            traffic_episode(cols, kinds[i], e);
            e += gaps[i];
        }
        std::string path =
            out_dir + "/traffic_trace" + std::to_string(t + 1) + ".csv";
        write_csv(path, e, 0.5, cols);
        out.trace_files.push_back(path);
    }
    out.config_file = write_config(
        out_dir, "traffic", {"I1", "LANE1", "LANE2", "R3S3", "DELAY"}, "DELAY",
        15, 5.0);
    return out;
}

}  // namespace

std::vector<std::string> gen_scenario_names() {
    return {"routes", "pulse", "traffic"};
}

GenOutput generate_scenario(const std::string& scenario, std::uint64_t seed,
                            const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    if (scenario == "routes") return gen_routes(seed, out_dir);
    if (scenario == "pulse") return gen_pulse(seed, out_dir);
    if (scenario == "traffic") return gen_traffic(seed, out_dir);
    throw std::invalid_argument("gen: unknown scenario '" + scenario + "'");
}

}  // namespace psimine
