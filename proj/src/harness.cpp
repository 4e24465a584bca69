#include "squint/harness.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include <omp.h>

#include "squint/jointdesign.hpp"
#include "squint/kernels.hpp"
#include "squint/metrics.hpp"
#include "squint/serialize.hpp"
#include "squint/ttdsizing.hpp"

#ifndef SQUINT_VERSION
#define SQUINT_VERSION "0.1.0"
#endif

namespace squint {

namespace {

using Assignment = std::vector<std::pair<std::string, double>>;

struct Point {
    Assignment assignment;
    std::string label;  // "t_max=3.4e-10_N=16", empty without a sweep
    SystemConfig cfg;
};

std::vector<Point> expand(const Scenario& s, const SystemConfig& base)
{
    std::vector<Assignment> combos = {{}};
    for (const auto& [name, values] : s.sweep) {
        std::vector<Assignment> next;
        for (const auto& c : combos)
            for (double v : values) {
                Assignment a = c;
                a.emplace_back(name, v);
                next.push_back(std::move(a));
            }
        combos = std::move(next);
    }
    std::vector<Point> out;
    for (auto& a : combos) {
        Point p;
        p.cfg = base;
        for (const auto& [name, v] : a) {
            set_parameter(p.cfg, name, v);
            p.label += (p.label.empty() ? "" : "_") + name + "=" + format_number(v);
        }
        p.cfg.validate();
        p.assignment = std::move(a);
        out.push_back(std::move(p));
    }
    return out;
}

std::string point_name(const Point& p)
{
    return p.label.empty() ? "base" : p.label;
}

class Writer {
public:
    Writer(std::filesystem::path dir, Format f) : dir_(std::move(dir)), format_(f) {}

    void put(const std::string& stem, const Table& t)
    {
        const std::string name = stem + extension(format_);
        if (!seen_.insert(name).second)
            throw std::logic_error("duplicate output file " + name);
        write_table(dir_ / name, t, format_);
        files_.push_back(name);
    }

    static std::string stem(Experiment e, const std::string& what, const Point& p)
    {
        std::string s = std::string(to_string(e)) + "_" + what;
        if (!p.label.empty())
            s += "_" + p.label;
        return s;
    }

    std::vector<std::string>& files() { return files_; }

private:
    std::filesystem::path dir_;
    Format format_;
    std::set<std::string> seen_;
    std::vector<std::string> files_;
};

Table profile_table(const SystemConfig& cfg, const std::vector<double>& values)
{
    const EmpiricalCdf cdf(values);
    Table t({"k", "f_k", "value", "G"});
    for (int k = 1; k <= cfg.K; ++k) {
        const double v = values[static_cast<std::size_t>(k - 1)];
        t.add({static_cast<long long>(k), subcarrier_frequency(cfg, k), v, cdf(v)});
    }
    return t;
}

double mean_of(const std::vector<double>& v)
{
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

void run_gain_cdf(const Scenario& s, const std::vector<Point>& points, Writer& w)
{
    Table summary({"point", "design", "psi", "min_gain", "mean_gain", "fraction_ge_g0", "clamped_ttds"});
    for (const auto& p : points) {
        const SystemConfig& cfg = p.cfg;
        const std::vector<double> psi(static_cast<std::size_t>(cfg.N_RF), s.psi_eval);
        const DesignReport rep = design_theorem1(cfg, psi);
        const AnalogDesign bench = design_benchmark(cfg, psi);

        std::vector<double> ideal(static_cast<std::size_t>(cfg.K));
        for (int k = 1; k <= cfg.K; ++k)
            ideal[static_cast<std::size_t>(k - 1)] =
                array_gain(ideal_precoder(cfg, psi, k).col(0), cfg, k, s.psi_eval);

        long long clamped = 0;
        for (const auto& row : rep.clamped)
            clamped += std::count(row.begin(), row.end(), true);

        const std::vector<std::pair<Design, std::vector<double>>> profiles = {
            {Design::Proposed, gain_profile_omp(rep.design, cfg, 0, s.psi_eval)},
            {Design::Benchmark, gain_profile_omp(bench, cfg, 0, s.psi_eval)},
            {Design::Ideal, std::move(ideal)}};
        for (const auto& [d, g] : profiles) {
            w.put(Writer::stem(s.experiment, to_string(d), p), profile_table(cfg, g));
            const EmpiricalCdf cdf(g);
            summary.add({point_name(p), std::string(to_string(d)), s.psi_eval,
                         *std::min_element(g.begin(), g.end()), mean_of(g), cdf.fraction_at_least(s.g0),
                         d == Design::Proposed ? clamped : 0LL});
        }
    }
    w.put("gain_cdf_summary", summary);
}

void run_rate_cdf(const Scenario& s, const std::vector<Point>& points, std::uint64_t seed, Writer& w)
{
    Table summary({"point", "design", "trials", "mean_rate", "mean_bound", "min_rate",
                   "bound_violations", "trials_at_least_benchmark"});
    for (const auto& p : points) {
        const SystemConfig& cfg = p.cfg;
        const std::vector<TrialRates> trials = rate_trials_omp(cfg, s.trials, seed);
        for (Design d : kAllDesigns) {
            const auto di = static_cast<std::size_t>(d);
            std::vector<double> pooled;
            pooled.reserve(trials.size() * static_cast<std::size_t>(cfg.K));
            long long violations = 0;
            long long dominates = 0;
            double bound_sum = 0.0;
            for (const auto& t : trials) {
                pooled.insert(pooled.end(), t.rate[di].begin(), t.rate[di].end());
                for (std::size_t k = 0; k < t.rate[di].size(); ++k) {
                    bound_sum += t.bound[di][k];
                    if (t.bound[di][k] > t.rate[di][k] + 1e-9)
                        ++violations;
                }
                if (t.mean(d) >= t.mean(Design::Benchmark))
                    ++dominates;
            }
            const EmpiricalCdf cdf(pooled);
            Table t({"trial", "k", "f_k", "value", "G"});
            for (std::size_t i = 0; i < trials.size(); ++i)
                for (int k = 1; k <= cfg.K; ++k) {
                    const double v = trials[i].rate[di][static_cast<std::size_t>(k - 1)];
                    t.add({static_cast<long long>(i), static_cast<long long>(k), subcarrier_frequency(cfg, k), v,
                           cdf(v)});
                }
            w.put(Writer::stem(s.experiment, to_string(d), p), t);
            summary.add({point_name(p), std::string(to_string(d)), static_cast<long long>(trials.size()),
                         mean_of(pooled), bound_sum / static_cast<double>(pooled.size()),
                         *std::min_element(pooled.begin(), pooled.end()), violations, dominates});
        }
    }
    w.put("rate_cdf_summary", summary);
}

void run_sizing(const Scenario& s, const std::vector<Point>& points, Writer& w)
{
    Table summary({"point", "N_t", "g0", "psi_max", "omega", "raw", "M_star", "exact_M", "linear_estimate",
                   "power_W"});
    for (const auto& p : points) {
        const SystemConfig& cfg = p.cfg;
        const SizingResult r = size_ttds(cfg, s.g0, s.psi_eval);
        Table trace({"M", "worst_gain", "fraction_below", "power_W"});
        for (const auto& a : r.trace)
            trace.add({static_cast<long long>(a.M), a.worst_gain, a.fraction_below, total_power(cfg, a.M)});
        w.put(Writer::stem(s.experiment, "trace", p), trace);
        summary.add({point_name(p), static_cast<long long>(cfg.N_t), r.g0, r.psi_max, r.omega, r.raw,
                     static_cast<long long>(r.M_star), static_cast<long long>(r.exact_M), r.linear_estimate,
                     r.power_W});
    }
    w.put("sizing_summary", summary);
}

void run_prop1(const Scenario& s, const std::vector<Point>& points, Writer& w)
{
    Table summary({"point", "N_t", "edge_gain", "center_gain", "edge_closed_form"});
    for (const auto& p : points) {
        const SystemConfig& cfg = p.cfg;
        // Frequency-flat beamformer steered at the carrier.
        const CVector f = steering_vector(cfg.N_t, 1.0, s.psi_eval);
        std::vector<double> g(static_cast<std::size_t>(cfg.K));
        for (int k = 1; k <= cfg.K; ++k)
            g[static_cast<std::size_t>(k - 1)] = array_gain(f, cfg, k, s.psi_eval);
        w.put(Writer::stem(s.experiment, "flat", p), profile_table(cfg, g));
        const int center = (cfg.K + 1) / 2;
        summary.add({point_name(p), static_cast<long long>(cfg.N_t), g.back(),
                     g[static_cast<std::size_t>(center - 1)],
                     gain_closed_form(cfg.N_t, squint_offset(cfg, cfg.K, s.psi_eval))});
    }
    w.put("prop1_sweep_summary", summary);
}

void run_criteria(const Scenario& s, const std::vector<Point>& points, Writer& w)
{
    Table t({"point", "N_t", "M", "t_max", "psi_max", "Nt_max", "tmax_min", "N_t_admissible",
             "t_max_admissible"});
    for (const auto& p : points) {
        const SystemConfig& cfg = p.cfg;
        const long long nt = criterion_nt(cfg, s.psi_eval);
        const double tm = criterion_tmax(cfg, s.psi_eval);
        t.add({point_name(p), static_cast<long long>(cfg.N_t), static_cast<long long>(cfg.M), cfg.t_max,
               s.psi_eval, nt == kUnbounded ? Table::Cell(std::string("unbounded")) : Table::Cell(nt), tm,
               static_cast<long long>(cfg.N_t <= nt), static_cast<long long>(cfg.t_max >= tm)});
    }
    w.put("criteria_report", t);
}

std::string utc_now()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

Experiment parse_experiment(const std::string& s)
{
    if (s == "gain_cdf") return Experiment::GainCdf;
    if (s == "rate_cdf") return Experiment::RateCdf;
    if (s == "sizing") return Experiment::Sizing;
    if (s == "prop1_sweep") return Experiment::Prop1Sweep;
    if (s == "criteria_report") return Experiment::CriteriaReport;
    throw std::invalid_argument("unknown experiment '" + s + "'");
}

const char* to_string(Experiment e)
{
    switch (e) {
    case Experiment::GainCdf: return "gain_cdf";
    case Experiment::RateCdf: return "rate_cdf";
    case Experiment::Sizing: return "sizing";
    case Experiment::Prop1Sweep: return "prop1_sweep";
    case Experiment::CriteriaReport: return "criteria_report";
    }
    return "unknown";
}

Scenario parse_scenario(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw std::invalid_argument("scenario must be a JSON object");
    static const std::set<std::string> keys = {"experiment", "config", "sweep", "trials",
                                               "psi_eval",   "g0",     "output"};
    for (const auto& [k, v] : j.items())
        if (!keys.count(k))
            throw std::invalid_argument("unknown scenario key '" + k + "'");

    Scenario s;
    if (!j.contains("experiment") || !j["experiment"].is_string())
        throw std::invalid_argument("scenario needs a string 'experiment'");
    s.experiment = parse_experiment(j["experiment"].get<std::string>());
    if (j.contains("config"))
        s.config = j["config"].get<SystemConfig>();
    if (j.contains("sweep")) {
        const json& sw = j["sweep"];
        auto add = [&](const std::string& name, const json& values) {
            if (!values.is_array() || values.empty())
                throw std::invalid_argument("sweep '" + name + "' needs a non-empty array of values");
            s.sweep.emplace_back(name, values.get<std::vector<double>>());
        };
        if (sw.is_array()) {
            for (const auto& e : sw)
                add(e.at("parameter").get<std::string>(), e.at("values"));
        } else if (sw.is_object()) {
            for (const auto& [name, values] : sw.items())
                add(name, values);
        } else
            throw std::invalid_argument("sweep must be an object or an array");
    }
    if (j.contains("trials")) {
        if (!j["trials"].is_number_integer())
            throw std::invalid_argument("trials must be an integer");
        s.trials = j["trials"].get<int>();
    }
    if (j.contains("psi_eval"))
        s.psi_eval = j["psi_eval"].get<double>();
    if (j.contains("g0"))
        s.g0 = j["g0"].get<double>();
    if (j.contains("output"))
        s.output = j["output"].get<std::string>();

    if (s.experiment == Experiment::RateCdf && s.trials < 1)
        throw std::invalid_argument("rate_cdf needs trials >= 1");
    if (!(std::abs(s.psi_eval) <= 1.0))
        throw std::invalid_argument("psi_eval must satisfy |psi| <= 1");
    if (s.experiment == Experiment::Prop1Sweep && s.sweep.empty())
        s.sweep.emplace_back("N_t", std::vector<double>{128, 256, 512, 1024});
    // Surface bad sweep names and values before any output is written.
    expand(s, s.config);
    return s;
}

Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read scenario file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

RunResult run(const Scenario& scenario, const RunOptions& opts)
{
    const auto t0 = std::chrono::steady_clock::now();
    const std::string started = utc_now();
    if (opts.threads > 0)
        omp_set_num_threads(opts.threads);

    SystemConfig base = scenario.config;
    if (opts.seed)
        base.seed = *opts.seed;
    base.validate();
    const std::vector<Point> points = expand(scenario, base);

    RunResult result;
    result.out_dir = opts.out_dir.value_or(std::filesystem::path(scenario.output));
    std::error_code ec;
    std::filesystem::create_directories(result.out_dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + result.out_dir.string() + ": " +
                                 ec.message());

    Writer w(result.out_dir, opts.format);
    switch (scenario.experiment) {
    case Experiment::GainCdf: run_gain_cdf(scenario, points, w); break;
    case Experiment::RateCdf: run_rate_cdf(scenario, points, base.seed, w); break;
    case Experiment::Sizing: run_sizing(scenario, points, w); break;
    case Experiment::Prop1Sweep: run_prop1(scenario, points, w); break;
    case Experiment::CriteriaReport: run_criteria(scenario, points, w); break;
    }

    json sweep = json::array();
    for (const auto& [name, values] : scenario.sweep)
        sweep.push_back({{"parameter", name}, {"values", values}});
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json manifest = {{"experiment", to_string(scenario.experiment)},
                     {"config", base},
                     {"sweep", sweep},
                     {"seed", base.seed},
                     {"trials", scenario.trials},
                     {"psi_eval", scenario.psi_eval},
                     {"g0", scenario.g0},
                     {"format", opts.format == Format::Csv ? "csv" : "json"},
                     {"version", version()},
                     {"threads", omp_get_max_threads()},
                     {"started_utc", started},
                     {"wall_clock_s", elapsed},
                     {"files", w.files()}};
    const auto mpath = result.out_dir / "manifest.json";
    std::ofstream os(mpath);
    if (!os || !(os << manifest.dump(2) << '\n'))
        throw std::runtime_error("cannot write " + mpath.string());
    result.files = w.files();
    return result;
}

const char* version()
{
    return SQUINT_VERSION;
}

}  // namespace squint
