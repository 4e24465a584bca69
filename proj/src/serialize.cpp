#include "squint/serialize.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace squint {

namespace {

const std::set<std::string>& config_keys()
{
    static const std::set<std::string> keys = {"f_c", "B",   "K",      "N_t",     "N_r", "N_RF", "N_s",
                                               "M",   "N",   "t_max",  "rho",     "rho_db", "tau_max",
                                               "seed"};
    return keys;
}

int as_count(const std::string& name, double v)
{
    if (!(std::isfinite(v) && v == std::floor(v) && std::abs(v) < 2e9))
        throw std::invalid_argument("parameter " + name + " must be an integer, got " + std::to_string(v));
    return static_cast<int>(v);
}

}  // namespace

void to_json(json& j, const SystemConfig& c)
{
    j = json{{"f_c", c.f_c}, {"B", c.B},       {"K", c.K},         {"N_t", c.N_t},
             {"N_r", c.N_r}, {"N_RF", c.N_RF}, {"N_s", c.N_s},     {"M", c.M},
             {"N", c.N},     {"t_max", c.t_max}, {"rho", c.rho},   {"tau_max", c.tau_max},
             {"seed", c.seed}};
}

void from_json(const json& j, SystemConfig& c)
{
    if (!j.is_object())
        throw std::invalid_argument("config must be a JSON object");
    c = SystemConfig{};
    for (const auto& [key, value] : j.items()) {
        if (!config_keys().count(key))
            throw std::invalid_argument("unknown config key '" + key + "'");
        if (!value.is_number())
            throw std::invalid_argument("config key '" + key + "' must be a number");
    }
    if (j.contains("rho") && j.contains("rho_db"))
        throw std::invalid_argument("config gives both rho and rho_db");
    auto num = [&](const char* key, double& dst) {
        if (j.contains(key))
            dst = j.at(key).get<double>();
    };
    auto cnt = [&](const char* key, int& dst) {
        if (j.contains(key))
            dst = as_count(key, j.at(key).get<double>());
    };
    num("f_c", c.f_c);
    num("B", c.B);
    cnt("K", c.K);
    cnt("N_t", c.N_t);
    cnt("N_r", c.N_r);
    cnt("N_RF", c.N_RF);
    cnt("N_s", c.N_s);
    cnt("M", c.M);
    cnt("N", c.N);
    num("t_max", c.t_max);
    num("rho", c.rho);
    if (j.contains("rho_db"))
        c.rho = snr_from_db(j.at("rho_db").get<double>());
    num("tau_max", c.tau_max);
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned())
            throw std::invalid_argument("seed must be a non-negative integer");
        c.seed = j.at("seed").get<std::uint64_t>();
    }
    // A config that names N_t and M but not N gets N derived.
    if (j.contains("N_t") && !j.contains("N") && c.M > 0 && c.N_t % c.M == 0)
        c.N = c.N_t / c.M;
    c.validate();
}

void set_parameter(SystemConfig& c, const std::string& name, double value)
{
    if (name == "f_c") c.f_c = value;
    else if (name == "B") c.B = value;
    else if (name == "K") c.K = as_count(name, value);
    else if (name == "N_r") c.N_r = as_count(name, value);
    else if (name == "N_RF") c.N_RF = as_count(name, value);
    else if (name == "N_s") c.N_s = as_count(name, value);
    else if (name == "t_max") c.t_max = value;
    else if (name == "rho") c.rho = value;
    else if (name == "rho_db") c.rho = snr_from_db(value);
    else if (name == "tau_max") c.tau_max = value;
    else if (name == "N_t" || name == "M") {
        (name == "N_t" ? c.N_t : c.M) = as_count(name, value);
        if (c.M < 1 || c.N_t % c.M != 0)
            throw std::invalid_argument("sweeping " + name + ": N_t = " + std::to_string(c.N_t) +
                                        " is not a multiple of M = " + std::to_string(c.M));
        c.N = c.N_t / c.M;
    } else if (name == "N") {
        c.N = as_count(name, value);
        c.N_t = c.M * c.N;
    } else
        throw std::invalid_argument("unknown sweep parameter '" + name + "'");
}

void to_json(json& j, const AnalogDesign& d)
{
    j = json{{"N_RF", d.N_RF}, {"M", d.M}, {"N", d.N}, {"x", d.x}, {"t", d.t}};
}

void from_json(const json& j, AnalogDesign& d)
{
    d = AnalogDesign(j.at("N_RF").get<int>(), j.at("M").get<int>(), j.at("N").get<int>());
    auto x = j.at("x").get<std::vector<double>>();
    auto t = j.at("t").get<std::vector<double>>();
    if (x.size() != d.x.size() || t.size() != d.t.size())
        throw std::invalid_argument("AnalogDesign JSON: table sizes do not match N_RF, M, N");
    d.x = std::move(x);
    d.t = std::move(t);
}

void to_json(json& j, const DesignReport& r)
{
    j = json{{"design", r.design}, {"clamped", r.clamped}, {"criterion_tmax_min", r.criterion_tmax_min}};
    if (r.criterion_Nt_max == kUnbounded)
        j["criterion_Nt_max"] = nullptr;
    else
        j["criterion_Nt_max"] = r.criterion_Nt_max;
}

void to_json(json& j, const DivisorAudit& a)
{
    j = json{{"M", a.M}, {"worst_gain", a.worst_gain}, {"fraction_below", a.fraction_below}};
}

void to_json(json& j, const SizingResult& r)
{
    j = json{{"g0", r.g0},           {"psi_max", r.psi_max}, {"omega", r.omega},
             {"raw", r.raw},         {"M_star", r.M_star},   {"exact_M", r.exact_M},
             {"power_W", r.power_W}, {"trace", r.trace}};
    if (std::isfinite(r.linear_estimate))
        j["linear_estimate"] = r.linear_estimate;
    else
        j["linear_estimate"] = nullptr;
}

json matrix_to_json(const CMatrix& m)
{
    std::vector<double> re, im;
    re.reserve(static_cast<std::size_t>(m.size()));
    im.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            re.push_back(m(r, c).real());
            im.push_back(m(r, c).imag());
        }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

void to_json(json& j, const PrecoderSet& p)
{
    auto list = [](const std::vector<CMatrix>& v) {
        json a = json::array();
        for (const auto& m : v)
            a.push_back(matrix_to_json(m));
        return a;
    };
    j = json{{"F1", matrix_to_json(p.F1)}, {"F2", list(p.F2)}, {"F", list(p.F)},
             {"F_ideal", list(p.F_ideal)}, {"W", list(p.W)}};
}

}  // namespace squint
