#include "taucover/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace taucover {

ordered_json json_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    return v;
}

bool ReportEnvelope::all_pass() const {
    for (const auto& v : verdicts)
        if (!v.pass) return false;
    return true;
}

ordered_json ReportEnvelope::to_json() const {
    ordered_json j;
    j["artifact_version"] = artifact_version;
    j["config"] = config_echo;
    j["payload"] = payload;
    ordered_json vs = ordered_json::array();
    for (const auto& v : verdicts)
        vs.push_back({{"check", v.check}, {"pass", v.pass}, {"detail", v.detail}});
    j["verdicts"] = vs;
    j["all_pass"] = all_pass();
    j["wall_seconds"] = wall_seconds;
    return j;
}

ordered_json estimate_to_json(const MeasureEstimate& est) {
    ordered_json j;
    j["N"] = est.n_exponent;
    j["mode"] = est.mode == CoverMode::V ? "V" : "W";
    ordered_json levels = ordered_json::array();
    for (std::size_t i = 0; i < est.levels.size(); ++i) {
        const auto& l = est.levels[i];
        levels.push_back({{"delta", l.delta},
                          {"value", json_number(l.value)},
                          {"envelope", json_number(est.envelope[i])},
                          {"candidates", l.candidates},
                          {"chosen", l.chosen},
                          {"feasible", l.feasible}});
    }
    j["levels"] = levels;
    j["value"] = json_number(est.value);
    j["slope"] = json_number(est.slope);
    return j;
}

ordered_json family_to_json(const DiamondFamily& family) {
    ordered_json j;
    j["mode"] = family.mode == CoverMode::V ? "V" : "W";
    j["delta"] = family.delta;
    j["N"] = family.n_exponent;
    j["base_halfheight"] = family.base_halfheight;
    j["scales"] = family.scales;
    ordered_json ds = ordered_json::array();
    for (const auto& d : family.diamonds)
        ds.push_back({{"a", d.a.x}, {"b", d.b.x}, {"tau", d.tau}, {"cost", d.cost}});
    j["diamonds"] = ds;
    return j;
}

DiamondFamily family_from_json(const Space& space, const ordered_json& j) {
    DiamondFamily fam;
    fam.mode = j.at("mode").get<std::string>() == "V" ? CoverMode::V : CoverMode::W;
    fam.delta = j.at("delta").get<double>();
    fam.n_exponent = j.at("N").get<double>();
    fam.base_halfheight = j.at("base_halfheight").get<double>();
    fam.scales = j.at("scales").get<int>();
    for (const auto& dj : j.at("diamonds")) {
        SpacePoint a{space.id(), dj.at("a").get<std::vector<double>>()};
        SpacePoint b{space.id(), dj.at("b").get<std::vector<double>>()};
        CausalDiamond d = make_diamond(space, std::move(a), std::move(b), fam.n_exponent);
        if (std::abs(d.tau - dj.at("tau").get<double>()) > 1e-9 ||
            std::abs(d.cost - dj.at("cost").get<double>()) > 1e-9)
            throw std::runtime_error("family_from_json: cached tau/cost mismatch");
        fam.diamonds.push_back(std::move(d));
    }
    return fam;
}

std::string csv_num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << v;
    return os.str();
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open CSV for writing: " + path);
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

void write_measure_csv(const std::string& path,
                       const std::vector<const MeasureEstimate*>& series) {
    std::vector<std::vector<std::string>> rows;
    for (const auto* est : series) {
        for (const auto& l : est->levels) {
            rows.push_back({est->mode == CoverMode::V ? "V" : "W", csv_num(est->n_exponent),
                            csv_num(l.delta), std::to_string(l.candidates),
                            std::to_string(l.chosen), csv_num(l.value),
                            l.feasible ? "1" : "0"});
        }
    }
    write_csv(path, {"mode", "N", "delta", "candidates", "chosen", "total_cost", "feasible"},
              rows);
}

void write_loglog_csv(const std::string& path,
                      const std::vector<const MeasureEstimate*>& series) {
    std::vector<std::vector<std::string>> rows;
    for (const auto* est : series) {
        for (const auto& l : est->levels) {
            if (!(l.value > 0.0) || !std::isfinite(l.value)) continue;
            rows.push_back({csv_num(est->n_exponent), csv_num(std::log(l.delta)),
                            csv_num(std::log(l.value))});
        }
    }
    write_csv(path, {"N", "log_delta", "log_value"}, rows);
}

} // namespace taucover
