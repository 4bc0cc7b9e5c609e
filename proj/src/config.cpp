#include "taucover/config.hpp"

#include <fstream>
#include <set>

namespace taucover {

namespace {

using json = nlohmann::ordered_json;

void expect_keys(const json& j, const std::set<std::string>& allowed,
                 const std::set<std::string>& required, const std::string& ctx) {
    if (!j.is_object()) throw ConfigError(ctx + ": expected an object");
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key)) throw ConfigError(ctx + ": unknown key '" + key + "'");
    for (const auto& key : required)
        if (!j.contains(key)) throw ConfigError(ctx + ": missing key '" + key + "'");
}

void validate_region(const json& r, const std::string& ctx) {
    expect_keys(r, {"kind", "lo", "hi", "points"}, {"kind"}, ctx);
    const std::string kind = r.at("kind").get<std::string>();
    if (kind == "box") {
        expect_keys(r, {"kind", "lo", "hi"}, {"kind", "lo", "hi"}, ctx);
        if (!r.at("lo").is_array() || !r.at("hi").is_array())
            throw ConfigError(ctx + ": box lo/hi must be arrays");
        if (r.at("lo").size() != r.at("hi").size())
            throw ConfigError(ctx + ": box lo/hi length mismatch");
    } else if (kind == "cloud") {
        expect_keys(r, {"kind", "points"}, {"kind", "points"}, ctx);
        if (!r.at("points").is_array() || r.at("points").empty())
            throw ConfigError(ctx + ": cloud needs a nonempty points array");
    } else {
        throw ConfigError(ctx + ": unknown region kind '" + kind + "'");
    }
}

void validate_space(const json& s) {
    expect_keys(s, {"kind", "dim", "interval", "warp", "base"}, {"kind"}, "space");
    const std::string kind = s.at("kind").get<std::string>();
    if (kind == "minkowski") {
        expect_keys(s, {"kind", "dim"}, {"kind", "dim"}, "space");
        if (s.at("dim").get<int>() < 2) throw ConfigError("space: minkowski dim must be >= 2");
    } else if (kind == "warped_product") {
        expect_keys(s, {"kind", "interval", "warp", "base"}, {"kind", "interval", "warp", "base"},
                    "space");
        const auto& iv = s.at("interval");
        if (!iv.is_array() || iv.size() != 2 || !(iv[0].get<double>() < iv[1].get<double>()))
            throw ConfigError("space: interval must be [lo, hi] with lo < hi");
        const auto& w = s.at("warp");
        expect_keys(w, {"form", "value", "a", "b", "u", "f"}, {"form"}, "space.warp");
        const std::string form = w.at("form").get<std::string>();
        if (form == "constant") {
            expect_keys(w, {"form", "value"}, {"form", "value"}, "space.warp");
        } else if (form == "affine") {
            expect_keys(w, {"form", "a", "b"}, {"form", "a", "b"}, "space.warp");
        } else if (form == "exp") {
            expect_keys(w, {"form"}, {"form"}, "space.warp");
        } else if (form == "tabulated") {
            expect_keys(w, {"form", "u", "f"}, {"form", "u", "f"}, "space.warp");
        } else {
            throw ConfigError("space.warp: unknown form '" + form + "'");
        }
        const auto& b = s.at("base");
        expect_keys(b, {"kind", "dim", "nodes", "edges"}, {"kind"}, "space.base");
        const std::string bk = b.at("kind").get<std::string>();
        if (bk == "euclidean") {
            expect_keys(b, {"kind", "dim"}, {"kind", "dim"}, "space.base");
        } else if (bk == "hyperbolic_plane") {
            expect_keys(b, {"kind"}, {"kind"}, "space.base");
        } else if (bk == "metric_graph") {
            expect_keys(b, {"kind", "nodes", "edges"}, {"kind", "nodes", "edges"}, "space.base");
        } else {
            throw ConfigError("space.base: unknown kind '" + bk + "'");
        }
    } else {
        throw ConfigError("space: unknown kind '" + kind + "'");
    }
}

void validate_schedule_json(const json& p, const std::string& key, const std::string& ctx) {
    if (!p.contains(key)) return;
    const auto& s = p.at(key);
    if (!s.is_array() || s.empty()) throw ConfigError(ctx + ": " + key + " must be a nonempty array");
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (!(s[i + 1].get<double>() < s[i].get<double>()))
            throw ConfigError(ctx + ": delta schedule must be strictly decreasing");
    for (const auto& v : s)
        if (!(v.get<double>() > 0.0))
            throw ConfigError(ctx + ": delta schedule entries must be positive");
}

void validate_map(const json& m) {
    expect_keys(m, {"name", "lambda", "p"}, {"name"}, "params.map");
    const std::string name = m.at("name").get<std::string>();
    if (name == "scaling") {
        expect_keys(m, {"name", "lambda"}, {"name", "lambda"}, "params.map");
    } else if (name == "extension_future" || name == "product_extension") {
        expect_keys(m, {"name", "lambda", "p"}, {"name", "lambda", "p"}, "params.map");
    } else {
        throw ConfigError("params.map: unknown map '" + name + "'");
    }
}

void validate_params(const std::string& task, const json& p) {
    const std::string ctx = "params(" + task + ")";
    if (task == "axioms") {
        expect_keys(p, {"region", "samples", "tol"}, {"region", "samples"}, ctx);
        validate_region(p.at("region"), ctx + ".region");
    } else if (task == "measure" || task == "restricted-measure") {
        expect_keys(p, {"region", "N", "mode", "delta_schedule", "sample_budget", "scales"},
                    {"region", "N", "mode", "delta_schedule"}, ctx);
        validate_region(p.at("region"), ctx + ".region");
        validate_schedule_json(p, "delta_schedule", ctx);
    } else if (task == "dimension") {
        expect_keys(p, {"region", "N_list", "mode", "delta_schedule", "sample_budget", "scales"},
                    {"region", "N_list", "delta_schedule"}, ctx);
        validate_region(p.at("region"), ctx + ".region");
        validate_schedule_json(p, "delta_schedule", ctx);
    } else if (task == "nulldist") {
        expect_keys(p,
                    {"box", "pitch", "queries", "diamond_checks", "measure_N",
                     "measure_delta_schedule", "measure_sample_budget", "bilipschitz_pairs"},
                    {"box", "pitch", "queries"}, ctx);
        validate_region(p.at("box"), ctx + ".box");
        validate_schedule_json(p, "measure_delta_schedule", ctx);
    } else if (task == "map-audit") {
        expect_keys(p, {"map", "region", "pairs", "tol"}, {"map", "region", "pairs"}, ctx);
        validate_map(p.at("map"));
        validate_region(p.at("region"), ctx + ".region");
    } else if (task == "volume-comparison") {
        expect_keys(p,
                    {"map", "region", "N", "mode", "delta_schedule", "sample_budget", "tolerance"},
                    {"map", "region", "N", "mode", "delta_schedule"}, ctx);
        validate_map(p.at("map"));
        validate_region(p.at("region"), ctx + ".region");
        validate_schedule_json(p, "delta_schedule", ctx);
    } else {
        throw ConfigError("unknown task '" + task + "'");
    }
    if (p.contains("mode")) {
        const std::string m = p.at("mode").get<std::string>();
        if (m != "V" && m != "W") throw ConfigError(ctx + ": mode must be \"V\" or \"W\"");
    }
}

} // namespace

ExperimentConfig ExperimentConfig::from_json(const json& doc) {
    expect_keys(doc, {"version", "seed", "space", "task", "params", "output"},
                {"seed", "space", "task", "params"}, "config");
    ExperimentConfig cfg;
    cfg.raw = doc;
    if (!doc.at("seed").is_number_unsigned() && !doc.at("seed").is_number_integer())
        throw ConfigError("config: seed must be an integer (mandatory for reproducibility)");
    cfg.seed = doc.at("seed").get<std::uint64_t>();
    cfg.task = doc.at("task").get<std::string>();
    validate_space(doc.at("space"));
    validate_params(cfg.task, doc.at("params"));
    if (doc.contains("output")) {
        expect_keys(doc.at("output"), {"dir", "prefix"}, {}, "output");
        if (doc.at("output").contains("dir"))
            cfg.out_dir = doc.at("output").at("dir").get<std::string>();
        if (doc.at("output").contains("prefix"))
            cfg.prefix = doc.at("output").at("prefix").get<std::string>();
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return from_json(doc);
}

} // namespace taucover
