#include "l1cft/config_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

using nlohmann::json;

namespace l1cft {

namespace {

const char* kKeys[] = {
    "alpha",         "area_scale",      "grid_m",        "grid_n",
    "cell_size",     "output_sigma_factor", "acl",       "eps",
    "p_max",         "mask_context",    "frame1_acl",    "temporal_mode",
    "pool_capacity", "fks_period",      "lambda",        "mu0",
    "rho",           "mu_max",          "admm_iterations", "use_sherman_morrison",
    "div_floor",     "omega_inside",    "omega_outside", "num_scales",
    "scale_step",    "scale_learning_rate", "cn_table",
};

}  // namespace

TrackerConfig config_from_json_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw BadSpec("config is not a JSON object");
    for (const auto& [key, _] : j.items()) {
        bool known = false;
        for (const char* k : kKeys) known = known || key == k;
        if (!known) throw BadSpec("unknown config key: " + key);
    }
    try {
        TrackerConfig c;
        c.alpha = j.value("alpha", c.alpha);
        c.area_scale = j.value("area_scale", c.area_scale);
        c.grid_m = j.value("grid_m", c.grid_m);
        c.grid_n = j.value("grid_n", c.grid_n);
        c.cell_size = j.value("cell_size", c.cell_size);
        c.output_sigma_factor = j.value("output_sigma_factor", c.output_sigma_factor);
        c.acl = j.value("acl", c.acl);
        c.eps = j.value("eps", c.eps);
        c.p_max = j.value("p_max", c.p_max);
        c.mask_context = j.value("mask_context", c.mask_context);
        c.frame1_acl = j.value("frame1_acl", c.frame1_acl);
        if (j.contains("temporal_mode"))
            c.temporal = temporal_mode_from_string(j["temporal_mode"].get<std::string>());
        c.pool_capacity = j.value("pool_capacity", c.pool_capacity);
        c.fks_period = j.value("fks_period", c.fks_period);
        c.admm.lambda = j.value("lambda", c.admm.lambda);
        c.admm.mu0 = j.value("mu0", c.admm.mu0);
        c.admm.rho = j.value("rho", c.admm.rho);
        c.admm.mu_max = j.value("mu_max", c.admm.mu_max);
        c.admm.iterations = j.value("admm_iterations", c.admm.iterations);
        c.admm.use_sherman_morrison = j.value("use_sherman_morrison", c.admm.use_sherman_morrison);
        c.admm.div_floor = j.value("div_floor", c.admm.div_floor);
        c.omega_inside = j.value("omega_inside", c.omega_inside);
        c.omega_outside = j.value("omega_outside", c.omega_outside);
        c.num_scales = j.value("num_scales", c.num_scales);
        c.scale_step = j.value("scale_step", c.scale_step);
        c.scale_learning_rate = j.value("scale_learning_rate", c.scale_learning_rate);
        c.cn_table_path = j.value("cn_table", c.cn_table_path);
        if (c.alpha < 0.0 || c.alpha > 1.0) throw BadSpec("alpha must be in [0,1]");
        if (c.grid_m < 2 || c.grid_n < 2 || c.cell_size < 1) throw BadSpec("bad grid geometry");
        return c;
    } catch (const json::exception& e) {
        throw BadSpec(std::string("invalid config: ") + e.what());
    }
}

std::string config_to_json_text(const TrackerConfig& c) {
    json j;
    j["alpha"] = c.alpha;
    j["area_scale"] = c.area_scale;
    j["grid_m"] = c.grid_m;
    j["grid_n"] = c.grid_n;
    j["cell_size"] = c.cell_size;
    j["output_sigma_factor"] = c.output_sigma_factor;
    j["acl"] = c.acl;
    j["eps"] = c.eps;
    j["p_max"] = c.p_max;
    j["mask_context"] = c.mask_context;
    j["frame1_acl"] = c.frame1_acl;
    j["temporal_mode"] = to_string(c.temporal);
    j["pool_capacity"] = c.pool_capacity;
    j["fks_period"] = c.fks_period;
    j["lambda"] = c.admm.lambda;
    j["mu0"] = c.admm.mu0;
    j["rho"] = c.admm.rho;
    j["mu_max"] = c.admm.mu_max;
    j["admm_iterations"] = c.admm.iterations;
    j["use_sherman_morrison"] = c.admm.use_sherman_morrison;
    j["div_floor"] = c.admm.div_floor;
    j["omega_inside"] = c.omega_inside;
    j["omega_outside"] = c.omega_outside;
    j["num_scales"] = c.num_scales;
    j["scale_step"] = c.scale_step;
    j["scale_learning_rate"] = c.scale_learning_rate;
    j["cn_table"] = c.cn_table_path;
    return j.dump(2);
}

TrackerConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json_text(ss.str());
}

TrackerConfig apply_variant(TrackerConfig c, const std::string& variant) {
    if (variant == "baseline") {
        c.acl = false;
        c.temporal = TemporalMode::none;
    } else if (variant == "acl") {
        c.acl = true;
        c.temporal = TemporalMode::none;
    } else if (variant == "aks") {
        c.acl = false;
        c.temporal = TemporalMode::aks;
    } else if (variant == "acl_tr") {
        c.acl = true;
        c.temporal = TemporalMode::tr;
    } else if (variant == "acl_fks") {
        c.acl = true;
        c.temporal = TemporalMode::fks;
    } else if (variant == "full") {
        c.acl = true;
        c.temporal = TemporalMode::aks;
    } else if (variant == "acl_plus") {
        c.acl = true;
        c.temporal = TemporalMode::aks;
        c.mask_context = false;
    } else {
        throw BadSpec("unknown ablation variant: " + variant);
    }
    return c;
}

}  // namespace l1cft
