/**
 * @file config.cpp
 * @brief YAML configuration loading, validation and emission
 */

#include <aquapipe/pipeline/config.hpp>

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace aquapipe::pipeline {

namespace {

// Read side: a mapping node that remembers which keys were consumed, so
// anything left over is reported as unknown.
class Section {
public:
    Section(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {
        if (node_ && !node_.IsNull() && !node_.IsMap()) throw ConfigError(where() + "expected a mapping");
    }

    template <class T>
    void get(const std::string& key, T& out) {
        const YAML::Node n = take(key);
        if (!n) return;
        try {
            out = n.as<T>();
        } catch (const YAML::Exception&) {
            throw ConfigError(where() + key + ": invalid value");
        }
    }

    /// null or "auto" -> empty, number -> value.
    void get_optional(const std::string& key, std::optional<double>& out, const char* none_word) {
        const YAML::Node n = take(key);
        if (!n) return;
        if (n.IsNull() || (n.IsScalar() && n.Scalar() == none_word)) {
            out.reset();
            return;
        }
        double v = 0.0;
        try {
            v = n.as<double>();
        } catch (const YAML::Exception&) {
            throw ConfigError(where() + key + ": expected a number or '" + none_word + "'");
        }
        out = v;
    }

    Section sub(const std::string& key) { return Section(take(key), path_ + key + "."); }

    YAML::Node take(const std::string& key) {
        used_.insert(key);
        if (!node_ || node_.IsNull()) return YAML::Node(YAML::NodeType::Undefined);
        const YAML::Node& cn = node_;
        YAML::Node n = cn[key];
        return n ? n : YAML::Node(YAML::NodeType::Undefined);
    }

    void finish() const {
        if (!node_ || node_.IsNull()) return;
        for (const auto& kv : node_) {
            const auto key = kv.first.as<std::string>();
            if (!used_.count(key)) throw ConfigError("unknown config key '" + path_ + key + "'");
        }
    }

private:
    std::string where() const { return "config " + (path_.empty() ? std::string() : path_); }

    YAML::Node node_;
    std::string path_;
    std::set<std::string> used_;
};

template <class T>
void read_array3(Section& s, const std::string& key, std::array<T, 3>& out) {
    std::vector<T> v;
    s.get(key, v);
    if (v.empty()) return;
    if (v.size() != 3) throw ConfigError("config " + key + ": expected 3 values");
    std::copy(v.begin(), v.end(), out.begin());
}

color::WaterTypeTable read_water_types(const YAML::Node& n) {
    if (!n.IsSequence()) throw ConfigError("config water_types: expected a list");
    color::WaterTypeTable table;
    for (std::size_t i = 0; i < n.size(); ++i) {
        Section s(n[i], "water_types[" + std::to_string(i) + "].");
        color::WaterTypeProfile p;
        s.get("name", p.name);
        read_array3(s, "eta", p.reference.eta);
        read_array3(s, "weights", p.weights);
        s.finish();
        table.profiles.push_back(std::move(p));
    }
    return table;
}

// Write side: shortest decimal that reads back to the same double.
std::string num(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

template <class C>
void emit_list(YAML::Emitter& out, const C& values) {
    out << YAML::Flow << YAML::BeginSeq;
    for (const auto& v : values) {
        if constexpr (std::is_floating_point_v<std::decay_t<decltype(v)>>) out << num(v);
        else out << v;
    }
    out << YAML::EndSeq;
}

void check(bool ok, const std::string& what) {
    if (!ok) throw ConfigError("config: " + what);
}

}  // namespace

const char* stage_name(Stage s) noexcept {
    switch (s) {
        case Stage::ILLUMINATION: return "illumination";
        case Stage::WGAF: return "wgaf";
        case Stage::SACC: return "sacc";
        case Stage::BALANCE: return "balance";
        case Stage::HSV: return "hsv";
    }
    return "?";
}

Stage parse_stage(const std::string& name) {
    for (Stage s : kStages) {
        if (name == stage_name(s)) return s;
    }
    throw ConfigError("unknown stage '" + name + "' (expected illumination, wgaf, sacc, balance or hsv)");
}

bool& StageToggles::operator[](Stage s) noexcept {
    switch (s) {
        case Stage::ILLUMINATION: return illumination;
        case Stage::WGAF: return wgaf;
        case Stage::SACC: return sacc;
        case Stage::BALANCE: return balance;
        case Stage::HSV: break;
    }
    return hsv;
}

bool StageToggles::operator[](Stage s) const noexcept { return const_cast<StageToggles&>(*this)[s]; }

void PipelineConfig::validate() const {
    try {
        illumination.validate();
        wgaf.validate();
        dcp.validate();
        mudcp.validate();
        water_types.validate();
        balance.validate();
    } catch (const PreconditionError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (rcp_lambda) check(std::isfinite(*rcp_lambda), "rcp.lambda must be finite");
    if (water_type != "auto") {
        bool found = false;
        for (const auto& p : water_types.profiles) found = found || p.name == water_type;
        check(found, "wti.water_type '" + water_type + "' is not in water_types");
    }
    check(hsv.sat_gain >= 0.0 && std::isfinite(hsv.sat_gain), "hsv.sat_gain must be finite and >= 0");
    check(hsv.val_gain >= 0.0 && std::isfinite(hsv.val_gain), "hsv.val_gain must be finite and >= 0");
    for (double c : {coefficients.uiqm.c1, coefficients.uiqm.c2, coefficients.uiqm.c3, coefficients.uciqe.c1,
                     coefficients.uciqe.c2, coefficients.uciqe.c3}) {
        check(std::isfinite(c), "metric coefficients must be finite");
    }
}

PipelineConfig parse_config(const std::string& yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config: malformed YAML: ") + e.what());
    }
    PipelineConfig cfg;
    Section top(root, "");

    {
        Section s = top.sub("stages");
        for (Stage st : kStages) s.get(stage_name(st), cfg.stages[st]);
        s.finish();
    }
    {
        Section s = top.sub("illumination");
        std::string mode = cfg.illumination.alpha_mode == illum::AlphaMode::AUTO ? "auto" : "fixed";
        s.get("alpha_mode", mode);
        if (mode == "auto") cfg.illumination.alpha_mode = illum::AlphaMode::AUTO;
        else if (mode == "fixed") cfg.illumination.alpha_mode = illum::AlphaMode::FIXED;
        else throw ConfigError("config illumination.alpha_mode: expected 'auto' or 'fixed'");
        s.get("alpha", cfg.illumination.alpha);
        s.get("alpha_min", cfg.illumination.alpha_min);
        s.get("alpha_max", cfg.illumination.alpha_max);
        s.get("alpha_slope", cfg.illumination.alpha_slope);
        s.get("local_sigmas", cfg.illumination.local_sigmas);
        s.get("local_weights", cfg.illumination.local_weights);
        s.finish();
    }
    {
        Section s = top.sub("gamma");
        s.get("invert", cfg.illumination.invert_gamma);
        s.get_optional("override", cfg.illumination.gamma_override, "auto");
        s.finish();
    }
    {
        Section s = top.sub("wgaf");
        s.get("t1", cfg.wgaf.t1);
        s.get("t2", cfg.wgaf.t2);
        s.get("window_radius", cfg.wgaf.window_radius);
        s.get("bilateral_sigma_s", cfg.wgaf.bilateral_sigma_s);
        s.get("bilateral_sigma_r", cfg.wgaf.bilateral_sigma_r);
        s.get("highpass_cutoff", cfg.wgaf.highpass_cutoff);
        s.get("literal_highpass", cfg.wgaf.literal_highpass);
        s.finish();
    }
    {
        Section s = top.sub("dcp");
        s.get("patch_radius", cfg.dcp.patch_radius);
        s.get("omega", cfg.dcp.omega);
        s.get("t_floor", cfg.dcp.t_floor);
        s.get("airlight_percentile", cfg.dcp.airlight_percentile);
        s.finish();
    }
    {
        Section s = top.sub("mudcp");
        s.get("radii", cfg.mudcp.radii);
        s.get("weights", cfg.mudcp.weights);
        s.finish();
    }
    {
        Section s = top.sub("rcp");
        s.get_optional("lambda", cfg.rcp_lambda, "auto");
        s.finish();
    }
    {
        Section s = top.sub("wti");
        s.get("literal_argmax", cfg.wti_literal_argmax);
        s.get("water_type", cfg.water_type);
        s.finish();
    }
    if (const YAML::Node wt = top.take("water_types"); wt && !wt.IsNull()) cfg.water_types = read_water_types(wt);
    {
        Section s = top.sub("balance");
        s.get("target_delta_e", cfg.balance.target_delta_e);
        s.get("beta", cfg.balance.beta);
        s.get("max_iters", cfg.balance.max_iters);
        read_array3(s, "reference_lab", cfg.balance.reference);
        s.get("tolerance", cfg.balance.tolerance);
        const YAML::Node ref = s.take("reference_image");
        if (ref) {
            if (ref.IsNull() || (ref.IsScalar() && ref.Scalar().empty())) cfg.reference_image.reset();
            else if (ref.IsScalar()) cfg.reference_image = ref.Scalar();
            else throw ConfigError("config balance.reference_image: expected a path");
        }
        s.finish();
    }
    {
        Section s = top.sub("hsv");
        s.get("sat_gain", cfg.hsv.sat_gain);
        s.get("val_gain", cfg.hsv.val_gain);
        s.finish();
    }
    {
        Section m = top.sub("metrics");
        Section u = m.sub("uiqm");
        u.get("c1", cfg.coefficients.uiqm.c1);
        u.get("c2", cfg.coefficients.uiqm.c2);
        u.get("c3", cfg.coefficients.uiqm.c3);
        u.finish();
        Section c = m.sub("uciqe");
        c.get("c1", cfg.coefficients.uciqe.c1);
        c.get("c2", cfg.coefficients.uciqe.c2);
        c.get("c3", cfg.coefficients.uciqe.c3);
        c.finish();
        m.finish();
    }
    top.finish();
    cfg.validate();
    return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string dump_config(const PipelineConfig& cfg) {
    YAML::Emitter out;
    out << YAML::Comment("aquapipe pipeline configuration") << YAML::BeginMap;

    out << YAML::Key << "stages" << YAML::Value << YAML::BeginMap;
    for (Stage s : kStages) out << YAML::Key << stage_name(s) << YAML::Value << cfg.stages[s];
    out << YAML::EndMap;

    const auto& il = cfg.illumination;
    out << YAML::Key << "illumination" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "alpha_mode" << YAML::Value << (il.alpha_mode == illum::AlphaMode::AUTO ? "auto" : "fixed");
    out << YAML::Key << "alpha" << YAML::Value << num(il.alpha);
    out << YAML::Key << "alpha_min" << YAML::Value << num(il.alpha_min);
    out << YAML::Key << "alpha_max" << YAML::Value << num(il.alpha_max);
    out << YAML::Key << "alpha_slope" << YAML::Value << num(il.alpha_slope);
    out << YAML::Key << "local_sigmas" << YAML::Value;
    emit_list(out, il.local_sigmas);
    out << YAML::Key << "local_weights" << YAML::Value;
    emit_list(out, il.local_weights);
    out << YAML::EndMap;

    out << YAML::Key << "gamma" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "invert" << YAML::Value << il.invert_gamma;
    out << YAML::Key << "override" << YAML::Value << (il.gamma_override ? num(*il.gamma_override) : "auto");
    out << YAML::EndMap;

    const auto& w = cfg.wgaf;
    out << YAML::Key << "wgaf" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "t1" << YAML::Value << num(w.t1);
    out << YAML::Key << "t2" << YAML::Value << num(w.t2);
    out << YAML::Key << "window_radius" << YAML::Value << w.window_radius;
    out << YAML::Key << "bilateral_sigma_s" << YAML::Value << num(w.bilateral_sigma_s);
    out << YAML::Key << "bilateral_sigma_r" << YAML::Value << num(w.bilateral_sigma_r);
    out << YAML::Key << "highpass_cutoff" << YAML::Value << num(w.highpass_cutoff);
    out << YAML::Key << "literal_highpass" << YAML::Value << w.literal_highpass;
    out << YAML::EndMap;

    out << YAML::Key << "dcp" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "patch_radius" << YAML::Value << cfg.dcp.patch_radius;
    out << YAML::Key << "omega" << YAML::Value << num(cfg.dcp.omega);
    out << YAML::Key << "t_floor" << YAML::Value << num(cfg.dcp.t_floor);
    out << YAML::Key << "airlight_percentile" << YAML::Value << num(cfg.dcp.airlight_percentile);
    out << YAML::EndMap;

    out << YAML::Key << "mudcp" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "radii" << YAML::Value;
    emit_list(out, cfg.mudcp.radii);
    out << YAML::Key << "weights" << YAML::Value;
    emit_list(out, cfg.mudcp.weights);
    out << YAML::EndMap;

    out << YAML::Key << "rcp" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "lambda" << YAML::Value << (cfg.rcp_lambda ? num(*cfg.rcp_lambda) : "auto");
    out << YAML::EndMap;

    out << YAML::Key << "wti" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "literal_argmax" << YAML::Value << cfg.wti_literal_argmax;
    out << YAML::Key << "water_type" << YAML::Value << cfg.water_type;
    out << YAML::EndMap;

    out << YAML::Key << "water_types" << YAML::Value << YAML::BeginSeq;
    for (const auto& p : cfg.water_types.profiles) {
        out << YAML::BeginMap;
        out << YAML::Key << "name" << YAML::Value << p.name;
        out << YAML::Key << "eta" << YAML::Value;
        emit_list(out, p.reference.eta);
        out << YAML::Key << "weights" << YAML::Value;
        emit_list(out, p.weights);
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;

    const auto& b = cfg.balance;
    out << YAML::Key << "balance" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "target_delta_e" << YAML::Value << num(b.target_delta_e);
    out << YAML::Key << "beta" << YAML::Value << num(b.beta);
    out << YAML::Key << "max_iters" << YAML::Value << b.max_iters;
    out << YAML::Key << "reference_lab" << YAML::Value;
    emit_list(out, b.reference);
    out << YAML::Key << "tolerance" << YAML::Value << num(b.tolerance);
    out << YAML::Key << "reference_image" << YAML::Value;
    if (cfg.reference_image) out << cfg.reference_image->string();
    else out << YAML::Null;
    out << YAML::EndMap;

    out << YAML::Key << "hsv" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "sat_gain" << YAML::Value << num(cfg.hsv.sat_gain);
    out << YAML::Key << "val_gain" << YAML::Value << num(cfg.hsv.val_gain);
    out << YAML::EndMap;

    const auto& co = cfg.coefficients;
    out << YAML::Key << "metrics" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "uiqm" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "c1" << YAML::Value << num(co.uiqm.c1);
    out << YAML::Key << "c2" << YAML::Value << num(co.uiqm.c2);
    out << YAML::Key << "c3" << YAML::Value << num(co.uiqm.c3);
    out << YAML::EndMap;
    out << YAML::Key << "uciqe" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "c1" << YAML::Value << num(co.uciqe.c1);
    out << YAML::Key << "c2" << YAML::Value << num(co.uciqe.c2);
    out << YAML::Key << "c3" << YAML::Value << num(co.uciqe.c3);
    out << YAML::EndMap;
    out << YAML::EndMap;

    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

}  // namespace aquapipe::pipeline
