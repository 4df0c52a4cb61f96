// Completeness check for the default configuration document. The expected
// values are written out literally here so that a silent change to a
// default shows up as a mismatch rather than passing through.
#pragma once

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace aquapipe::test {

namespace schema_detail {

// yaml-cpp's Node::operator= writes through, so descend by recursion on
// const nodes instead of reassigning a cursor.
inline YAML::Node walk(const YAML::Node& n, const std::string& dotted) {
    const std::size_t dot = dotted.find('.');
    const std::string key = dotted.substr(0, dot);
    if (!n.IsMap() || !n[key]) return YAML::Node(YAML::NodeType::Undefined);
    const YAML::Node child = n[key];
    return dot == std::string::npos ? child : walk(child, dotted.substr(dot + 1));
}

inline bool near(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

}  // namespace schema_detail

/// Problems found in a dumped config; empty when every invented constant is
/// present with its documented default.
inline std::vector<std::string> default_config_problems(const std::string& yaml_text) {
    using schema_detail::near;
    using schema_detail::walk;
    std::vector<std::string> bad;
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        return {std::string("not valid YAML: ") + e.what()};
    }

    const auto scalar = [&](const std::string& key, double want) {
        const YAML::Node n = walk(root, key);
        if (!n.IsDefined() || !n.IsScalar()) {
            bad.push_back("missing " + key);
            return;
        }
        double got = 0;
        try {
            got = n.as<double>();
        } catch (const YAML::Exception&) {
            bad.push_back(key + " is not a number");
            return;
        }
        if (!near(got, want)) bad.push_back(key + " = " + n.Scalar() + ", expected " + std::to_string(want));
    };
    const auto vec = [&](const YAML::Node& n, const std::string& key, const std::vector<double>& want) {
        if (!n.IsDefined() || !n.IsSequence() || n.size() != want.size()) {
            bad.push_back("missing or malformed " + key);
            return;
        }
        for (std::size_t i = 0; i < want.size(); ++i)
            if (!near(n[i].as<double>(), want[i])) bad.push_back(key + "[" + std::to_string(i) + "] differs");
    };
    const auto present = [&](const std::string& key) {
        if (!walk(root, key).IsDefined()) bad.push_back("missing " + key);
    };

    scalar("wgaf.t1", 1e-3);
    scalar("wgaf.t2", 1e-2);
    scalar("dcp.omega", 0.95);
    scalar("dcp.t_floor", 0.1);
    scalar("balance.beta", 0.5);
    scalar("balance.target_delta_e", 10.0);
    scalar("metrics.uiqm.c1", 0.0282);
    scalar("metrics.uiqm.c2", 0.2953);
    scalar("metrics.uiqm.c3", 3.5753);
    scalar("metrics.uciqe.c1", 0.4680);
    scalar("metrics.uciqe.c2", 0.2745);
    scalar("metrics.uciqe.c3", 0.2576);

    // The remaining invented knobs only need to be exposed.
    for (const char* k : {"illumination.alpha_mode", "illumination.alpha_min", "illumination.alpha_max",
                          "illumination.alpha_slope", "illumination.local_sigmas", "illumination.local_weights",
                          "gamma.invert", "wgaf.window_radius", "wgaf.bilateral_sigma_s", "wgaf.bilateral_sigma_r",
                          "wgaf.highpass_cutoff", "dcp.patch_radius", "dcp.airlight_percentile", "mudcp.radii",
                          "mudcp.weights", "rcp.lambda", "balance.max_iters", "balance.reference_lab",
                          "balance.tolerance", "hsv.sat_gain", "hsv.val_gain"}) {
        present(k);
    }

    struct Row {
        const char* name;
        std::vector<double> eta, weights;
    };
    const std::vector<Row> table{
        {"clear", {0.33, 0.34, 0.33}, {0.2, 0.4, 0.4}},
        {"green-coastal", {0.20, 0.45, 0.35}, {0.5, 0.2, 0.3}},
        {"deep-blue", {0.15, 0.35, 0.50}, {0.6, 0.1, 0.3}},
        {"turbid", {0.28, 0.40, 0.32}, {0.3, 0.3, 0.4}},
    };
    const YAML::Node wt = root["water_types"];
    if (!wt || !wt.IsSequence() || wt.size() != table.size()) {
        bad.push_back("water_types must list " + std::to_string(table.size()) + " profiles");
    } else {
        for (std::size_t i = 0; i < table.size(); ++i) {
            const std::string at = "water_types[" + std::to_string(i) + "]";
            if (!wt[i]["name"] || wt[i]["name"].as<std::string>() != table[i].name) bad.push_back(at + ".name differs");
            vec(wt[i]["eta"], at + ".eta", table[i].eta);
            vec(wt[i]["weights"], at + ".weights", table[i].weights);
        }
    }
    return bad;
}

}  // namespace aquapipe::test
