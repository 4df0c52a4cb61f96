/**
 * @file report.cpp
 * @brief JSON and CSV report serialization
 */

#include <aquapipe/pipeline/report.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace aquapipe::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <class T>
json opt(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

json delta(const metrics::MetricReport& before, const metrics::MetricReport& after) {
    json d{
        {"uiqm", after.uiqm - before.uiqm},   {"uicm", after.uicm - before.uicm},
        {"uism", after.uism - before.uism},   {"uiconm", after.uiconm - before.uiconm},
        {"uciqe", after.uciqe - before.uciqe},
    };
    json cp = json::array();
    for (int c = 0; c < 3; ++c) cp.push_back(after.channel_proportions[c] - before.channel_proportions[c]);
    d["channel_proportions"] = cp;
    return d;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string csv_num(const std::optional<double>& v) {
    if (!v) return "";
    std::ostringstream os;
    os << std::setprecision(17) << *v;
    return os.str();
}

}  // namespace

json to_json(const metrics::MetricReport& r) {
    return json{
        {"uiqm", r.uiqm},
        {"uicm", r.uicm},
        {"uism", r.uism},
        {"uiconm", r.uiconm},
        {"uciqe", r.uciqe},
        {"ssim", opt(r.ssim)},
        {"delta_e76", opt(r.delta_e76)},
        {"channel_proportions", r.channel_proportions},
    };
}

metrics::MetricReport metric_report_from_json(const json& j) {
    metrics::MetricReport r;
    r.uiqm = j.at("uiqm").get<double>();
    r.uicm = j.at("uicm").get<double>();
    r.uism = j.at("uism").get<double>();
    r.uiconm = j.at("uiconm").get<double>();
    r.uciqe = j.at("uciqe").get<double>();
    if (!j.at("ssim").is_null()) r.ssim = j.at("ssim").get<double>();
    if (!j.at("delta_e76").is_null()) r.delta_e76 = j.at("delta_e76").get<double>();
    r.channel_proportions = j.at("channel_proportions").get<std::array<double, 3>>();
    return r;
}

json to_json(const JobEntry& e, bool include_timing) {
    const EnhanceTrace& t = e.trace;
    json j{
        {"input", e.input},
        {"output", e.ok ? json(e.output) : json(nullptr)},
        {"status", e.ok ? "ok" : "failed"},
        {"error", e.ok ? json(nullptr) : json(e.error)},
        {"water_type", opt(t.water_type)},
        {"alpha", opt(t.alpha)},
        {"gamma", opt(t.gamma)},
        {"attenuation", opt(t.attenuation)},
        {"wgaf_sigma", opt(t.wgaf_sigma)},
        {"balance_delta_e", opt(t.balance_delta_e)},
        {"balance_iterations", opt(t.balance_iterations)},
        {"histogram_matched", t.histogram_matched},
    };
    if (t.wgaf_branches) {
        j["wgaf_branches"] = {{"spatial", t.wgaf_branches->spatial},
                              {"blended", t.wgaf_branches->blended},
                              {"frequency", t.wgaf_branches->frequency}};
    } else {
        j["wgaf_branches"] = nullptr;
    }
    j["before"] = e.before ? to_json(*e.before) : json(nullptr);
    j["after"] = e.after ? to_json(*e.after) : json(nullptr);
    j["delta"] = e.before && e.after ? delta(*e.before, *e.after) : json(nullptr);
    if (include_timing) j["wall_ms"] = e.wall_ms;
    return j;
}

json to_json(const JobReport& r, bool include_timing) {
    json entries = json::array();
    for (const auto& e : r.entries) entries.push_back(to_json(e, include_timing));
    return json{
        {"images", r.entries.size()},
        {"failures", r.failures()},
        {"entries", entries},
    };
}

std::string to_csv(const JobReport& r, bool include_timing) {
    std::ostringstream os;
    os << "input,output,status,error,water_type,alpha,gamma,wgaf_spatial,wgaf_blended,wgaf_frequency";
    for (const char* when : {"before", "after"})
        for (const char* m : {"uiqm", "uicm", "uism", "uiconm", "uciqe", "prop_r", "prop_g", "prop_b"}) os << ',' << when << '_' << m;
    os << ",delta_uiqm,delta_uciqe";
    if (include_timing) os << ",wall_ms";
    os << '\n';

    for (const auto& e : r.entries) {
        const EnhanceTrace& t = e.trace;
        os << csv_field(e.input) << ',' << (e.ok ? csv_field(e.output) : "") << ',' << (e.ok ? "ok" : "failed") << ','
           << csv_field(e.error) << ',' << csv_field(t.water_type.value_or("")) << ',' << csv_num(t.alpha) << ','
           << csv_num(t.gamma);
        const auto& b = t.wgaf_branches;
        os << ',' << csv_num(b ? std::optional(b->spatial) : std::nullopt) << ','
           << csv_num(b ? std::optional(b->blended) : std::nullopt) << ','
           << csv_num(b ? std::optional(b->frequency) : std::nullopt);
        for (const auto* m : {&e.before, &e.after}) {
            const auto& rep = *m;
            for (double v : rep ? std::array<double, 8>{rep->uiqm, rep->uicm, rep->uism, rep->uiconm, rep->uciqe,
                                                        rep->channel_proportions[0], rep->channel_proportions[1],
                                                        rep->channel_proportions[2]}
                                : std::array<double, 8>{}) {
                os << ',' << (rep ? csv_num(v) : "");
            }
        }
        const bool both = e.before && e.after;
        os << ',' << (both ? csv_num(e.after->uiqm - e.before->uiqm) : "") << ','
           << (both ? csv_num(e.after->uciqe - e.before->uciqe) : "");
        if (include_timing) os << ',' << csv_num(e.wall_ms);
        os << '\n';
    }
    return os.str();
}

void write_report(const JobReport& r, const fs::path& json_path, bool include_timing) {
    fs::path csv_path = json_path;
    csv_path.replace_extension(".csv");
    std::ofstream js(json_path);
    if (!js) throw IoError("cannot write report " + json_path.string());
    js << to_json(r, include_timing).dump(2) << '\n';
    std::ofstream cs(csv_path);
    if (!cs) throw IoError("cannot write report " + csv_path.string());
    cs << to_csv(r, include_timing);
}

}  // namespace aquapipe::pipeline
