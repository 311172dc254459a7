#include "powerfree/report.hpp"

#include <json.hpp>

namespace powerfree {

using nlohmann::json;

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Avoided: return "AVOIDED";
        case Verdict::Realized: return "REALIZED";
        case Verdict::Inapplicable: return "INAPPLICABLE";
        case Verdict::ResourceExceeded: return "RESOURCE_EXCEEDED";
    }
    return "?";
}

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::Avoided: return 0;
        case Verdict::Realized: return 1;
        case Verdict::Inapplicable: return 2;
        case Verdict::ResourceExceeded: return 4;
    }
    return 2;
}

namespace {

json interval_json(const Interval& iv) {
    json j;
    j["lo"] = iv.lo.get_str();
    j["hi"] = iv.hi.get_str();
    j["approx"] = to_double((iv.lo + iv.hi) / 2);
    return j;
}

Interval interval_from(const json& j) {
    return Interval(Rat(j.at("lo").get<std::string>()), Rat(j.at("hi").get<std::string>()));
}

}  // namespace

std::string to_json(const DecisionReport& r) {
    json j;
    j["command"] = r.command;
    j["verdict"] = verdict_name(r.verdict);
    j["exit_code"] = exit_code(r.verdict);
    if (!r.error.empty()) j["error"] = r.error;
    json cert;
    cert["sharpen_power"] = r.sharpen_power;
    cert["pipeline_power"] = r.pipeline_power;
    cert["r_star"] = json::array();
    for (const Interval& iv : r.r_star) cert["r_star"].push_back(interval_json(iv));
    cert["factor_bounds"] = json::array();
    for (const Interval& iv : r.factor_bounds) cert["factor_bounds"].push_back(interval_json(iv));
    cert["parents_of_seed"] = r.parents_of_seed;
    cert["closure_size"] = r.closure_size;
    cert["candidate_count"] = r.candidate_count;
    cert["threshold_s"] = r.threshold_s;
    cert["factors_scanned"] = r.factors_scanned;
    cert["wall_ms"] = r.wall_ms;
    j["certificate"] = cert;
    if (r.witness_word) j["witness_word"] = *r.witness_word;
    if (r.witness_template) j["witness_template"] = *r.witness_template;
    if (r.seed_witness) j["seed_witness"] = *r.seed_witness;
    if (r.image_witness) {
        j["image_witness"] = *r.image_witness;
        j["image_witness_period"] = r.image_witness_period;
    }
    return j.dump(2);
}

DecisionReport report_from_json(const std::string& text) {
    json j = json::parse(text);
    DecisionReport r;
    r.command = j.value("command", "");
    std::string v = j.at("verdict").get<std::string>();
    if (v == "AVOIDED") r.verdict = Verdict::Avoided;
    else if (v == "REALIZED") r.verdict = Verdict::Realized;
    else if (v == "INAPPLICABLE") r.verdict = Verdict::Inapplicable;
    else r.verdict = Verdict::ResourceExceeded;
    r.error = j.value("error", "");
    const json& cert = j.at("certificate");
    r.sharpen_power = cert.value("sharpen_power", 1);
    r.pipeline_power = cert.value("pipeline_power", 1);
    for (const json& iv : cert.at("r_star")) r.r_star.push_back(interval_from(iv));
    for (const json& iv : cert.at("factor_bounds")) r.factor_bounds.push_back(interval_from(iv));
    r.parents_of_seed = cert.value("parents_of_seed", uint64_t(0));
    r.closure_size = cert.value("closure_size", uint64_t(0));
    r.candidate_count = cert.value("candidate_count", uint64_t(0));
    r.threshold_s = cert.value("threshold_s", int64_t(0));
    r.factors_scanned = cert.value("factors_scanned", uint64_t(0));
    r.wall_ms = cert.value("wall_ms", 0.0);
    if (j.contains("witness_word")) r.witness_word = j["witness_word"].get<std::string>();
    if (j.contains("witness_template")) r.witness_template = j["witness_template"].get<std::string>();
    if (j.contains("seed_witness")) r.seed_witness = j["seed_witness"].get<std::string>();
    if (j.contains("image_witness")) {
        r.image_witness = j["image_witness"].get<std::string>();
        r.image_witness_period = j.value("image_witness_period", int64_t(0));
    }
    return r;
}

}  // namespace powerfree
