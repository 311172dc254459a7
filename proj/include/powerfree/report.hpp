#pragma once

#include "powerfree/applications.hpp"

namespace powerfree {

// Machine-readable outcome of one CLI run.
struct DecisionReport {
    std::string command;
    Verdict verdict = Verdict::Avoided;
    std::string error;

    std::vector<Interval> r_star;
    std::vector<Interval> factor_bounds;  // m_i (r*/2), when available
    int sharpen_power = 1;
    int pipeline_power = 1;
    uint64_t parents_of_seed = 0;
    uint64_t closure_size = 0;
    uint64_t candidate_count = 0;
    int64_t threshold_s = 0;
    uint64_t factors_scanned = 0;
    double wall_ms = 0;

    // witnesses rendered as space-separated letter tokens
    std::optional<std::string> witness_word;      // word realizing a closure member
    std::optional<std::string> witness_template;  // rendered template
    std::optional<std::string> seed_witness;      // word realizing a seed
    std::optional<std::string> image_witness;     // image-side witness (applications)
    int64_t image_witness_period = 0;
};

const char* verdict_name(Verdict v);
int exit_code(Verdict v);

std::string to_json(const DecisionReport& r);
DecisionReport report_from_json(const std::string& text);

}  // namespace powerfree
