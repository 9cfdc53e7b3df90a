#pragma once

#include <string>
#include <vector>

#include "l1cft/metrics.hpp"

namespace l1cft {

// Writes results.csv, curves.csv and precision/success SVG plots into
// out_dir. Files are written atomically (temp + rename).
void emit_report(const std::vector<EvalSummary>& summaries, const std::string& out_dir);

struct ResultRow {
    std::string sequence;
    std::string config;
    size_t frames = 0;
    double dp20 = 0.0;
    double op50 = 0.0;
    double auc = 0.0;
    double fps = 0.0;
};

// Parses a results.csv produced by emit_report (round-trip lossless).
std::vector<ResultRow> parse_results_csv(const std::string& path);

}  // namespace l1cft
