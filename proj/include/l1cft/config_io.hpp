#pragma once

#include <string>

#include "l1cft/tracker.hpp"

namespace l1cft {

// Flat JSON <-> TrackerConfig; unknown keys are rejected. Defaults match
// the reference parameter set, so an empty object round-trips the defaults.
TrackerConfig config_from_json_text(const std::string& text);  // throws BadSpec
std::string config_to_json_text(const TrackerConfig& cfg);

TrackerConfig load_config(const std::string& path);  // throws BadSpec / IoError

// Ablation presets: baseline, acl, aks, acl_tr, acl_fks, full, acl_plus.
TrackerConfig apply_variant(TrackerConfig cfg, const std::string& variant);  // throws BadSpec

}  // namespace l1cft
