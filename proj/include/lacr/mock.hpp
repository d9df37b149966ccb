#pragma once

#include <nlohmann/json.hpp>

#include "lacr/ground_truth.hpp"
#include "lacr/retrieval.hpp"

namespace lacr {

// Mock script answering DIRECT for truth-adjacent pairs and INDEPENDENT
// otherwise, with orientations read off the truth arrows (UNKNOWN for
// skeleton-only truths). With a manifest, the same answers are scripted for
// every pooled document, reference sentences included.
nlohmann::json oracle_script(const GroundTruthEntry& truth,
                             const CorpusManifest* manifest = nullptr);

}  // namespace lacr
