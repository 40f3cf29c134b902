// Combines process findings, the specification and justification results
// into per-NP and overall compliance verdicts, and renders them as JSON
// (the stable contract, schema version 1) and DOT (presentational).
#pragma once

#include <string>
#include <vector>

#include "nms/argumentation.hpp"
#include "nms/checks.hpp"
#include "nms/model.hpp"

namespace nms {

enum class VerdictStatus { compliant, non_compliant, not_applicable };
enum class Overall { compliant, non_compliant };

struct NpVerdict {
    std::string np;
    std::vector<std::string> applicable_to;       // sorted actor ids
    std::vector<JustificationResult> hypotheses;  // sorted by hypothesis id
    VerdictStatus status = VerdictStatus::not_applicable;
};

struct ComplianceReport {
    std::string model_digest;  // of the canonical serialization
    std::vector<ProcessFinding> findings;
    Specification specification;
    std::vector<NpVerdict> np_verdicts;  // sorted by np id
    Overall overall = Overall::compliant;
};

// Runs every check and justification over an integrity-clean model.
// An NP is compliant iff it is applicable, at least one hypothesis is
// justified, and no blocking finding touches its realization chain; the
// model is compliant iff every applicable NP is and no blocking finding
// exists at all.
ComplianceReport decide(const Model& model);

// Stable JSON bytes: sorted keys, two-space indent, trailing newline.
// Equal reports serialize identically.
std::string to_json(const ComplianceReport& report);

// One digraph per hypothesis tree; node style encodes the mark (solid
// undefeated, dashed defeated), edge style the relation (solid attack,
// dashed support).
std::string to_dot(const ComplianceReport& report);

// FNV-1a 64-bit fingerprint of the canonical serialization.
std::string model_digest(const Model& model);

const char* to_string(VerdictStatus s);
const char* to_string(Overall o);

}  // namespace nms
