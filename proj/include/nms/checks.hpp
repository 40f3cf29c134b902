// Well-formedness checks for the five compliance-modeling steps, plus the
// solution computation: which actors each NP applies to, which goals answer
// it, and the task sets that operationalize the compliance goals.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "nms/model.hpp"

namespace nms {

// One finding per violated step rule. Codes W1..W5 key the five steps:
//   W1 applicability undecided        (blocking)
//   W2 applicable NP with no declared effect or realization (warning)
//   W3 applicable NP unrealized / realization from a non-compliance goal (blocking)
//   W4 OR refinement without selection, or refinement cycle (blocking)
//   W5 goal in a solution traversal has no refinement        (blocking)
struct ProcessFinding {
    std::string code;
    std::string subject;  // element id the finding cites
    std::string message;
    bool blocking = false;

    bool operator==(const ProcessFinding&) const = default;
};

// sol(g): the conjunction of leaf tasks reached from a compliance goal.
// Empty iff the goal is not fully operationalized.
struct SolutionSet {
    std::string goal;
    std::set<std::string> tasks;

    bool operator==(const SolutionSet&) const = default;
};

// Spec(R): solution sets for exactly the compliance goals that appear in
// realization relations.
struct Specification {
    std::map<std::string, SolutionSet> per_goal;

    bool operator==(const Specification&) const = default;
};

// Actors positively bound to the NP's subject role, sorted by id.
std::vector<std::string> applicable_actors(const Model& model, const NormativeProposition& np);

// True iff the NP has at least one positive subject binding.
bool is_applicable(const Model& model, const NormativeProposition& np);

// Step 1: every NP's subject role must be decided one way or the other.
// A negative binding settles the question without applying the NP.
std::vector<ProcessFinding> check_applicability(const Model& model);

// Step 2: an applicable NP must either affect some goal or be realized;
// silence is a warning, not a blocker.
std::vector<ProcessFinding> check_affected_goals(const Model& model);

// Step 3: applicable NPs need at least one realization from a compliance goal.
std::vector<ProcessFinding> check_realizations(const Model& model);

// Step 4: OR refinements reachable from a compliance goal need a selection;
// refinement cycles are reported here as well.
std::vector<ProcessFinding> check_refinements(const Model& model);

// Step 5: realizing compliance goals must be fully operationalized.
std::vector<ProcessFinding> check_operationalization(const Model& model);

// Leaf tasks reached from `goal`, following all children of AND refinements
// and only the selected child of OR refinements. Any unrefined goal on the
// way leaves the solution empty and records a W5 finding in `findings` when
// given. Throws UnknownElementError for an unknown goal.
SolutionSet compute_solution(const Model& model, const std::string& goal,
                             std::vector<ProcessFinding>* findings = nullptr);

// Solution sets for every realizing compliance goal.
Specification compute_specification(const Model& model,
                                    std::vector<ProcessFinding>* findings = nullptr);

// All five checks, deduplicated and sorted by (code, subject).
std::vector<ProcessFinding> run_all_checks(const Model& model);

// Sorts by (code, subject) and drops findings duplicating an earlier
// (code, subject) pair.
void normalize_findings(std::vector<ProcessFinding>& findings);

}  // namespace nms
