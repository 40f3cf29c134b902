#include "nms/checks.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace nms {

namespace {

ProcessFinding finding(const char* code, std::string subject, std::string message, bool blocking) {
    return {code, std::move(subject), std::move(message), blocking};
}

// Goal ids reachable from `start` through refinement children, including
// `start`. Tolerates cycles.
std::unordered_set<std::string> reachable_goals(const Model& model, const std::string& start) {
    std::unordered_set<std::string> seen;
    std::vector<std::string> stack{start};
    while (!stack.empty()) {
        std::string id = stack.back();
        stack.pop_back();
        if (!seen.insert(id).second) continue;
        const Goal* goal = model.find_goal(id);
        if (!goal || !goal->refinement) continue;
        for (const auto& child : goal->refinement->children) {
            if (model.find_goal(child)) stack.push_back(child);
        }
    }
    return seen;
}

}  // namespace

std::vector<std::string> applicable_actors(const Model& model, const NormativeProposition& np) {
    std::vector<std::string> actors;
    for (const auto& b : model.bindings) {
        if (!b.negated && b.role == np.subject_role) {
            actors.push_back(b.actor);
        }
    }
    std::sort(actors.begin(), actors.end());
    actors.erase(std::unique(actors.begin(), actors.end()), actors.end());
    return actors;
}

bool is_applicable(const Model& model, const NormativeProposition& np) {
    return !applicable_actors(model, np).empty();
}

std::vector<ProcessFinding> check_applicability(const Model& model) {
    std::vector<ProcessFinding> out;
    for (const auto& np : model.nps) {
        const bool decided = std::any_of(model.bindings.begin(), model.bindings.end(),
                                         [&](const SubjectBinding& b) { return b.role == np.subject_role; });
        if (!decided) {
            out.push_back(finding("W1", np.id,
                                  "np '" + np.id + "': no actor is bound (or denied) for subject role \"" +
                                      np.subject_role + "\"",
                                  true));
        }
    }
    normalize_findings(out);
    return out;
}

std::vector<ProcessFinding> check_affected_goals(const Model& model) {
    std::vector<ProcessFinding> out;
    for (const auto& np : model.nps) {
        if (!is_applicable(model, np)) continue;
        const bool has_affects = std::any_of(model.affects.begin(), model.affects.end(),
                                             [&](const AffectsDeclaration& d) { return d.np == np.id; });
        const bool has_realization =
            std::any_of(model.realizations.begin(), model.realizations.end(),
                        [&](const RealizationRelation& r) { return r.np == np.id; });
        if (!has_affects && !has_realization) {
            out.push_back(finding("W2", np.id,
                                  "np '" + np.id + "' is applicable but no affected goal or realization " +
                                      "is declared",
                                  false));
        }
    }
    normalize_findings(out);
    return out;
}

std::vector<ProcessFinding> check_realizations(const Model& model) {
    std::vector<ProcessFinding> out;
    for (const auto& np : model.nps) {
        if (!is_applicable(model, np)) continue;
        const bool realized = std::any_of(model.realizations.begin(), model.realizations.end(),
                                          [&](const RealizationRelation& r) { return r.np == np.id; });
        if (!realized) {
            out.push_back(finding(
                "W3", np.id, "np '" + np.id + "' is applicable but no compliance goal realizes it", true));
        }
    }
    for (const auto& r : model.realizations) {
        const Goal* goal = model.find_goal(r.goal);
        if (!goal || goal->kind != GoalKind::compliance) {
            out.push_back(finding("W3", r.goal,
                                  "goal '" + r.goal + "' realizes '" + r.np +
                                      "' but is not a compliance goal",
                                  true));
        }
    }
    normalize_findings(out);
    return out;
}

std::vector<ProcessFinding> check_refinements(const Model& model) {
    std::vector<ProcessFinding> out;

    std::unordered_set<std::string> under_compliance;
    for (const auto& g : model.goals) {
        if (g.kind != GoalKind::compliance) continue;
        for (const auto& id : reachable_goals(model, g.id)) {
            under_compliance.insert(id);
        }
    }
    for (const auto& g : model.goals) {
        if (!under_compliance.count(g.id) || !g.refinement) continue;
        const Refinement& r = *g.refinement;
        if (r.mode == RefineMode::one_of && !r.selected) {
            out.push_back(finding("W4", g.id,
                                  "goal '" + g.id + "' has an OR refinement without a selected alternative",
                                  true));
        }
    }

    // Cycles are an integrity violation too; reported here so direct callers
    // on unchecked models still see them.
    for (const auto& v : validate_referential_integrity(model)) {
        if (v.code == "refinement_cycle") {
            out.push_back(finding("W4", v.element, v.message, true));
        }
    }
    normalize_findings(out);
    return out;
}

SolutionSet compute_solution(const Model& model, const std::string& goal,
                             std::vector<ProcessFinding>* findings) {
    if (!model.find_goal(goal)) {
        throw UnknownElementError("unknown goal '" + goal + "'");
    }

    SolutionSet solution;
    solution.goal = goal;
    bool operationalized = true;
    std::unordered_set<std::string> visited;

    std::vector<std::string> stack{goal};
    while (!stack.empty()) {
        std::string id = stack.back();
        stack.pop_back();
        if (!visited.insert(id).second) continue;

        if (const Task* task = model.find_task(id)) {
            solution.tasks.insert(task->id);
            continue;
        }
        const Goal* g = model.find_goal(id);
        if (!g) {
            operationalized = false;  // dangling child; integrity reports it
            continue;
        }
        if (!g->refinement) {
            operationalized = false;
            if (findings) {
                findings->push_back(finding(
                    "W5", g->id, "goal '" + g->id + "' is not operationalized (no refinement)", true));
            }
            continue;
        }
        const Refinement& r = *g->refinement;
        if (r.mode == RefineMode::all_of) {
            for (const auto& child : r.children) stack.push_back(child);
        } else if (r.selected) {
            stack.push_back(*r.selected);
        } else {
            operationalized = false;  // unselected OR; W4 owns the finding
        }
    }

    if (!operationalized) {
        solution.tasks.clear();
    }
    return solution;
}

Specification compute_specification(const Model& model, std::vector<ProcessFinding>* findings) {
    Specification spec;
    for (const auto& r : model.realizations) {
        if (spec.per_goal.count(r.goal) || !model.find_goal(r.goal)) continue;
        spec.per_goal.emplace(r.goal, compute_solution(model, r.goal, findings));
    }
    if (findings) {
        normalize_findings(*findings);
    }
    return spec;
}

std::vector<ProcessFinding> check_operationalization(const Model& model) {
    std::vector<ProcessFinding> out;
    compute_specification(model, &out);
    return out;
}

std::vector<ProcessFinding> run_all_checks(const Model& model) {
    std::vector<ProcessFinding> out;
    for (auto&& batch : {check_applicability(model), check_affected_goals(model),
                         check_realizations(model), check_refinements(model),
                         check_operationalization(model)}) {
        out.insert(out.end(), batch.begin(), batch.end());
    }
    normalize_findings(out);
    return out;
}

void normalize_findings(std::vector<ProcessFinding>& findings) {
    std::stable_sort(findings.begin(), findings.end(),
                     [](const ProcessFinding& a, const ProcessFinding& b) {
                         return std::tie(a.code, a.subject) < std::tie(b.code, b.subject);
                     });
    findings.erase(std::unique(findings.begin(), findings.end(),
                               [](const ProcessFinding& a, const ProcessFinding& b) {
                                   return a.code == b.code && a.subject == b.subject;
                               }),
                   findings.end());
}

}  // namespace nms
