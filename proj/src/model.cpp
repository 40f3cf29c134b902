#include "nms/model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace nms {

namespace {

template <typename T>
const T* find_by_id(const std::vector<T>& items, const std::string& id) {
    for (const auto& item : items) {
        if (item.id == id) {
            return &item;
        }
    }
    return nullptr;
}

}  // namespace

const NormativeProposition* Model::find_np(const std::string& id) const {
    return find_by_id(nps, id);
}

const Actor* Model::find_actor(const std::string& id) const {
    return find_by_id(actors, id);
}

const Goal* Model::find_goal(const std::string& id) const {
    return find_by_id(goals, id);
}

const Task* Model::find_task(const std::string& id) const {
    return find_by_id(tasks, id);
}

const Argument* Model::find_argument(const std::string& id) const {
    return find_by_id(arguments, id);
}

bool Model::is_model_element(const std::string& id) const {
    return find_actor(id) || find_np(id) || find_goal(id) || find_task(id);
}

std::string hypothesis_id(const std::string& goal, const std::string& np) {
    return "H_" + goal + "_" + np;
}

std::string hypothesis_claim(const std::string& goal, const std::string& np) {
    return "satisfying " + goal + " satisfies " + np;
}

void add_realization(Model& model, const std::string& goal, const std::string& np) {
    Argument hyp;
    hyp.id = hypothesis_id(goal, np);
    hyp.claim = hypothesis_claim(goal, np);
    hyp.kind = ArgumentKind::hypothesis;
    model.arguments.push_back(std::move(hyp));
    model.realizations.push_back({goal, np, hypothesis_id(goal, np)});
}

namespace {

struct Checker {
    const Model& model;
    std::vector<IntegrityViolation> out;

    void add(std::string code, std::string element, std::string message) {
        out.push_back({std::move(code), std::move(element), std::move(message)});
    }

    void check_unique_ids() {
        std::unordered_set<std::string> seen;
        auto claim = [&](const std::string& id, const char* category) {
            if (!seen.insert(id).second) {
                add("duplicate_id", id, std::string(category) + " id '" + id + "' is already declared");
            }
        };
        for (const auto& a : model.actors) claim(a.id, "actor");
        for (const auto& n : model.nps) claim(n.id, "np");
        for (const auto& g : model.goals) claim(g.id, "goal");
        for (const auto& t : model.tasks) claim(t.id, "task");
        for (const auto& a : model.arguments) claim(a.id, "argument");
    }

    void check_nps() {
        for (const auto& np : model.nps) {
            if (np.subject_role.empty()) {
                add("empty_subject_role", np.id, "np '" + np.id + "' has an empty subject role");
            }
        }
    }

    void check_bindings() {
        std::set<std::pair<std::string, std::string>> pairs;
        for (const auto& b : model.bindings) {
            if (!model.find_actor(b.actor)) {
                add("dangling_ref", b.actor, "binding references unknown actor '" + b.actor + "'");
            }
            if (!model.find_argument(b.justification)) {
                add("dangling_ref", b.justification,
                    "binding of '" + b.actor + "' references unknown argument '" + b.justification + "'");
            }
            if (!pairs.insert({b.actor, b.role}).second) {
                add("duplicate_binding", b.actor,
                    "more than one binding for actor '" + b.actor + "' and role \"" + b.role + "\"");
            }
        }
    }

    void check_goals() {
        for (const auto& g : model.goals) {
            if (!model.find_actor(g.owner)) {
                add("dangling_ref", g.owner, "goal '" + g.id + "' has unknown owner '" + g.owner + "'");
            }
            if (!g.refinement) {
                continue;
            }
            const Refinement& r = *g.refinement;
            if (r.children.empty()) {
                add("empty_refinement", g.id, "goal '" + g.id + "' has a refinement with no children");
            }
            for (const auto& child : r.children) {
                if (!model.find_goal(child) && !model.find_task(child)) {
                    add("dangling_ref", child,
                        "goal '" + g.id + "' refines onto unknown element '" + child + "'");
                }
            }
            if (r.selected) {
                if (r.mode == RefineMode::all_of) {
                    add("bad_selection", g.id, "goal '" + g.id + "' selects a child in an AND refinement");
                } else if (std::find(r.children.begin(), r.children.end(), *r.selected) ==
                           r.children.end()) {
                    add("bad_selection", g.id,
                        "goal '" + g.id + "' selects '" + *r.selected + "' which is not a child");
                }
            }
        }
    }

    // Kahn's algorithm over goal-to-subgoal edges; leftovers sit on a cycle.
    void check_refinement_cycles() {
        std::unordered_map<std::string, int> indegree;
        std::unordered_map<std::string, std::vector<std::string>> edges;
        for (const auto& g : model.goals) {
            indegree.emplace(g.id, 0);
        }
        for (const auto& g : model.goals) {
            if (!g.refinement) continue;
            for (const auto& child : g.refinement->children) {
                if (model.find_goal(child)) {
                    edges[g.id].push_back(child);
                    ++indegree[child];
                }
            }
        }
        std::vector<std::string> queue;
        for (const auto& [id, deg] : indegree) {
            if (deg == 0) queue.push_back(id);
        }
        std::size_t visited = 0;
        while (!queue.empty()) {
            std::string id = queue.back();
            queue.pop_back();
            ++visited;
            for (const auto& child : edges[id]) {
                if (--indegree[child] == 0) queue.push_back(child);
            }
        }
        if (visited == indegree.size()) {
            return;
        }
        std::vector<std::string> cyclic;
        for (const auto& [id, deg] : indegree) {
            if (deg > 0) cyclic.push_back(id);
        }
        std::sort(cyclic.begin(), cyclic.end());
        for (const auto& id : cyclic) {
            add("refinement_cycle", id, "goal '" + id + "' participates in a refinement cycle");
        }
    }

    void check_realizations() {
        std::map<std::string, int> hypothesis_uses;
        for (const auto& r : model.realizations) {
            const Goal* goal = model.find_goal(r.goal);
            if (!goal) {
                add("dangling_ref", r.goal, "realization references unknown goal '" + r.goal + "'");
            } else if (goal->kind != GoalKind::compliance) {
                add("bad_realization", r.goal,
                    "goal '" + r.goal + "' realizes '" + r.np + "' but is not a compliance goal");
            }
            if (!model.find_np(r.np)) {
                add("dangling_ref", r.np, "realization references unknown np '" + r.np + "'");
            }
            const Argument* hyp = model.find_argument(r.hypothesis);
            if (!hyp) {
                add("dangling_ref", r.hypothesis,
                    "realization of '" + r.np + "' references unknown hypothesis '" + r.hypothesis + "'");
            } else if (hyp->kind != ArgumentKind::hypothesis ||
                       r.hypothesis != hypothesis_id(r.goal, r.np)) {
                add("bad_hypothesis", r.hypothesis,
                    "realization " + r.goal + " -> " + r.np + " must be justified by the generated " +
                        "hypothesis '" + hypothesis_id(r.goal, r.np) + "'");
            }
            ++hypothesis_uses[r.hypothesis];
        }
        for (const auto& [id, uses] : hypothesis_uses) {
            if (uses > 1) {
                add("bad_hypothesis", id,
                    "hypothesis '" + id + "' is shared by " + std::to_string(uses) + " realizations");
            }
        }
        for (const auto& a : model.arguments) {
            if (a.kind == ArgumentKind::hypothesis && hypothesis_uses.find(a.id) == hypothesis_uses.end()) {
                add("bad_hypothesis", a.id,
                    "hypothesis '" + a.id + "' is not tied to any realization relation");
            }
        }
    }

    void check_affects() {
        for (const auto& d : model.affects) {
            if (!model.find_np(d.np)) {
                add("dangling_ref", d.np, "affects declaration references unknown np '" + d.np + "'");
            }
            if (!model.find_goal(d.goal)) {
                add("dangling_ref", d.goal, "affects declaration references unknown goal '" + d.goal + "'");
            }
        }
    }

    void check_arguments() {
        for (const auto& a : model.arguments) {
            switch (a.kind) {
                case ArgumentKind::hypothesis:
                    if (a.target) {
                        add("bad_hypothesis", a.id, "hypothesis '" + a.id + "' must not have a target");
                    }
                    break;
                case ArgumentKind::support:
                    if (!a.target) {
                        add("bad_target", a.id, "support argument '" + a.id + "' has no target");
                    } else if (!model.find_argument(*a.target)) {
                        if (model.is_model_element(*a.target)) {
                            add("bad_target", a.id,
                                "support argument '" + a.id + "' must target an argument, not element '" +
                                    *a.target + "'");
                        } else {
                            add("dangling_ref", *a.target,
                                "argument '" + a.id + "' targets unknown id '" + *a.target + "'");
                        }
                    }
                    break;
                case ArgumentKind::evidence:
                    if (!a.target) {
                        add("bad_target", a.id, "evidence argument '" + a.id + "' has no target");
                    } else if (!model.is_model_element(*a.target)) {
                        if (model.find_argument(*a.target)) {
                            add("bad_target", a.id,
                                "evidence argument '" + a.id + "' must target a model element, not argument '" +
                                    *a.target + "'");
                        } else {
                            add("dangling_ref", *a.target,
                                "argument '" + a.id + "' targets unknown id '" + *a.target + "'");
                        }
                    }
                    break;
                case ArgumentKind::revision_attack:
                case ArgumentKind::rejection_attack:
                    if (!a.target) {
                        add("bad_target", a.id, "attack argument '" + a.id + "' has no target");
                    } else if (!model.find_argument(*a.target) && !model.is_model_element(*a.target)) {
                        add("dangling_ref", *a.target,
                            "argument '" + a.id + "' targets unknown id '" + *a.target + "'");
                    }
                    break;
            }
        }
    }
};

}  // namespace

std::vector<IntegrityViolation> validate_referential_integrity(const Model& model) {
    Checker checker{model, {}};
    checker.check_unique_ids();
    checker.check_nps();
    checker.check_bindings();
    checker.check_goals();
    checker.check_refinement_cycles();
    checker.check_realizations();
    checker.check_affects();
    checker.check_arguments();
    std::stable_sort(checker.out.begin(), checker.out.end(),
                     [](const IntegrityViolation& a, const IntegrityViolation& b) {
                         return std::tie(a.code, a.element, a.message) <
                                std::tie(b.code, b.element, b.message);
                     });
    return std::move(checker.out);
}

namespace {

template <typename T, typename Key>
std::vector<T> sorted_by(std::vector<T> items, Key key) {
    std::sort(items.begin(), items.end(),
              [&](const T& a, const T& b) { return key(a) < key(b); });
    return items;
}

}  // namespace

bool structurally_equal(const Model& a, const Model& b) {
    auto by_id = [](const auto& x) { return x.id; };
    auto binding_key = [](const SubjectBinding& x) { return std::tie(x.actor, x.role); };
    auto realization_key = [](const RealizationRelation& x) { return std::tie(x.goal, x.np); };
    auto affects_key = [](const AffectsDeclaration& x) { return std::tie(x.np, x.goal); };
    return sorted_by(a.nps, by_id) == sorted_by(b.nps, by_id) &&
           sorted_by(a.actors, by_id) == sorted_by(b.actors, by_id) &&
           sorted_by(a.bindings, binding_key) == sorted_by(b.bindings, binding_key) &&
           sorted_by(a.goals, by_id) == sorted_by(b.goals, by_id) &&
           sorted_by(a.tasks, by_id) == sorted_by(b.tasks, by_id) &&
           sorted_by(a.realizations, realization_key) == sorted_by(b.realizations, realization_key) &&
           sorted_by(a.affects, affects_key) == sorted_by(b.affects, affects_key) &&
           sorted_by(a.arguments, by_id) == sorted_by(b.arguments, by_id);
}

const char* to_string(Modality m) {
    return m == Modality::duty ? "duty" : "right";
}

const char* to_string(GoalKind k) {
    return k == GoalKind::compliance ? "compliance" : "strategic";
}

const char* to_string(RefineMode m) {
    return m == RefineMode::all_of ? "and" : "or";
}

const char* to_string(ArgumentKind k) {
    switch (k) {
        case ArgumentKind::hypothesis: return "hypothesis";
        case ArgumentKind::support: return "support";
        case ArgumentKind::revision_attack: return "revision_attack";
        case ArgumentKind::rejection_attack: return "rejection_attack";
        case ArgumentKind::evidence: return "evidence";
    }
    return "unknown";
}

}  // namespace nms
