#include "nms/argumentation.hpp"

#include <algorithm>
#include <unordered_set>

namespace nms {

ArgumentGraph ArgumentGraph::from_model(const Model& model) {
    ArgumentGraph graph;
    for (const auto& a : model.arguments) {
        if (!a.target) continue;
        switch (a.kind) {
            case ArgumentKind::support:
                graph.responders[*a.target].emplace_back(a.id, Relation::support);
                break;
            case ArgumentKind::revision_attack:
            case ArgumentKind::rejection_attack:
                graph.responders[*a.target].emplace_back(a.id, Relation::attack);
                break;
            default:
                break;  // hypotheses and evidence never enter a tree
        }
    }
    for (auto& [target, responders] : graph.responders) {
        std::sort(responders.begin(), responders.end());
    }
    return graph;
}

namespace {

TreeNode expand(const ArgumentGraph& graph, const std::string& argument, Relation relation,
                std::unordered_set<std::string>& path) {
    TreeNode node;
    node.argument = argument;
    node.relation_to_parent = relation;
    path.insert(argument);
    if (auto it = graph.responders.find(argument); it != graph.responders.end()) {
        for (const auto& [responder, rel] : it->second) {
            if (path.count(responder)) {
                continue;  // argumentation-line guard
            }
            node.children.push_back(expand(graph, responder, rel, path));
        }
    }
    path.erase(argument);
    return node;
}

}  // namespace

TreeNode build_tree(const ArgumentGraph& graph, const std::string& root) {
    std::unordered_set<std::string> path;
    return expand(graph, root, Relation::root, path);
}

TreeNode build_tree(const Model& model, const std::string& root) {
    if (!model.find_argument(root)) {
        throw UnknownElementError("unknown argument '" + root + "'");
    }
    return build_tree(ArgumentGraph::from_model(model), root);
}

namespace {

void mark_in_place(TreeNode& node) {
    bool all_attackers_defeated = true;
    for (auto& child : node.children) {
        mark_in_place(child);
        if (child.relation_to_parent == Relation::attack && child.mark != Mark::defeated) {
            all_attackers_defeated = false;
        }
    }
    node.mark = all_attackers_defeated ? Mark::undefeated : Mark::defeated;
}

}  // namespace

TreeNode mark_tree(TreeNode tree) {
    mark_in_place(tree);
    return tree;
}

JustificationResult justify(const Model& model, const std::string& hypothesis) {
    const Argument* argument = model.find_argument(hypothesis);
    if (!argument) {
        throw UnknownElementError("unknown argument '" + hypothesis + "'");
    }
    if (argument->kind != ArgumentKind::hypothesis) {
        throw NotAHypothesisError("argument '" + hypothesis + "' is not a compliance hypothesis");
    }
    JustificationResult result;
    result.hypothesis = hypothesis;
    result.tree = mark_tree(build_tree(model, hypothesis));
    result.status = result.tree.mark == Mark::undefeated ? JustificationStatus::justified
                                                         : JustificationStatus::defeated;
    return result;
}

std::map<std::string, JustificationStatus> justify_all(const Model& model) {
    std::map<std::string, JustificationStatus> statuses;
    const ArgumentGraph graph = ArgumentGraph::from_model(model);
    for (const auto& r : model.realizations) {
        TreeNode tree = mark_tree(build_tree(graph, r.hypothesis));
        statuses[r.hypothesis] = tree.mark == Mark::undefeated ? JustificationStatus::justified
                                                               : JustificationStatus::defeated;
    }
    return statuses;
}

RevalidateResult revalidate(const Model& model, const std::vector<Argument>& new_arguments) {
    Model extended = model;
    extended.arguments.insert(extended.arguments.end(), new_arguments.begin(), new_arguments.end());
    if (auto violations = validate_referential_integrity(extended); !violations.empty()) {
        throw IntegrityError("appended arguments violate model integrity", std::move(violations));
    }

    const auto before = justify_all(model);
    const auto after = justify_all(extended);

    RevalidateResult result;
    result.model = std::move(extended);
    for (const auto& [hypothesis, old_status] : before) {
        const auto new_status = after.at(hypothesis);
        if (new_status != old_status) {
            result.changed.emplace(hypothesis, std::make_pair(old_status, new_status));
        }
    }
    return result;
}

const char* to_string(Mark m) {
    return m == Mark::undefeated ? "undefeated" : "defeated";
}

const char* to_string(Relation r) {
    switch (r) {
        case Relation::root: return "root";
        case Relation::attack: return "attack";
        case Relation::support: return "support";
    }
    return "unknown";
}

const char* to_string(JustificationStatus s) {
    return s == JustificationStatus::justified ? "justified" : "defeated";
}

}  // namespace nms
