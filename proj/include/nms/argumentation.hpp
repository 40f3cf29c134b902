// Dialectical trees over the argument log: tree construction with the
// argumentation-line guard, bottom-up marking, hypothesis justification and
// incremental revalidation after appends.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nms/model.hpp"

namespace nms {

enum class Mark { undefeated, defeated };
enum class Relation { root, attack, support };
enum class JustificationStatus { justified, defeated };

struct TreeNode {
    std::string argument;
    Relation relation_to_parent = Relation::root;
    std::optional<Mark> mark;       // set by mark_tree
    std::vector<TreeNode> children; // sorted by argument id

    bool operator==(const TreeNode&) const = default;
};

struct JustificationResult {
    std::string hypothesis;
    JustificationStatus status = JustificationStatus::defeated;
    TreeNode tree;  // marked

    bool operator==(const JustificationResult&) const = default;
};

// Adjacency of the debate: for each targeted id, who responds to it and how.
// Models produce at most one edge per argument (its single target); the graph
// form also admits multi-edges, which is where the path guard earns its keep.
struct ArgumentGraph {
    std::map<std::string, std::vector<std::pair<std::string, Relation>>> responders;

    static ArgumentGraph from_model(const Model& model);
};

// Expands the debate into a tree rooted at `root`. A node's children are the
// arguments responding to it, except ids already on the path from the root,
// which are skipped so every argumentation line stays repetition-free.
TreeNode build_tree(const ArgumentGraph& graph, const std::string& root);

// As above, over the model's log. Throws UnknownElementError if `root` is
// not an argument.
TreeNode build_tree(const Model& model, const std::string& root);

// Bottom-up marking: a node is undefeated iff every attack child is defeated
// (leaves trivially so). Support children never influence a mark.
TreeNode mark_tree(TreeNode tree);

// Builds and marks the tree for a compliance hypothesis; justified iff the
// root ends up undefeated. Throws NotAHypothesisError otherwise-kinded roots,
// UnknownElementError for unknown ids.
JustificationResult justify(const Model& model, const std::string& hypothesis);

// Status of every hypothesis in the model, keyed by hypothesis id.
std::map<std::string, JustificationStatus> justify_all(const Model& model);

struct RevalidateResult {
    Model model;  // input model plus the appended arguments
    // Hypotheses whose status changed: id -> (old, new).
    std::map<std::string, std::pair<JustificationStatus, JustificationStatus>> changed;
};

// Appends arguments to the log and re-justifies every hypothesis. Equivalent
// to justifying the extended model from scratch. Throws IntegrityError when
// the extension does not pass referential integrity.
RevalidateResult revalidate(const Model& model, const std::vector<Argument>& new_arguments);

const char* to_string(Mark m);
const char* to_string(Relation r);
const char* to_string(JustificationStatus s);

}  // namespace nms
