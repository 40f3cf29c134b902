// Independent oracles the implementation is checked against. Everything in
// here recomputes results from first principles and must not call into the
// code paths under test.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nms/argumentation.hpp"
#include "nms/model.hpp"

namespace nms::testing {

// Enumerates every undefeated/defeated assignment over the tree's nodes and
// keeps those satisfying the marking rule at every node (undefeated iff all
// attack children defeated). On trees the fixpoint is unique.
struct MarkingOracle {
    int satisfying_assignments = 0;
    std::vector<Mark> marks;  // preorder, for the (unique) satisfying assignment
};

MarkingOracle brute_force_marking(const TreeNode& tree);

// Preorder marks of an already marked tree, for comparison with the oracle.
std::vector<Mark> preorder_marks(const TreeNode& tree);

// Number of nodes (enumeration feasibility guard).
int tree_size(const TreeNode& tree);

// Post-hoc local-soundness checker: every node marked, and marked undefeated
// iff every attack child is marked defeated.
bool locally_sound(const TreeNode& tree);

// Walks every root-to-leaf path and verifies no argument id repeats.
bool paths_repetition_free(const TreeNode& tree);

// Naive recursive solution oracle: leaf tasks reached from `goal`, all
// children at AND nodes, only the selected child at OR nodes; empty if the
// traversal hits an unrefined goal, an unselected OR or a dangling child.
std::set<std::string> solution_oracle(const Model& model, const std::string& goal);

}  // namespace nms::testing
