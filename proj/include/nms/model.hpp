// Core domain entities of a norm/requirements model: normative propositions,
// actors, subject bindings, the goal/task graph, realization relations and
// the append-only argument log. Values are immutable after construction;
// mutation means building a new Model.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nms {

enum class Modality { duty, right };
enum class GoalKind { strategic, compliance };
enum class RefineMode { all_of, one_of };  // AND / OR
enum class ArgumentKind {
    hypothesis,        // auto-generated root claim of a realization
    support,           // argues for another argument
    revision_attack,   // argues a part of the solution must change
    rejection_attack,  // argues the solution's conclusion is wrong
    evidence           // phase-one consideration attached to a model element
};

struct NormativeProposition {
    std::string id;
    std::string subject_role;  // e.g. "Covered Entity"; never empty
    Modality modality = Modality::duty;
    std::string description;

    bool operator==(const NormativeProposition&) const = default;
};

struct Actor {
    std::string id;
    std::string name;

    bool operator==(const Actor&) const = default;
};

// Records the analyst's decision that an actor holds (or explicitly does not
// hold) a legal subject role. Negative bindings settle applicability without
// making the NP apply.
struct SubjectBinding {
    std::string actor;
    std::string role;
    bool negated = false;
    std::string justification;  // argument id

    bool operator==(const SubjectBinding&) const = default;
};

struct Refinement {
    RefineMode mode = RefineMode::all_of;
    std::vector<std::string> children;        // goal or task ids, nonempty
    std::optional<std::string> selected;      // one_of only; must be a child

    bool operator==(const Refinement&) const = default;
};

struct Goal {
    std::string id;
    std::string owner;  // actor id
    std::string description;
    GoalKind kind = GoalKind::strategic;
    std::optional<Refinement> refinement;

    bool operator==(const Goal&) const = default;
};

struct Task {
    std::string id;
    std::string description;

    bool operator==(const Task&) const = default;
};

// Claim that satisfying `goal` satisfies `np`. The hypothesis argument is the
// attackable stand-in for this claim in the argument log.
struct RealizationRelation {
    std::string goal;
    std::string np;
    std::string hypothesis;  // always hypothesis_id(goal, np)

    bool operator==(const RealizationRelation&) const = default;
};

// Analyst declaration that an NP affects a goal (step-two bookkeeping).
struct AffectsDeclaration {
    std::string np;
    std::string goal;

    bool operator==(const AffectsDeclaration&) const = default;
};

struct Argument {
    std::string id;
    std::string claim;
    ArgumentKind kind = ArgumentKind::support;
    std::optional<std::string> target;  // argument id or model element id

    bool operator==(const Argument&) const = default;
};

struct Model {
    std::vector<NormativeProposition> nps;
    std::vector<Actor> actors;
    std::vector<SubjectBinding> bindings;
    std::vector<Goal> goals;
    std::vector<Task> tasks;
    std::vector<RealizationRelation> realizations;
    std::vector<AffectsDeclaration> affects;
    std::vector<Argument> arguments;  // append-only ordered log

    const NormativeProposition* find_np(const std::string& id) const;
    const Actor* find_actor(const std::string& id) const;
    const Goal* find_goal(const std::string& id) const;
    const Task* find_task(const std::string& id) const;
    const Argument* find_argument(const std::string& id) const;

    // True for ids naming an actor, np, goal or task.
    bool is_model_element(const std::string& id) const;
};

// Canonical id and claim of the hypothesis argument generated for
// `realize goal -> np`.
std::string hypothesis_id(const std::string& goal, const std::string& np);
std::string hypothesis_claim(const std::string& goal, const std::string& np);

// Convenience builder for the realization relation plus its hypothesis
// argument (appended to the log).
void add_realization(Model& model, const std::string& goal, const std::string& np);

struct IntegrityViolation {
    std::string code;     // machine-readable, see below
    std::string element;  // offending element id
    std::string message;

    bool operator==(const IntegrityViolation&) const = default;
};

// Violation codes:
//   duplicate_id         id declared more than once (any category)
//   dangling_ref         reference to a nonexistent element
//   empty_subject_role   NP subject role is empty
//   duplicate_binding    two bindings for the same (actor, role)
//   empty_refinement     refinement with no children
//   bad_selection        `selected` on all_of, or not among children
//   refinement_cycle     goal participates in a refinement cycle
//   bad_realization      realizing goal is not a compliance goal
//   bad_hypothesis       hypothesis argument missing/mismatched/orphaned
//   bad_target           argument target missing or of the wrong category
//
// Pure and idempotent; returns an empty list iff the model is well formed.
std::vector<IntegrityViolation> validate_referential_integrity(const Model& model);

// Order-insensitive equality over all collections (the argument log compares
// as a set keyed by id; in-memory append order is presentational).
bool structurally_equal(const Model& a, const Model& b);

const char* to_string(Modality m);
const char* to_string(GoalKind k);
const char* to_string(RefineMode m);
const char* to_string(ArgumentKind k);

// Thrown by operations whose preconditions name a specific element.
class UnknownElementError : public std::runtime_error {
public:
    explicit UnknownElementError(const std::string& what) : std::runtime_error(what) {}
};

class NotAHypothesisError : public std::runtime_error {
public:
    explicit NotAHypothesisError(const std::string& what) : std::runtime_error(what) {}
};

class IntegrityError : public std::runtime_error {
public:
    IntegrityError(std::string what, std::vector<IntegrityViolation> violations)
        : std::runtime_error(std::move(what)), violations_(std::move(violations)) {}

    const std::vector<IntegrityViolation>& violations() const { return violations_; }

private:
    std::vector<IntegrityViolation> violations_;
};

}  // namespace nms
