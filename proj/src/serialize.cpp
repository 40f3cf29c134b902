#include "nms/serialize.hpp"

#include <algorithm>
#include <sstream>

namespace nms {

std::string quote_string(const std::string& text) {
    std::string out = "\"";
    for (char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out += c; break;
        }
    }
    out += '"';
    return out;
}

namespace {

void emit_actor(std::ostringstream& out, const Actor& a) {
    out << "actor " << a.id;
    if (!a.name.empty()) {
        out << " { name " << quote_string(a.name) << " }";
    }
    out << '\n';
}

void emit_np(std::ostringstream& out, const NormativeProposition& np) {
    out << "np " << np.id << " { subject " << quote_string(np.subject_role) << " modality "
        << to_string(np.modality);
    if (!np.description.empty()) {
        out << " desc " << quote_string(np.description);
    }
    out << " }\n";
}

void emit_binding(std::ostringstream& out, const SubjectBinding& b) {
    out << "binding " << b.actor << " is ";
    if (b.negated) {
        out << "not ";
    }
    out << quote_string(b.role) << " justified_by " << b.justification << '\n';
}

void emit_goal(std::ostringstream& out, const Goal& g) {
    out << "goal " << g.id << " owner " << g.owner;
    if (g.kind == GoalKind::compliance) {
        out << " compliance";
    }
    if (!g.description.empty() || g.refinement) {
        out << " {";
        if (!g.description.empty()) {
            out << " desc " << quote_string(g.description);
        }
        if (g.refinement) {
            const Refinement& r = *g.refinement;
            out << " refine " << to_string(r.mode) << " [";
            for (std::size_t i = 0; i < r.children.size(); ++i) {
                if (i) out << ", ";
                out << r.children[i];
            }
            out << "]";
            if (r.selected) {
                out << " select " << *r.selected;
            }
        }
        out << " }";
    }
    out << '\n';
}

void emit_task(std::ostringstream& out, const Task& t) {
    out << "task " << t.id;
    if (!t.description.empty()) {
        out << " { desc " << quote_string(t.description) << " }";
    }
    out << '\n';
}

const char* relation_keyword(ArgumentKind kind) {
    switch (kind) {
        case ArgumentKind::support:
        case ArgumentKind::evidence: return "supports";
        case ArgumentKind::revision_attack: return "revises";
        case ArgumentKind::rejection_attack: return "rejects";
        default: return "";
    }
}

void emit_argument(std::ostringstream& out, const Argument& a) {
    out << "argument " << a.id << ' ' << relation_keyword(a.kind) << ' ' << a.target.value_or("")
        << " { claim " << quote_string(a.claim) << " }\n";
}

}  // namespace

std::string serialize_model(const Model& model) {
    std::ostringstream out;

    auto actors = model.actors;
    std::sort(actors.begin(), actors.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    for (const auto& a : actors) emit_actor(out, a);

    auto nps = model.nps;
    std::sort(nps.begin(), nps.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    for (const auto& np : nps) emit_np(out, np);

    auto bindings = model.bindings;
    std::sort(bindings.begin(), bindings.end(), [](const auto& a, const auto& b) {
        return std::tie(a.actor, a.role) < std::tie(b.actor, b.role);
    });
    for (const auto& b : bindings) emit_binding(out, b);

    auto goals = model.goals;
    std::sort(goals.begin(), goals.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    for (const auto& g : goals) emit_goal(out, g);

    auto tasks = model.tasks;
    std::sort(tasks.begin(), tasks.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    for (const auto& t : tasks) emit_task(out, t);

    auto realizations = model.realizations;
    std::sort(realizations.begin(), realizations.end(), [](const auto& a, const auto& b) {
        return std::tie(a.goal, a.np) < std::tie(b.goal, b.np);
    });
    for (const auto& r : realizations) {
        out << "realize " << r.goal << " -> " << r.np << '\n';
    }

    auto affects = model.affects;
    std::sort(affects.begin(), affects.end(), [](const auto& a, const auto& b) {
        return std::tie(a.np, a.goal) < std::tie(b.np, b.goal);
    });
    affects.erase(std::unique(affects.begin(), affects.end()), affects.end());
    for (const auto& d : affects) {
        out << "affects " << d.np << ' ' << d.goal << '\n';
    }

    auto arguments = model.arguments;
    std::sort(arguments.begin(), arguments.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    for (const auto& a : arguments) {
        if (a.kind == ArgumentKind::hypothesis) {
            continue;  // regenerated from the realize statement
        }
        emit_argument(out, a);
    }

    return out.str();
}

}  // namespace nms
