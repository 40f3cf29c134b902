#include "nms/report.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "nms/serialize.hpp"

namespace nms {

namespace {

// Elements a blocking finding can pin on this NP: the NP itself, its
// realizing goals and everything those goals reach.
std::unordered_set<std::string> realization_chain(const Model& model,
                                                  const NormativeProposition& np) {
    std::unordered_set<std::string> chain{np.id};
    std::vector<std::string> stack;
    for (const auto& r : model.realizations) {
        if (r.np == np.id) stack.push_back(r.goal);
    }
    while (!stack.empty()) {
        std::string id = stack.back();
        stack.pop_back();
        if (!chain.insert(id).second) continue;
        const Goal* goal = model.find_goal(id);
        if (!goal || !goal->refinement) continue;
        for (const auto& child : goal->refinement->children) {
            stack.push_back(child);
        }
    }
    return chain;
}

}  // namespace

ComplianceReport decide(const Model& model) {
    ComplianceReport report;
    report.model_digest = model_digest(model);

    std::vector<ProcessFinding> findings;
    for (auto&& batch : {check_applicability(model), check_affected_goals(model),
                         check_realizations(model), check_refinements(model)}) {
        findings.insert(findings.end(), batch.begin(), batch.end());
    }
    report.specification = compute_specification(model, &findings);
    normalize_findings(findings);
    report.findings = std::move(findings);

    const ArgumentGraph graph = ArgumentGraph::from_model(model);

    auto nps = model.nps;
    std::sort(nps.begin(), nps.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    bool any_blocking = std::any_of(report.findings.begin(), report.findings.end(),
                                    [](const ProcessFinding& f) { return f.blocking; });
    bool all_applicable_compliant = true;

    for (const auto& np : nps) {
        NpVerdict verdict;
        verdict.np = np.id;
        verdict.applicable_to = applicable_actors(model, np);

        std::vector<std::string> hypotheses;
        for (const auto& r : model.realizations) {
            if (r.np == np.id) hypotheses.push_back(r.hypothesis);
        }
        std::sort(hypotheses.begin(), hypotheses.end());
        bool any_justified = false;
        for (const auto& id : hypotheses) {
            JustificationResult result;
            result.hypothesis = id;
            result.tree = mark_tree(build_tree(graph, id));
            result.status = result.tree.mark == Mark::undefeated ? JustificationStatus::justified
                                                                  : JustificationStatus::defeated;
            any_justified = any_justified || result.status == JustificationStatus::justified;
            verdict.hypotheses.push_back(std::move(result));
        }

        if (verdict.applicable_to.empty()) {
            verdict.status = VerdictStatus::not_applicable;
        } else {
            const auto chain = realization_chain(model, np);
            const bool blocked = std::any_of(
                report.findings.begin(), report.findings.end(),
                [&](const ProcessFinding& f) { return f.blocking && chain.count(f.subject); });
            verdict.status = any_justified && !blocked ? VerdictStatus::compliant
                                                       : VerdictStatus::non_compliant;
            all_applicable_compliant =
                all_applicable_compliant && verdict.status == VerdictStatus::compliant;
        }
        report.np_verdicts.push_back(std::move(verdict));
    }

    report.overall = all_applicable_compliant && !any_blocking ? Overall::compliant
                                                               : Overall::non_compliant;
    return report;
}

namespace {

nlohmann::json tree_to_json(const TreeNode& node) {
    nlohmann::json children = nlohmann::json::array();
    for (const auto& child : node.children) {
        children.push_back(tree_to_json(child));
    }
    return {{"argument", node.argument},
            {"relation", to_string(node.relation_to_parent)},
            {"mark", node.mark ? to_string(*node.mark) : "unmarked"},
            {"children", std::move(children)}};
}

}  // namespace

std::string to_json(const ComplianceReport& report) {
    nlohmann::json doc;
    doc["schema_version"] = "1";
    doc["model_digest"] = report.model_digest;
    doc["overall"] = to_string(report.overall);

    nlohmann::json findings = nlohmann::json::array();
    for (const auto& f : report.findings) {
        findings.push_back({{"code", f.code},
                            {"subject", f.subject},
                            {"message", f.message},
                            {"blocking", f.blocking}});
    }
    doc["findings"] = std::move(findings);

    nlohmann::json specification = nlohmann::json::object();
    for (const auto& [goal, solution] : report.specification.per_goal) {
        specification[goal] = solution.tasks;
    }
    doc["specification"] = std::move(specification);

    nlohmann::json verdicts = nlohmann::json::array();
    for (const auto& v : report.np_verdicts) {
        nlohmann::json hypotheses = nlohmann::json::array();
        for (const auto& h : v.hypotheses) {
            hypotheses.push_back({{"hypothesis", h.hypothesis},
                                  {"status", to_string(h.status)},
                                  {"tree", tree_to_json(h.tree)}});
        }
        verdicts.push_back({{"np", v.np},
                            {"status", to_string(v.status)},
                            {"applicable_to", v.applicable_to},
                            {"hypotheses", std::move(hypotheses)}});
    }
    doc["np_verdicts"] = std::move(verdicts);

    return doc.dump(2) + "\n";
}

namespace {

std::string dot_quote(const std::string& text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

void dot_node(std::ostringstream& out, const TreeNode& node, int& counter,
              const std::string& parent) {
    const std::string name = "n" + std::to_string(counter++);
    out << "  " << name << " [label=" << dot_quote(node.argument) << ", style="
        << (node.mark == Mark::defeated ? "dashed" : "solid") << "];\n";
    if (!parent.empty()) {
        out << "  " << name << " -> " << parent
            << (node.relation_to_parent == Relation::support ? " [style=dashed];" : " [style=solid];")
            << '\n';
    }
    for (const auto& child : node.children) {
        dot_node(out, child, counter, name);
    }
}

}  // namespace

std::string to_dot(const ComplianceReport& report) {
    std::ostringstream out;
    for (const auto& v : report.np_verdicts) {
        for (const auto& h : v.hypotheses) {
            out << "digraph " << dot_quote(h.hypothesis) << " {\n";
            int counter = 0;
            dot_node(out, h.tree, counter, "");
            out << "}\n";
        }
    }
    return out.str();
}

std::string model_digest(const Model& model) {
    const std::string canonical = serialize_model(model);
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : canonical) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    std::ostringstream out;
    out << "fnv1a64:" << std::hex;
    for (int shift = 60; shift >= 0; shift -= 4) {
        out << "0123456789abcdef"[(hash >> shift) & 0xF];
    }
    return out.str();
}

const char* to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::compliant: return "compliant";
        case VerdictStatus::non_compliant: return "non_compliant";
        case VerdictStatus::not_applicable: return "not_applicable";
    }
    return "unknown";
}

const char* to_string(Overall o) {
    return o == Overall::compliant ? "compliant" : "non_compliant";
}

}  // namespace nms
