// nms: argumentation-based compliance checking for norm/requirements models.
//
// Commands:
//   check    parse models, run all checks and justifications, report verdicts
//   explain  show one NP's verdict, realization chain and marked debate trees
//   fmt      rewrite model files into the canonical form

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nms/argumentation.hpp"
#include "nms/checks.hpp"
#include "nms/model.hpp"
#include "nms/parse.hpp"
#include "nms/report.hpp"
#include "nms/serialize.hpp"

namespace {

constexpr int kExitCompliant = 0;
constexpr int kExitNonCompliant = 1;
constexpr int kExitInputError = 2;
constexpr int kExitUsageError = 3;

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        return false;
    }
    out << content;
    return bool(out);
}

void print_diagnostics(const std::vector<nms::ParseDiagnostic>& diagnostics) {
    for (const auto& d : diagnostics) {
        std::cerr << nms::render_diagnostic(d) << '\n';
    }
}

// Reads and merges all inputs; nullopt (after printing diagnostics) on any
// parse or integrity error.
std::optional<nms::Model> load_model(const std::vector<std::string>& paths) {
    std::vector<std::pair<std::string, std::string>> sources;
    std::vector<nms::ParseDiagnostic> io_errors;
    for (const auto& path : paths) {
        if (auto text = read_file(path)) {
            sources.emplace_back(path, std::move(*text));
        } else {
            io_errors.push_back({nms::Severity::error, "P006", "cannot read file", {path, 1, 1, 0}});
        }
    }
    if (!io_errors.empty()) {
        print_diagnostics(io_errors);
        return std::nullopt;
    }
    nms::ParseResult result = nms::parse_sources(sources);
    if (!result.ok()) {
        print_diagnostics(result.diagnostics);
        return std::nullopt;
    }
    return std::move(result.model);
}

void print_findings(const std::vector<nms::ProcessFinding>& findings) {
    for (const auto& f : findings) {
        std::cerr << '[' << f.code << "] " << f.subject << ": " << f.message
                  << (f.blocking ? " (blocking)" : "") << '\n';
    }
}

int run_check(const std::vector<std::string>& paths, const std::string& report_path,
              const std::string& dot_path, bool quiet) {
    auto model = load_model(paths);
    if (!model) {
        return kExitInputError;
    }
    const nms::ComplianceReport report = nms::decide(*model);
    print_findings(report.findings);

    if (!report_path.empty() && !write_file(report_path, nms::to_json(report))) {
        std::cerr << "cannot write report to '" << report_path << "'\n";
        return kExitInputError;
    }
    if (!dot_path.empty() && !write_file(dot_path, nms::to_dot(report))) {
        std::cerr << "cannot write dot output to '" << dot_path << "'\n";
        return kExitInputError;
    }

    if (!quiet) {
        for (const auto& v : report.np_verdicts) {
            std::cout << "np " << v.np << ": " << nms::to_string(v.status);
            if (!v.applicable_to.empty()) {
                std::cout << " (applies to";
                for (const auto& actor : v.applicable_to) std::cout << ' ' << actor;
                std::cout << ')';
            }
            std::cout << '\n';
        }
        std::cout << "overall: " << nms::to_string(report.overall) << '\n';
    }
    return report.overall == nms::Overall::compliant ? kExitCompliant : kExitNonCompliant;
}

void render_tree(std::ostream& out, const nms::TreeNode& node, const nms::Model& model,
                 int indent) {
    out << std::string(indent, ' ');
    if (node.relation_to_parent == nms::Relation::attack) {
        out << "<- ";
    } else if (node.relation_to_parent == nms::Relation::support) {
        out << "<+ ";
    }
    out << node.argument << " [" << (node.mark ? nms::to_string(*node.mark) : "unmarked") << ']';
    if (const nms::Argument* arg = model.find_argument(node.argument)) {
        out << ' ' << nms::to_string(arg->kind) << ": " << nms::quote_string(arg->claim);
    }
    out << '\n';
    for (const auto& child : node.children) {
        render_tree(out, child, model, indent + 2);
    }
}

int run_explain(const std::vector<std::string>& paths, const std::string& np_id) {
    auto model = load_model(paths);
    if (!model) {
        return kExitInputError;
    }
    const nms::NormativeProposition* np = model->find_np(np_id);
    if (!np) {
        std::cerr << "unknown np '" << np_id << "'\n";
        return kExitUsageError;
    }

    const nms::ComplianceReport report = nms::decide(*model);
    const auto verdict = std::find_if(report.np_verdicts.begin(), report.np_verdicts.end(),
                                      [&](const nms::NpVerdict& v) { return v.np == np_id; });

    std::cout << "np " << np_id << ": " << nms::to_string(verdict->status) << '\n';
    std::cout << "  subject role: " << nms::quote_string(np->subject_role) << " ("
              << nms::to_string(np->modality) << ")\n";
    if (verdict->applicable_to.empty()) {
        std::cout << "  applicable to: (nobody)\n";
    } else {
        std::cout << "  applicable to:";
        for (const auto& actor : verdict->applicable_to) std::cout << ' ' << actor;
        std::cout << '\n';
    }
    for (const auto& r : model->realizations) {
        if (r.np != np_id) continue;
        const auto solution = report.specification.per_goal.find(r.goal);
        std::cout << "  realized by " << r.goal << "; sol(" << r.goal << ") = {";
        if (solution != report.specification.per_goal.end()) {
            bool first = true;
            for (const auto& task : solution->second.tasks) {
                if (!first) std::cout << ", ";
                std::cout << task;
                first = false;
            }
        }
        std::cout << "}\n";
        const auto hypothesis =
            std::find_if(verdict->hypotheses.begin(), verdict->hypotheses.end(),
                         [&](const nms::JustificationResult& h) { return h.hypothesis == r.hypothesis; });
        if (hypothesis != verdict->hypotheses.end()) {
            std::cout << "  hypothesis " << hypothesis->hypothesis << ": "
                      << nms::to_string(hypothesis->status) << '\n';
            render_tree(std::cout, hypothesis->tree, *model, 4);
        }
    }
    bool any_finding = false;
    for (const auto& f : report.findings) {
        if (f.subject != np_id) continue;
        if (!any_finding) {
            std::cout << "  findings:\n";
            any_finding = true;
        }
        std::cout << "    [" << f.code << "] " << f.message << (f.blocking ? " (blocking)" : "")
                  << '\n';
    }
    return report.overall == nms::Overall::compliant ? kExitCompliant : kExitNonCompliant;
}

int run_fmt(const std::vector<std::string>& paths, bool check_only) {
    int exit_code = kExitCompliant;
    for (const auto& path : paths) {
        auto text = read_file(path);
        if (!text) {
            std::cerr << path << ":1:1: error[P006]: cannot read file\n";
            exit_code = kExitInputError;
            continue;
        }
        nms::ParseResult result = nms::parse_fragment(*text, path);
        if (!result.ok()) {
            print_diagnostics(result.diagnostics);
            exit_code = kExitInputError;
            continue;
        }
        const std::string canonical = nms::serialize_model(*result.model);
        if (canonical == *text) {
            continue;
        }
        if (check_only) {
            std::cout << path << " needs formatting\n";
            if (exit_code == kExitCompliant) {
                exit_code = kExitNonCompliant;
            }
        } else if (!write_file(path, canonical)) {
            std::cerr << path << ":1:1: error[P006]: cannot write file\n";
            exit_code = kExitInputError;
        }
    }
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"argumentation-based compliance checker for .nms models"};
    app.require_subcommand(1);

    std::vector<std::string> paths;
    std::string report_path;
    std::string dot_path;
    std::string np_id;
    bool quiet = false;
    bool check_only = false;

    CLI::App* check = app.add_subcommand("check", "verify models and report the verdict");
    check->add_option("paths", paths, "model files (.nms)")->required()->expected(-1);
    check->add_option("--report", report_path, "write the JSON report to this path");
    check->add_option("--dot", dot_path, "write the dialectical trees as DOT to this path");
    check->add_flag("--quiet", quiet, "suppress standard output");

    CLI::App* explain = app.add_subcommand("explain", "explain the verdict for one np");
    explain->add_option("np", np_id, "np id to explain")->required();
    explain->add_option("paths", paths, "model files (.nms)")->required()->expected(-1);

    CLI::App* fmt = app.add_subcommand("fmt", "rewrite model files into canonical form");
    fmt->add_flag("--check", check_only, "exit 1 if any file is not canonical, write nothing");
    fmt->add_option("paths", paths, "model files (.nms)")->required()->expected(-1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsageError;
    }

    try {
        if (check->parsed()) {
            return run_check(paths, report_path, dot_path, quiet);
        }
        if (explain->parsed()) {
            return run_explain(paths, np_id);
        }
        return run_fmt(paths, check_only);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInputError;
    }
}
