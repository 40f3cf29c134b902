#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nms/parse.hpp"

using namespace nms;

namespace {

bool has_code(const ParseResult& result, const std::string& code) {
    return std::any_of(result.diagnostics.begin(), result.diagnostics.end(),
                       [&](const ParseDiagnostic& d) { return d.code == code; });
}

std::string read_fixture(const std::string& name) {
    std::ifstream in(std::filesystem::path(NMS_FIXTURE_DIR) / name, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_CASE("np statement carries subject and modality") {
    const auto result = parse_model(R"(np NP1 { subject "Covered Entity" modality duty })");
    REQUIRE(result.ok());
    REQUIRE(result.model->nps.size() == 1);
    CHECK(result.model->nps[0].id == "NP1");
    CHECK(result.model->nps[0].subject_role == "Covered Entity");
    CHECK(result.model->nps[0].modality == Modality::duty);
}

TEST_CASE("empty source parses to the empty model") {
    const auto result = parse_model("");
    REQUIRE(result.ok());
    CHECK(result.model->nps.empty());
    CHECK(result.model->actors.empty());
    CHECK(result.model->goals.empty());
    CHECK(result.model->tasks.empty());
    CHECK(result.model->arguments.empty());
}

TEST_CASE("dangling refinement child is a P003 at the reference") {
    const std::string source = "actor H\ngoal G1 owner H { refine and [G2] }\n";
    const auto result = parse_model(source, "m.nms");
    REQUIRE(!result.ok());
    REQUIRE(result.diagnostics.size() == 1);
    const auto& d = result.diagnostics[0];
    CHECK(d.code == "P003");
    CHECK(d.span.file == "m.nms");
    CHECK(d.span.line == 2);
    CHECK(d.span.column == 31);
    CHECK(d.span.length == 2);
}

TEST_CASE("duplicate ids are P002, also across files") {
    CHECK(has_code(parse_model("actor A\nactor A\n"), "P002"));
    const auto merged = parse_sources({{"a.nms", "actor A\n"}, {"b.nms", "task A\n"}});
    REQUIRE(!merged.ok());
    CHECK(has_code(merged, "P002"));
    CHECK(merged.diagnostics[0].span.file == "b.nms");
}

TEST_CASE("malformed refinements are P004") {
    const std::string base = "actor H\ntask T1\ntask T2\n";
    CHECK(has_code(parse_model(base + "goal G owner H { refine or [T1, T2] select T9 }"), "P004"));
    CHECK(has_code(parse_model(base + "goal G owner H { refine and [T1] select T1 }"), "P004"));
    CHECK(has_code(parse_model(base + "goal G owner H { refine and [] }"), "P004"));
}

TEST_CASE("refinement cycles are P004") {
    const auto result = parse_model(
        "actor H\n"
        "goal G1 owner H { refine and [G2] }\n"
        "goal G2 owner H { refine and [G1] }\n");
    REQUIRE(!result.ok());
    CHECK(has_code(result, "P004"));
}

TEST_CASE("byte order mark is rejected") {
    const auto result = parse_model("\xEF\xBB\xBF" "actor A\n");
    REQUIRE(!result.ok());
    CHECK(result.diagnostics[0].code == "P001");
    CHECK(result.diagnostics[0].span.line == 1);
    CHECK(result.diagnostics[0].span.column == 1);
}

TEST_CASE("invalid UTF-8 is rejected") {
    std::string source = "actor A { name \"";
    source += static_cast<char>(0xFF);
    source += "\" }\n";
    const auto result = parse_model(source);
    REQUIRE(!result.ok());
    CHECK(result.diagnostics[0].code == "P001");
}

TEST_CASE("binder reports duplicates and dangling refs together") {
    const auto result = parse_model(read_fixture("errors/err_multi.nms"), "err_multi.nms");
    REQUIRE(!result.ok());
    CHECK(result.diagnostics.size() >= 4);
    CHECK(has_code(result, "P002"));  // duplicate NP1
    CHECK(has_code(result, "P003"));  // unknown owner and binding refs
}

TEST_CASE("parser recovers at statement boundaries") {
    const auto result = parse_model(read_fixture("errors/err_syntax_multi.nms"));
    REQUIRE(!result.ok());
    int p001 = 0;
    for (const auto& d : result.diagnostics) {
        if (d.code == "P001") ++p001;
    }
    CHECK(p001 >= 4);
}

TEST_CASE("syntax errors suppress cascading reference errors") {
    // T1's declaration fails to parse; the refinement must not report a
    // bogus dangling reference on top.
    const auto result = parse_model(
        "actor H\n"
        "task T1 { desc }\n"
        "goal G1 owner H { refine and [T1] }\n");
    REQUIRE(!result.ok());
    CHECK(has_code(result, "P001"));
    CHECK(!has_code(result, "P003"));
}

TEST_CASE("keywords cannot be identifiers") {
    const auto result = parse_model("actor goal\n");
    REQUIRE(!result.ok());
    CHECK(result.diagnostics[0].code == "P001");
}

TEST_CASE("negative bindings parse") {
    const auto result = parse_model(read_fixture("07_binding_negative.nms"));
    REQUIRE(result.ok());
    REQUIRE(result.model->bindings.size() == 1);
    CHECK(result.model->bindings[0].negated);
    CHECK(result.model->bindings[0].role == "Covered Entity");
}

TEST_CASE("comments and loose whitespace are insignificant") {
    const auto result = parse_model(read_fixture("21_comments.nms"));
    REQUIRE(result.ok());
    CHECK(result.model->actors.size() == 1);
    CHECK(result.model->nps.size() == 1);
    CHECK(result.model->bindings.size() == 1);
}

TEST_CASE("string escapes round-trip through the lexer") {
    const auto result =
        parse_model(R"(task T1 { desc "line\nbreak \"quote\" back\\slash tab\t" })");
    REQUIRE(result.ok());
    CHECK(result.model->tasks[0].description == "line\nbreak \"quote\" back\\slash tab\t");
}

TEST_CASE("unterminated strings and unknown escapes are P001") {
    CHECK(has_code(parse_model("task T1 { desc \"open\n }"), "P001"));
    CHECK(has_code(parse_model(R"(task T1 { desc "bad \q escape" })"), "P001"));
}

TEST_CASE("realize generates the hypothesis argument") {
    const auto result = parse_model(read_fixture("15_realize_basic.nms"));
    REQUIRE(result.ok());
    const Model& model = *result.model;
    REQUIRE(model.realizations.size() == 1);
    CHECK(model.realizations[0].hypothesis == "H_G1_NP1");
    const Argument* hyp = model.find_argument("H_G1_NP1");
    REQUIRE(hyp != nullptr);
    CHECK(hyp->kind == ArgumentKind::hypothesis);
    CHECK(!hyp->target.has_value());
}

TEST_CASE("duplicate realize collides on the generated hypothesis") {
    const std::string source = read_fixture("15_realize_basic.nms") + "realize G1 -> NP1\n";
    const auto result = parse_model(source);
    REQUIRE(!result.ok());
    CHECK(has_code(result, "P002"));
}

TEST_CASE("supports keyword splits into support and evidence by target") {
    const auto result = parse_model(read_fixture("17_argument_support.nms"));
    REQUIRE(result.ok());
    const Argument* evidence = result.model->find_argument("E_op");
    const Argument* support = result.model->find_argument("S1");
    REQUIRE(evidence != nullptr);
    REQUIRE(support != nullptr);
    CHECK(evidence->kind == ArgumentKind::evidence);  // targets the actor
    CHECK(support->kind == ArgumentKind::support);    // targets the hypothesis
}

TEST_CASE("realizing from a strategic goal is a P005") {
    const auto result = parse_model(read_fixture("errors/err_strategic_realize.nms"));
    REQUIRE(!result.ok());
    CHECK(has_code(result, "P005"));
}

TEST_CASE("empty subject role is a P005") {
    CHECK(has_code(parse_model("np NP1 { subject \"\" modality duty }"), "P005"));
}

TEST_CASE("forward and cross-file references resolve") {
    const auto result = parse_sources({
        {"goals.nms", "goal G1 owner H { refine and [T1] }\n"},
        {"rest.nms", "actor H\ntask T1\n"},
    });
    REQUIRE(result.ok());
    CHECK(result.model->goals.size() == 1);
}

TEST_CASE("diagnostic spans stay within the source bounds") {
    const std::vector<std::string> sources = {
        "actor\n",
        "np NP1 { subject \"x\" modality maybe }",
        "goal G1 owner\n\n  }",
        "argument A1 supports B1 { claim \"x\" }",
        "realize G1 ->",
        "????",
        read_fixture("errors/err_multi.nms"),
    };
    for (const auto& source : sources) {
        const auto result = parse_model(source, "bounds.nms");
        REQUIRE(!result.ok());
        const int line_count = 1 + static_cast<int>(std::count(source.begin(), source.end(), '\n'));
        for (const auto& d : result.diagnostics) {
            CHECK(d.span.line >= 1);
            CHECK(d.span.line <= line_count + 1);  // end-of-input sits one past the last line
            CHECK(d.span.column >= 1);
            CHECK(d.span.length >= 0);
        }
    }
}

TEST_CASE("every parsed model passes integrity") {
    for (const auto& entry : std::filesystem::directory_iterator(NMS_FIXTURE_DIR)) {
        if (!entry.is_regular_file()) continue;
        const auto result =
            parse_model(read_fixture(entry.path().filename().string()), entry.path().string());
        REQUIRE_MESSAGE(result.ok(), entry.path().string());
        CHECK(validate_referential_integrity(*result.model).empty());
    }
}
