#include "nms/parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace nms {

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class TokenKind {
    word,     // identifier or keyword
    string,   // quoted literal, value unescaped
    lbrace,
    rbrace,
    lbracket,
    rbracket,
    comma,
    arrow,
    end,
    error
};

struct Token {
    TokenKind kind = TokenKind::end;
    std::string text;  // word text or unescaped string value
    SourceSpan span;
};

const std::unordered_set<std::string>& keywords() {
    static const std::unordered_set<std::string> kw = {
        "np",      "actor",    "binding",  "goal",       "task",   "realize",
        "affects", "argument", "subject",  "modality",   "duty",   "right",
        "desc",    "name",     "is",       "not",        "justified_by",
        "owner",   "compliance", "refine", "and",        "or",     "select",
        "supports", "revises", "rejects",  "claim"};
    return kw;
}

bool is_statement_keyword(const std::string& word) {
    static const std::unordered_set<std::string> heads = {
        "np", "actor", "binding", "goal", "task", "realize", "affects", "argument"};
    return heads.count(word) > 0;
}

bool valid_utf8(std::string_view text, std::size_t& bad_offset) {
    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        std::size_t extra;
        if (c < 0x80) extra = 0;
        else if ((c >> 5) == 0x6) extra = 1;
        else if ((c >> 4) == 0xE) extra = 2;
        else if ((c >> 3) == 0x1E) extra = 3;
        else { bad_offset = i; return false; }
        if (i + extra >= text.size() && extra > 0) { bad_offset = i; return false; }
        for (std::size_t k = 1; k <= extra; ++k) {
            if ((static_cast<unsigned char>(text[i + k]) >> 6) != 0x2) {
                bad_offset = i;
                return false;
            }
        }
        i += extra + 1;
    }
    return true;
}

class Lexer {
public:
    Lexer(std::string_view source, std::string file)
        : source_(source), file_(std::move(file)) {}

    Token next() {
        skip_trivia();
        if (pos_ >= source_.size()) {
            return make(TokenKind::end, pos_, pos_);
        }
        const std::size_t start = pos_;
        const char c = source_[pos_];
        if (c == '{') { ++pos_; return make(TokenKind::lbrace, start, pos_); }
        if (c == '}') { ++pos_; return make(TokenKind::rbrace, start, pos_); }
        if (c == '[') { ++pos_; return make(TokenKind::lbracket, start, pos_); }
        if (c == ']') { ++pos_; return make(TokenKind::rbracket, start, pos_); }
        if (c == ',') { ++pos_; return make(TokenKind::comma, start, pos_); }
        if (c == '-' && pos_ + 1 < source_.size() && source_[pos_ + 1] == '>') {
            pos_ += 2;
            return make(TokenKind::arrow, start, pos_);
        }
        if (c == '"') {
            return lex_string(start);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < source_.size() &&
                   (std::isalnum(static_cast<unsigned char>(source_[pos_])) || source_[pos_] == '_')) {
                ++pos_;
            }
            Token t = make(TokenKind::word, start, pos_);
            t.text = std::string(source_.substr(start, pos_ - start));
            return t;
        }
        ++pos_;
        Token t = make(TokenKind::error, start, pos_);
        t.text = "unexpected character '" + std::string(1, c) + "'";
        return t;
    }

private:
    void skip_trivia() {
        while (pos_ < source_.size()) {
            const char c = source_[pos_];
            if (c == '\n') {
                ++pos_;
                ++line_;
                line_start_ = pos_;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++pos_;
            } else if (c == '/' && pos_ + 1 < source_.size() && source_[pos_ + 1] == '/') {
                while (pos_ < source_.size() && source_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    Token lex_string(std::size_t start) {
        ++pos_;  // opening quote
        std::string value;
        while (pos_ < source_.size()) {
            const char c = source_[pos_];
            if (c == '"') {
                ++pos_;
                Token t = make(TokenKind::string, start, pos_);
                t.text = std::move(value);
                return t;
            }
            if (c == '\n') {
                break;  // strings do not span lines
            }
            if (c == '\\') {
                if (pos_ + 1 >= source_.size()) break;
                const char esc = source_[pos_ + 1];
                switch (esc) {
                    case '"': value += '"'; break;
                    case '\\': value += '\\'; break;
                    case 'n': value += '\n'; break;
                    case 't': value += '\t'; break;
                    case 'r': value += '\r'; break;
                    default: {
                        pos_ += 2;
                        Token t = make(TokenKind::error, start, pos_);
                        t.text = std::string("unknown escape '\\") + esc + "' in string";
                        return t;
                    }
                }
                pos_ += 2;
            } else {
                value += c;
                ++pos_;
            }
        }
        Token t = make(TokenKind::error, start, pos_);
        t.text = "unterminated string";
        return t;
    }

    Token make(TokenKind kind, std::size_t start, std::size_t end) {
        Token t;
        t.kind = kind;
        t.span.file = file_;
        t.span.line = line_;
        t.span.column = static_cast<int>(start - line_start_) + 1;
        t.span.length = static_cast<int>(end - start);
        return t;
    }

    std::string_view source_;
    std::string file_;
    std::size_t pos_ = 0;
    std::size_t line_start_ = 0;
    int line_ = 1;
};

// ---------------------------------------------------------------------------
// Statement AST (references keep their spans for precise diagnostics)

struct Ref {
    std::string id;
    SourceSpan span;
};

struct NpStmt {
    Ref id;
    std::string subject;
    SourceSpan subject_span;
    Modality modality = Modality::duty;
    std::string desc;
};

struct ActorStmt {
    Ref id;
    std::string name;
};

struct BindingStmt {
    Ref actor;
    bool negated = false;
    std::string role;
    SourceSpan role_span;
    Ref justification;
};

struct RefineStmt {
    RefineMode mode = RefineMode::all_of;
    std::vector<Ref> children;
    std::optional<Ref> selected;
    SourceSpan span;
};

struct GoalStmt {
    Ref id;
    Ref owner;
    bool compliance = false;
    std::string desc;
    std::optional<RefineStmt> refine;
};

struct TaskStmt {
    Ref id;
    std::string desc;
};

struct RealizeStmt {
    Ref goal;
    Ref np;
    SourceSpan span;
};

struct AffectsStmt {
    Ref np;
    Ref goal;
};

struct ArgumentStmt {
    Ref id;
    std::string relation;  // supports | revises | rejects
    Ref target;
    std::string claim;
};

struct Ast {
    std::vector<NpStmt> nps;
    std::vector<ActorStmt> actors;
    std::vector<BindingStmt> bindings;
    std::vector<GoalStmt> goals;
    std::vector<TaskStmt> tasks;
    std::vector<RealizeStmt> realizations;
    std::vector<AffectsStmt> affects;
    std::vector<ArgumentStmt> arguments;
    // Log order of argument-producing statements: (is_realize, index).
    std::vector<std::pair<bool, std::size_t>> log_order;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
public:
    Parser(std::string_view source, const std::string& file,
           std::vector<ParseDiagnostic>& diagnostics, Ast& ast)
        : lexer_(source, file), file_(file), diagnostics_(diagnostics), ast_(ast) {
        current_ = lexer_.next();
    }

    void run() {
        while (current_.kind != TokenKind::end) {
            if (current_.kind != TokenKind::word || !is_statement_keyword(current_.text)) {
                error_here("P001", describe_current() + " where a statement was expected");
                recover();
                continue;
            }
            const std::string head = current_.text;
            if (!parse_statement(head)) {
                recover();
            }
        }
    }

private:
    bool parse_statement(const std::string& head) {
        if (head == "np") return parse_np();
        if (head == "actor") return parse_actor();
        if (head == "binding") return parse_binding();
        if (head == "goal") return parse_goal();
        if (head == "task") return parse_task();
        if (head == "realize") return parse_realize();
        if (head == "affects") return parse_affects();
        return parse_argument();
    }

    bool parse_np() {
        advance();
        NpStmt stmt;
        if (!expect_id(stmt.id)) return false;
        if (!expect(TokenKind::lbrace, "'{'")) return false;
        if (!expect_keyword("subject")) return false;
        if (!expect_string(stmt.subject, &stmt.subject_span)) return false;
        if (!expect_keyword("modality")) return false;
        if (current_.kind == TokenKind::word && (current_.text == "duty" || current_.text == "right")) {
            stmt.modality = current_.text == "duty" ? Modality::duty : Modality::right;
            advance();
        } else {
            error_here("P001", describe_current() + " where 'duty' or 'right' was expected");
            return false;
        }
        if (at_keyword("desc")) {
            advance();
            if (!expect_string(stmt.desc)) return false;
        }
        if (!expect(TokenKind::rbrace, "'}'")) return false;
        ast_.nps.push_back(std::move(stmt));
        return true;
    }

    bool parse_actor() {
        advance();
        ActorStmt stmt;
        if (!expect_id(stmt.id)) return false;
        if (current_.kind == TokenKind::lbrace) {
            advance();
            if (!expect_keyword("name")) return false;
            if (!expect_string(stmt.name)) return false;
            if (!expect(TokenKind::rbrace, "'}'")) return false;
        }
        ast_.actors.push_back(std::move(stmt));
        return true;
    }

    bool parse_binding() {
        advance();
        BindingStmt stmt;
        if (!expect_id(stmt.actor)) return false;
        if (!expect_keyword("is")) return false;
        if (at_keyword("not")) {
            stmt.negated = true;
            advance();
        }
        if (!expect_string(stmt.role, &stmt.role_span)) return false;
        if (!expect_keyword("justified_by")) return false;
        if (!expect_id(stmt.justification)) return false;
        ast_.bindings.push_back(std::move(stmt));
        return true;
    }

    bool parse_goal() {
        advance();
        GoalStmt stmt;
        if (!expect_id(stmt.id)) return false;
        if (!expect_keyword("owner")) return false;
        if (!expect_id(stmt.owner)) return false;
        if (at_keyword("compliance")) {
            stmt.compliance = true;
            advance();
        }
        if (current_.kind == TokenKind::lbrace) {
            advance();
            if (at_keyword("desc")) {
                advance();
                if (!expect_string(stmt.desc)) return false;
            }
            if (at_keyword("refine")) {
                RefineStmt refine;
                if (!parse_refine(refine)) return false;
                stmt.refine = std::move(refine);
            }
            if (!expect(TokenKind::rbrace, "'}'")) return false;
        }
        ast_.goals.push_back(std::move(stmt));
        return true;
    }

    bool parse_refine(RefineStmt& refine) {
        refine.span = current_.span;
        advance();  // refine
        if (at_keyword("and")) {
            refine.mode = RefineMode::all_of;
        } else if (at_keyword("or")) {
            refine.mode = RefineMode::one_of;
        } else {
            error_here("P001", describe_current() + " where 'and' or 'or' was expected");
            return false;
        }
        advance();
        if (!expect(TokenKind::lbracket, "'['")) return false;
        if (current_.kind == TokenKind::rbracket) {
            error_here("P004", "refinement needs at least one child");
            return false;
        }
        while (true) {
            Ref child;
            if (!expect_id(child)) return false;
            refine.children.push_back(std::move(child));
            if (current_.kind == TokenKind::comma) {
                advance();
                continue;
            }
            break;
        }
        if (!expect(TokenKind::rbracket, "']'")) return false;
        if (at_keyword("select")) {
            advance();
            Ref selected;
            if (!expect_id(selected)) return false;
            refine.selected = std::move(selected);
        }
        return true;
    }

    bool parse_task() {
        advance();
        TaskStmt stmt;
        if (!expect_id(stmt.id)) return false;
        if (current_.kind == TokenKind::lbrace) {
            advance();
            if (!expect_keyword("desc")) return false;
            if (!expect_string(stmt.desc)) return false;
            if (!expect(TokenKind::rbrace, "'}'")) return false;
        }
        ast_.tasks.push_back(std::move(stmt));
        return true;
    }

    bool parse_realize() {
        RealizeStmt stmt;
        stmt.span = current_.span;
        advance();
        if (!expect_id(stmt.goal)) return false;
        if (!expect(TokenKind::arrow, "'->'")) return false;
        if (!expect_id(stmt.np)) return false;
        ast_.realizations.push_back(std::move(stmt));
        ast_.log_order.emplace_back(true, ast_.realizations.size() - 1);
        return true;
    }

    bool parse_affects() {
        advance();
        AffectsStmt stmt;
        if (!expect_id(stmt.np)) return false;
        if (!expect_id(stmt.goal)) return false;
        ast_.affects.push_back(std::move(stmt));
        return true;
    }

    bool parse_argument() {
        advance();
        ArgumentStmt stmt;
        if (!expect_id(stmt.id)) return false;
        if (at_keyword("supports") || at_keyword("revises") || at_keyword("rejects")) {
            stmt.relation = current_.text;
            advance();
        } else {
            error_here("P001",
                       describe_current() + " where 'supports', 'revises' or 'rejects' was expected");
            return false;
        }
        if (!expect_id(stmt.target)) return false;
        if (!expect(TokenKind::lbrace, "'{'")) return false;
        if (!expect_keyword("claim")) return false;
        if (!expect_string(stmt.claim)) return false;
        if (!expect(TokenKind::rbrace, "'}'")) return false;
        ast_.arguments.push_back(std::move(stmt));
        ast_.log_order.emplace_back(false, ast_.arguments.size() - 1);
        return true;
    }

    // --- token plumbing ---

    void advance() { current_ = lexer_.next(); }

    bool at_keyword(const char* word) const {
        return current_.kind == TokenKind::word && current_.text == word;
    }

    bool expect(TokenKind kind, const char* what) {
        if (current_.kind == kind) {
            advance();
            return true;
        }
        error_here("P001", describe_current() + " where " + what + " was expected");
        return false;
    }

    bool expect_keyword(const char* word) {
        if (at_keyword(word)) {
            advance();
            return true;
        }
        error_here("P001", describe_current() + " where '" + word + "' was expected");
        return false;
    }

    bool expect_id(Ref& out) {
        if (current_.kind == TokenKind::word) {
            if (keywords().count(current_.text)) {
                error_here("P001", "keyword '" + current_.text + "' cannot be used as an identifier");
                return false;
            }
            out.id = current_.text;
            out.span = current_.span;
            advance();
            return true;
        }
        error_here("P001", describe_current() + " where an identifier was expected");
        return false;
    }

    bool expect_string(std::string& out, SourceSpan* span = nullptr) {
        if (current_.kind == TokenKind::string) {
            out = current_.text;
            if (span) *span = current_.span;
            advance();
            return true;
        }
        error_here("P001", describe_current() + " where a string was expected");
        return false;
    }

    std::string describe_current() const {
        switch (current_.kind) {
            case TokenKind::word: return "found '" + current_.text + "'";
            case TokenKind::string: return "found a string";
            case TokenKind::lbrace: return "found '{'";
            case TokenKind::rbrace: return "found '}'";
            case TokenKind::lbracket: return "found '['";
            case TokenKind::rbracket: return "found ']'";
            case TokenKind::comma: return "found ','";
            case TokenKind::arrow: return "found '->'";
            case TokenKind::end: return "found end of input";
            case TokenKind::error: return current_.text;
        }
        return "found unknown token";
    }

    void error_here(const char* code, const std::string& message) {
        diagnostics_.push_back({Severity::error, code, message, current_.span});
        if (current_.kind == TokenKind::error) {
            advance();
        }
    }

    // Skip to the next statement head at brace depth zero.
    void recover() {
        int depth = 0;
        while (current_.kind != TokenKind::end) {
            if (current_.kind == TokenKind::lbrace || current_.kind == TokenKind::lbracket) {
                ++depth;
            } else if (current_.kind == TokenKind::rbrace || current_.kind == TokenKind::rbracket) {
                depth = std::max(0, depth - 1);
            } else if (depth == 0 && current_.kind == TokenKind::word &&
                       is_statement_keyword(current_.text)) {
                return;
            }
            advance();
        }
    }

    Lexer lexer_;
    std::string file_;
    std::vector<ParseDiagnostic>& diagnostics_;
    Ast& ast_;
    Token current_;
};

// ---------------------------------------------------------------------------
// Binder: AST -> Model with duplicate and (optionally) reference checks.

class Binder {
public:
    Binder(const Ast& ast, std::vector<ParseDiagnostic>& diagnostics, bool resolve_references)
        : ast_(ast), diagnostics_(diagnostics), resolve_(resolve_references) {}

    Model bind() {
        declare_all();
        Model model;
        for (const auto& s : ast_.actors) {
            model.actors.push_back({s.id.id, s.name});
        }
        for (const auto& s : ast_.nps) {
            if (s.subject.empty()) {
                error("P005", "np '" + s.id.id + "' has an empty subject role", s.subject_span);
            }
            model.nps.push_back({s.id.id, s.subject, s.modality, s.desc});
        }
        bind_bindings(model);
        bind_goals(model);
        for (const auto& s : ast_.tasks) {
            model.tasks.push_back({s.id.id, s.desc});
        }
        bind_affects(model);
        bind_log(model);
        if (resolve_) {
            check_refinement_cycles(model);
        }
        return model;
    }

private:
    enum class Category { actor, np, goal, task, argument };

    struct Declaration {
        Category category;
        SourceSpan span;
    };

    void declare(const Ref& ref, Category category) {
        auto [it, inserted] = declarations_.try_emplace(ref.id, Declaration{category, ref.span});
        if (!inserted) {
            error("P002", "id '" + ref.id + "' is already declared", ref.span);
        }
    }

    void declare_all() {
        for (const auto& s : ast_.actors) declare(s.id, Category::actor);
        for (const auto& s : ast_.nps) declare(s.id, Category::np);
        for (const auto& s : ast_.goals) declare(s.id, Category::goal);
        for (const auto& s : ast_.tasks) declare(s.id, Category::task);
        for (const auto& s : ast_.arguments) declare(s.id, Category::argument);
        for (const auto& s : ast_.realizations) {
            Ref hyp{hypothesis_id(s.goal.id, s.np.id), s.span};
            auto [it, inserted] =
                declarations_.try_emplace(hyp.id, Declaration{Category::argument, hyp.span});
            if (!inserted) {
                error("P002",
                      "realization " + s.goal.id + " -> " + s.np.id + " generates hypothesis '" +
                          hyp.id + "' which is already declared",
                      s.span);
            }
        }
    }

    const Declaration* lookup(const Ref& ref, std::initializer_list<Category> wanted,
                              const char* role) {
        if (!resolve_) {
            return nullptr;
        }
        auto it = declarations_.find(ref.id);
        if (it == declarations_.end()) {
            error("P003", std::string("unknown ") + role + " '" + ref.id + "'", ref.span);
            return nullptr;
        }
        if (std::find(wanted.begin(), wanted.end(), it->second.category) == wanted.end()) {
            error("P003", "'" + ref.id + "' is not a " + role, ref.span);
            return nullptr;
        }
        return &it->second;
    }

    void bind_bindings(Model& model) {
        std::set<std::pair<std::string, std::string>> pairs;
        for (const auto& s : ast_.bindings) {
            lookup(s.actor, {Category::actor}, "actor");
            lookup(s.justification, {Category::argument}, "argument");
            if (s.role.empty()) {
                error("P005", "binding role must not be empty", s.role_span);
            }
            if (!pairs.insert({s.actor.id, s.role}).second) {
                error("P005",
                      "duplicate binding for actor '" + s.actor.id + "' and role \"" + s.role + "\"",
                      s.actor.span);
            }
            model.bindings.push_back({s.actor.id, s.role, s.negated, s.justification.id});
        }
    }

    void bind_goals(Model& model) {
        for (const auto& s : ast_.goals) {
            lookup(s.owner, {Category::actor}, "actor");
            Goal goal;
            goal.id = s.id.id;
            goal.owner = s.owner.id;
            goal.description = s.desc;
            goal.kind = s.compliance ? GoalKind::compliance : GoalKind::strategic;
            if (s.refine) {
                Refinement refinement;
                refinement.mode = s.refine->mode;
                for (const auto& child : s.refine->children) {
                    lookup(child, {Category::goal, Category::task}, "goal or task");
                    refinement.children.push_back(child.id);
                }
                if (s.refine->selected) {
                    const Ref& sel = *s.refine->selected;
                    if (s.refine->mode == RefineMode::all_of) {
                        error("P004", "goal '" + goal.id + "' selects a child in an AND refinement",
                              sel.span);
                    } else if (std::find(refinement.children.begin(), refinement.children.end(),
                                         sel.id) == refinement.children.end()) {
                        error("P004",
                              "selected child '" + sel.id + "' is not among the refinement children",
                              sel.span);
                    }
                    refinement.selected = sel.id;
                }
                goal.refinement = std::move(refinement);
            }
            model.goals.push_back(std::move(goal));
        }
    }

    void bind_affects(Model& model) {
        std::set<std::pair<std::string, std::string>> seen;
        for (const auto& s : ast_.affects) {
            lookup(s.np, {Category::np}, "np");
            lookup(s.goal, {Category::goal}, "goal");
            if (seen.insert({s.np.id, s.goal.id}).second) {
                model.affects.push_back({s.np.id, s.goal.id});
            }
        }
    }

    // Realizations and explicit arguments append to the log in statement
    // order so the log reflects how the debate unfolded.
    void bind_log(Model& model) {
        std::set<std::pair<std::string, std::string>> realized;
        for (const auto& [is_realize, index] : ast_.log_order) {
            if (is_realize) {
                const RealizeStmt& s = ast_.realizations[index];
                const Declaration* goal = lookup(s.goal, {Category::goal}, "goal");
                lookup(s.np, {Category::np}, "np");
                if (goal && resolve_) {
                    const auto* decl = std::find_if(
                        ast_.goals.begin(), ast_.goals.end(),
                        [&](const GoalStmt& g) { return g.id.id == s.goal.id; });
                    if (decl != ast_.goals.end() && !decl->compliance) {
                        error("P005",
                              "goal '" + s.goal.id + "' realizes '" + s.np.id +
                                  "' but is not a compliance goal",
                              s.goal.span);
                    }
                }
                if (!realized.insert({s.goal.id, s.np.id}).second) {
                    continue;  // duplicate already reported as P002
                }
                Argument hyp;
                hyp.id = hypothesis_id(s.goal.id, s.np.id);
                hyp.claim = hypothesis_claim(s.goal.id, s.np.id);
                hyp.kind = ArgumentKind::hypothesis;
                model.arguments.push_back(std::move(hyp));
                model.realizations.push_back(
                    {s.goal.id, s.np.id, hypothesis_id(s.goal.id, s.np.id)});
            } else {
                const ArgumentStmt& s = ast_.arguments[index];
                Argument arg;
                arg.id = s.id.id;
                arg.claim = s.claim;
                arg.target = s.target.id;
                const Declaration* target = lookup(
                    s.target,
                    {Category::actor, Category::np, Category::goal, Category::task, Category::argument},
                    "model element or argument");
                const bool targets_argument = target && target->category == Category::argument;
                if (s.relation == "supports") {
                    // Supporting a model element records phase-one evidence;
                    // supporting an argument is a debate-tree support.
                    arg.kind = targets_argument || !resolve_ ? ArgumentKind::support
                                                             : ArgumentKind::evidence;
                } else if (s.relation == "revises") {
                    arg.kind = ArgumentKind::revision_attack;
                } else {
                    arg.kind = ArgumentKind::rejection_attack;
                }
                model.arguments.push_back(std::move(arg));
            }
        }
    }

    void check_refinement_cycles(const Model& model) {
        for (const auto& v : validate_referential_integrity(model)) {
            if (v.code == "refinement_cycle") {
                SourceSpan span;
                if (auto it = declarations_.find(v.element); it != declarations_.end()) {
                    span = it->second.span;
                }
                error("P004", v.message, span);
            }
        }
    }

    void error(const char* code, const std::string& message, const SourceSpan& span) {
        diagnostics_.push_back({Severity::error, code, message, span});
    }

    const Ast& ast_;
    std::vector<ParseDiagnostic>& diagnostics_;
    bool resolve_;
    std::unordered_map<std::string, Declaration> declarations_;
};

bool lex_preflight(std::string_view source, const std::string& file,
                   std::vector<ParseDiagnostic>& diagnostics) {
    if (source.size() >= 3 && source.substr(0, 3) == "\xEF\xBB\xBF") {
        diagnostics.push_back(
            {Severity::error, "P001", "byte order mark is not allowed", {file, 1, 1, 3}});
        return false;
    }
    std::size_t bad_offset = 0;
    if (!valid_utf8(source, bad_offset)) {
        int line = 1;
        std::size_t line_start = 0;
        for (std::size_t i = 0; i < bad_offset; ++i) {
            if (source[i] == '\n') {
                ++line;
                line_start = i + 1;
            }
        }
        diagnostics.push_back({Severity::error,
                               "P001",
                               "source is not valid UTF-8",
                               {file, line, static_cast<int>(bad_offset - line_start) + 1, 1}});
        return false;
    }
    return true;
}

ParseResult parse_impl(const std::vector<std::pair<std::string, std::string>>& named_sources,
                       bool resolve_references) {
    ParseResult result;
    Ast ast;
    for (const auto& [file, source] : named_sources) {
        if (!lex_preflight(source, file, result.diagnostics)) {
            continue;
        }
        Parser parser(source, file, result.diagnostics, ast);
        parser.run();
    }
    // After syntax errors, declarations may be missing, so reference
    // resolution would cascade; duplicates and statement-local checks are
    // still reliable and reported.
    const bool syntax_ok = result.diagnostics.empty();
    Binder binder(ast, result.diagnostics, resolve_references && syntax_ok);
    Model model = binder.bind();
    if (!result.diagnostics.empty()) {
        return result;
    }
    if (resolve_references) {
        // The binder mirrors the integrity rules; anything it misses is still
        // reported rather than let through.
        for (const auto& v : validate_referential_integrity(model)) {
            result.diagnostics.push_back(
                {Severity::error, "P005", v.message, {named_sources.front().first, 1, 1, 0}});
        }
        if (!result.diagnostics.empty()) {
            return result;
        }
    }
    result.model = std::move(model);
    return result;
}

}  // namespace

ParseResult parse_model(std::string_view source, const std::string& file) {
    return parse_impl({{file, std::string(source)}}, true);
}

ParseResult parse_sources(const std::vector<std::pair<std::string, std::string>>& named_sources) {
    return parse_impl(named_sources, true);
}

ParseResult parse_fragment(std::string_view source, const std::string& file) {
    return parse_impl({{file, std::string(source)}}, false);
}

std::string render_diagnostic(const ParseDiagnostic& diagnostic) {
    std::ostringstream out;
    out << diagnostic.span.file << ':' << diagnostic.span.line << ':' << diagnostic.span.column
        << ": " << (diagnostic.severity == Severity::error ? "error" : "warning") << '['
        << diagnostic.code << "]: " << diagnostic.message;
    return out.str();
}

}  // namespace nms
