#include "ltlmod/automaton/ltl.hpp"

#include <cctype>

namespace ltlmod {

namespace {

constexpr const char* kImportHint =
    " (formula outside the supported fragment; translate it externally and use the JSON automaton import)";

struct LtlNode {
    enum class Kind { Ap, Not, And, Or, Ev, Al };
    Kind kind;
    int ap = -1;
    std::string ap_name;
    std::vector<LtlNode> kids;
};

struct LtlParser {
    const std::string& text;
    Alphabet& alphabet;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw LtlError(msg + " at position " + std::to_string(pos));
    }

    LtlNode parse_or() {
        LtlNode n = parse_and();
        while (peek() == '|') {
            ++pos;
            LtlNode r = parse_and();
            LtlNode o{LtlNode::Kind::Or};
            o.kids.push_back(std::move(n));
            o.kids.push_back(std::move(r));
            n = std::move(o);
        }
        return n;
    }

    LtlNode parse_and() {
        LtlNode n = parse_unary();
        while (peek() == '&') {
            ++pos;
            LtlNode r = parse_unary();
            LtlNode a{LtlNode::Kind::And};
            a.kids.push_back(std::move(n));
            a.kids.push_back(std::move(r));
            n = std::move(a);
        }
        return n;
    }

    LtlNode parse_unary() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of formula");
        const char c = text[pos];
        if (c == '!') {
            ++pos;
            LtlNode n{LtlNode::Kind::Not};
            n.kids.push_back(parse_unary());
            return n;
        }
        if (c == '(') {
            ++pos;
            LtlNode n = parse_or();
            if (!eat(')')) fail("expected ')'");
            return n;
        }
        if (c == '<') {
            if (pos + 1 < text.size() && text[pos + 1] == '>') {
                pos += 2;
                LtlNode n{LtlNode::Kind::Ev};
                n.kids.push_back(parse_unary());
                return n;
            }
            fail("unexpected '<'");
        }
        if (c == '[') {
            if (pos + 1 < text.size() && text[pos + 1] == ']') {
                pos += 2;
                LtlNode n{LtlNode::Kind::Al};
                n.kids.push_back(parse_unary());
                return n;
            }
            fail("unexpected '['");
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            std::string name = text.substr(start, pos - start);
            if (name == "F") {
                LtlNode n{LtlNode::Kind::Ev};
                n.kids.push_back(parse_unary());
                return n;
            }
            if (name == "G") {
                LtlNode n{LtlNode::Kind::Al};
                n.kids.push_back(parse_unary());
                return n;
            }
            if (name == "X")
                throw LtlError("the next operator is unsupported; it is excluded from the fragment");
            if (name == "true" || name == "false")
                fail("boolean constants are not part of the formula fragment");
            LtlNode n{LtlNode::Kind::Ap};
            n.ap = alphabet.intern(name);
            n.ap_name = std::move(name);
            return n;
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

bool has_temporal(const LtlNode& n) {
    if (n.kind == LtlNode::Kind::Ev || n.kind == LtlNode::Kind::Al) return true;
    for (const auto& k : n.kids)
        if (has_temporal(k)) return true;
    return false;
}

// propositional subtree -> Guard; negation restricted to atoms
Guard to_guard(const LtlNode& n) {
    switch (n.kind) {
    case LtlNode::Kind::Ap: return Guard::make_ap(n.ap, n.ap_name);
    case LtlNode::Kind::Not:
        if (n.kids[0].kind != LtlNode::Kind::Ap)
            throw LtlError("negation is only allowed on atoms" + std::string(kImportHint));
        return Guard::make_not(to_guard(n.kids[0]));
    case LtlNode::Kind::And: return Guard::make_and(to_guard(n.kids[0]), to_guard(n.kids[1]));
    case LtlNode::Kind::Or: return Guard::make_or(to_guard(n.kids[0]), to_guard(n.kids[1]));
    default:
        throw LtlError("temporal operator in a propositional position" + std::string(kImportHint));
    }
}

void flatten_and(LtlNode&& n, std::vector<LtlNode>& out) {
    if (n.kind == LtlNode::Kind::And) {
        for (auto& k : n.kids) flatten_and(std::move(k), out);
    } else {
        out.push_back(std::move(n));
    }
}

// F(e & F(e' & ...)) -> list of stage guards
void decompose_chain(const LtlNode& ev, std::vector<Guard>& stages) {
    std::vector<LtlNode> parts;
    {
        LtlNode copy = ev.kids[0];
        flatten_and(std::move(copy), parts);
    }
    Guard stage = Guard::make_true();
    bool have_prop = false;
    const LtlNode* nested = nullptr;
    for (const auto& p : parts) {
        if (p.kind == LtlNode::Kind::Ev) {
            if (nested)
                throw LtlError("more than one nested eventuality in a chain stage" +
                               std::string(kImportHint));
            nested = &p;
        } else if (has_temporal(p)) {
            throw LtlError("unsupported temporal nesting inside an eventuality" +
                           std::string(kImportHint));
        } else {
            stage = Guard::make_and(std::move(stage), to_guard(p));
            have_prop = true;
        }
    }
    if (!have_prop)
        throw LtlError("eventuality stage has no propositional goal" + std::string(kImportHint));
    stages.push_back(std::move(stage));
    if (nested) decompose_chain(*nested, stages);
}

} // namespace

LtlAst parse_ltl(const std::string& text) {
    LtlAst ast;
    ast.source = text;
    LtlParser p{text, ast.alphabet};
    LtlNode root = p.parse_or();
    p.skip_ws();
    if (p.pos < text.size()) p.fail("trailing input after formula");

    std::vector<LtlNode> conjuncts;
    flatten_and(std::move(root), conjuncts);

    std::vector<Guard> recurrence_goals;
    std::vector<Guard> chain;
    std::optional<Guard> safety;

    for (auto& c : conjuncts) {
        if (c.kind == LtlNode::Kind::Al) {
            const LtlNode& body = c.kids[0];
            if (body.kind == LtlNode::Kind::Ev) {
                if (has_temporal(body.kids[0]))
                    throw LtlError("recurrence goal must be propositional" +
                                   std::string(kImportHint));
                recurrence_goals.push_back(to_guard(body.kids[0]));
            } else if (!has_temporal(body)) {
                Guard g = to_guard(body);
                safety = safety ? Guard::make_and(std::move(*safety), std::move(g))
                                : std::move(g);
            } else {
                throw LtlError("unsupported formula under an always operator" +
                               std::string(kImportHint));
            }
        } else if (c.kind == LtlNode::Kind::Ev) {
            if (!chain.empty())
                throw LtlError("more than one top-level eventuality chain" +
                               std::string(kImportHint));
            decompose_chain(c, chain);
        } else {
            throw LtlError("top-level conjunct is neither a recurrence, a safety "
                           "condition, nor an eventuality chain" +
                           std::string(kImportHint));
        }
    }

    if (!recurrence_goals.empty() && !chain.empty())
        throw LtlError("mixing recurrence goals with an eventuality chain is unsupported" +
                       std::string(kImportHint));
    if (recurrence_goals.empty() && chain.empty())
        throw LtlError("formula has no temporal goal" + std::string(kImportHint));

    if (!chain.empty()) {
        ast.pattern = LtlPattern::Sequential;
        ast.goals = std::move(chain);
    } else {
        ast.pattern = LtlPattern::Recurrence;
        ast.goals = std::move(recurrence_goals);
    }
    ast.safety = std::move(safety);
    return ast;
}

Ldgba compile_ltl(const LtlAst& ast) {
    Ldgba a;
    a.alphabet = ast.alphabet;
    const int k = static_cast<int>(ast.goals.size());
    const bool has_safety = ast.safety.has_value();

    for (int i = 0; i <= k; ++i) a.states.push_back("q" + std::to_string(i));
    int sink = -1;
    if (has_safety) {
        sink = static_cast<int>(a.states.size());
        a.states.push_back("q_sink");
    }
    a.initial = 0;
    a.deterministic.assign(a.states.size(), 1);

    const Guard hold = has_safety ? *ast.safety : Guard::make_true();
    const Guard viol = has_safety ? Guard::make_not(*ast.safety) : Guard::make_false();

    auto add_edge = [&](int src, Guard g, int dst) {
        a.edges.push_back({src, std::move(g), dst});
    };

    if (ast.pattern == LtlPattern::Sequential) {
        for (int i = 0; i < k; ++i) {
            if (has_safety) add_edge(i, viol, sink);
            add_edge(i, Guard::make_and(hold, ast.goals[i]), i + 1);
            add_edge(i, Guard::make_and(hold, Guard::make_not(ast.goals[i])), i);
        }
        // completed: absorbing under every label
        add_edge(k, Guard::make_true(), k);
        a.accepting_sets.push_back({k});
    } else {
        // state q_j (j>=1) = current label satisfies goal j; q0 = none do
        for (int src = 0; src <= k; ++src) {
            if (has_safety) add_edge(src, viol, sink);
            Guard lower = Guard::make_true();
            for (int j = 0; j < k; ++j) {
                add_edge(src, Guard::make_and(hold, Guard::make_and(lower, ast.goals[j])), j + 1);
                lower = Guard::make_and(std::move(lower), Guard::make_not(ast.goals[j]));
            }
            add_edge(src, Guard::make_and(hold, std::move(lower)), 0);
        }
        for (int j = 1; j <= k; ++j) a.accepting_sets.push_back({j});
    }
    if (has_safety) add_edge(sink, Guard::make_true(), sink);

    a.finalize();
    return a;
}

} // namespace ltlmod
