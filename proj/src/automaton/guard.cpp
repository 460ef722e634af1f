#include "ltlmod/automaton/guard.hpp"

#include <cctype>

namespace ltlmod {

int Alphabet::index_of(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

int Alphabet::intern(const std::string& name) {
    int idx = index_of(name);
    if (idx >= 0) return idx;
    if (names.size() >= 32)
        throw std::runtime_error("alphabet limited to 32 propositions");
    names.push_back(name);
    return static_cast<int>(names.size()) - 1;
}

Label Alphabet::mask_of(const std::vector<std::string>& props) const {
    Label l = 0;
    for (const auto& p : props) {
        int idx = index_of(p);
        if (idx < 0) throw std::runtime_error("unknown proposition: " + p);
        l |= (Label(1) << idx);
    }
    return l;
}

std::vector<std::string> Alphabet::props_of(Label l) const {
    std::vector<std::string> out;
    for (size_t i = 0; i < names.size(); ++i)
        if (l & (Label(1) << i)) out.push_back(names[i]);
    return out;
}

Guard Guard::make_not(Guard g) {
    if (g.kind == Kind::Not) return std::move(g.kids[0]);
    if (g.kind == Kind::True) return make_false();
    if (g.kind == Kind::False) return make_true();
    Guard out;
    out.kind = Kind::Not;
    out.kids.push_back(std::move(g));
    return out;
}

Guard Guard::make_and(Guard a, Guard b) {
    if (a.kind == Kind::True) return b;
    if (b.kind == Kind::True) return a;
    if (a.kind == Kind::False || b.kind == Kind::False) return make_false();
    Guard out;
    out.kind = Kind::And;
    // flatten nested conjunctions so printing stays readable
    if (a.kind == Kind::And)
        out.kids = std::move(a.kids);
    else
        out.kids.push_back(std::move(a));
    if (b.kind == Kind::And)
        for (auto& k : b.kids) out.kids.push_back(std::move(k));
    else
        out.kids.push_back(std::move(b));
    return out;
}

Guard Guard::make_or(Guard a, Guard b) {
    if (a.kind == Kind::False) return b;
    if (b.kind == Kind::False) return a;
    if (a.kind == Kind::True || b.kind == Kind::True) return make_true();
    Guard out;
    out.kind = Kind::Or;
    if (a.kind == Kind::Or)
        out.kids = std::move(a.kids);
    else
        out.kids.push_back(std::move(a));
    if (b.kind == Kind::Or)
        for (auto& k : b.kids) out.kids.push_back(std::move(k));
    else
        out.kids.push_back(std::move(b));
    return out;
}

bool Guard::operator==(const Guard& o) const {
    if (kind != o.kind || ap != o.ap || kids.size() != o.kids.size()) return false;
    for (size_t i = 0; i < kids.size(); ++i)
        if (!(kids[i] == o.kids[i])) return false;
    return true;
}

bool eval_guard(const Guard& g, Label label) {
    switch (g.kind) {
    case Guard::Kind::True: return true;
    case Guard::Kind::False: return false;
    case Guard::Kind::Ap: return (label >> g.ap) & 1u;
    case Guard::Kind::Not: return !eval_guard(g.kids[0], label);
    case Guard::Kind::And:
        for (const auto& k : g.kids)
            if (!eval_guard(k, label)) return false;
        return true;
    case Guard::Kind::Or:
        for (const auto& k : g.kids)
            if (eval_guard(k, label)) return true;
        return false;
    }
    return false;
}

bool guard_satisfiable(const Guard& g, int nprops) {
    if (nprops > 16) throw std::runtime_error("satisfiability enumeration limited to 16 propositions");
    const Label top = Label(1) << nprops;
    for (Label l = 0; l < top; ++l)
        if (eval_guard(g, l)) return true;
    return false;
}

namespace {

void print_rec(const Guard& g, std::string& out, int parent_prec) {
    // precedence: Or=1, And=2, Not/atoms=3
    switch (g.kind) {
    case Guard::Kind::True: out += "true"; return;
    case Guard::Kind::False: out += "false"; return;
    case Guard::Kind::Ap: out += g.ap_name; return;
    case Guard::Kind::Not:
        out += '!';
        print_rec(g.kids[0], out, 3);
        return;
    case Guard::Kind::And: {
        const bool paren = parent_prec > 2;
        if (paren) out += '(';
        for (size_t i = 0; i < g.kids.size(); ++i) {
            if (i) out += " & ";
            print_rec(g.kids[i], out, 2);
        }
        if (paren) out += ')';
        return;
    }
    case Guard::Kind::Or: {
        const bool paren = parent_prec > 1;
        if (paren) out += '(';
        for (size_t i = 0; i < g.kids.size(); ++i) {
            if (i) out += " | ";
            print_rec(g.kids[i], out, 1);
        }
        if (paren) out += ')';
        return;
    }
    }
}

struct GuardParser {
    const std::string& text;
    const Alphabet& alphabet;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    Guard parse_expr() {
        Guard g = parse_term();
        while (peek() == '|') {
            ++pos;
            g = Guard::make_or(std::move(g), parse_term());
        }
        return g;
    }

    Guard parse_term() {
        Guard g = parse_factor();
        while (peek() == '&') {
            ++pos;
            g = Guard::make_and(std::move(g), parse_factor());
        }
        return g;
    }

    Guard parse_factor() {
        skip_ws();
        if (pos >= text.size()) throw GuardError("unexpected end of guard", pos);
        const char c = text[pos];
        if (c == '!') {
            ++pos;
            return Guard::make_not(parse_factor());
        }
        if (c == '(') {
            ++pos;
            Guard g = parse_expr();
            if (peek() != ')') throw GuardError("expected ')'", pos);
            ++pos;
            return g;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            std::string name = text.substr(start, pos - start);
            if (name == "true") return Guard::make_true();
            if (name == "false") return Guard::make_false();
            const int idx = alphabet.index_of(name);
            if (idx < 0) throw GuardError("unknown proposition '" + name + "'", start);
            return Guard::make_ap(idx, std::move(name));
        }
        throw GuardError(std::string("unexpected character '") + c + "'", pos);
    }
};

} // namespace

std::string print_guard(const Guard& g) {
    std::string out;
    print_rec(g, out, 0);
    return out;
}

Guard parse_guard(const std::string& text, const Alphabet& alphabet) {
    GuardParser p{text, alphabet};
    Guard g = p.parse_expr();
    if (!p.at_end()) throw GuardError("trailing input after guard", p.pos);
    return g;
}

} // namespace ltlmod
