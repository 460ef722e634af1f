#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ltlmod {

// Set of atomic propositions read off an environment state, as a bitmask
// over an Alphabet.  Alphabets are capped at 32 propositions; exhaustive
// label enumeration (validation, sink detection) additionally requires
// at most 16.
using Label = uint32_t;

struct Alphabet {
    std::vector<std::string> names;

    int index_of(const std::string& name) const;
    bool contains(const std::string& name) const { return index_of(name) >= 0; }
    int size() const { return static_cast<int>(names.size()); }
    // adds if missing, returns index
    int intern(const std::string& name);

    Label mask_of(const std::vector<std::string>& props) const;
    std::vector<std::string> props_of(Label l) const;

    bool operator==(const Alphabet&) const = default;
};

class GuardError : public std::runtime_error {
public:
    GuardError(const std::string& msg, size_t pos)
        : std::runtime_error(msg), position(pos) {}
    size_t position;
};

// Propositional formula over an alphabet; the symbolic form of an edge
// label set.
struct Guard {
    enum class Kind : uint8_t { True, False, Ap, Not, And, Or };

    Kind kind = Kind::True;
    int ap = -1;              // alphabet index when kind == Ap
    std::string ap_name;      // kept for printing
    std::vector<Guard> kids;

    static Guard make_true() { return Guard{}; }
    static Guard make_false() { return Guard{Kind::False, -1, {}, {}}; }
    static Guard make_ap(int idx, std::string name) {
        return Guard{Kind::Ap, idx, std::move(name), {}};
    }
    static Guard make_not(Guard g);
    static Guard make_and(Guard a, Guard b);
    static Guard make_or(Guard a, Guard b);

    bool operator==(const Guard& o) const;
};

bool eval_guard(const Guard& g, Label label);

// True iff some label over `nprops` propositions satisfies g.
bool guard_satisfiable(const Guard& g, int nprops);

std::string print_guard(const Guard& g);

// Grammar: expr := term ('|' term)* ; term := factor ('&' factor)* ;
// factor := '!' factor | '(' expr ')' | ident | 'true' | 'false'.
// Throws GuardError with the offending position on syntax errors and on
// propositions missing from the alphabet.
Guard parse_guard(const std::string& text, const Alphabet& alphabet);

} // namespace ltlmod
