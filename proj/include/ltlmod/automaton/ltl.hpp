#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ltlmod/automaton/guard.hpp"
#include "ltlmod/automaton/ldgba.hpp"

namespace ltlmod {

class LtlError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class LtlPattern { Sequential, Recurrence };

// Parsed formula from the supported fragment, already decomposed into the
// data the compiler needs.  Two shapes are recognized:
//   sequential:  F(e1 & F(e2 & ... F(ek))) [ & G s ]*
//   recurrence:  G F g1 & ... & G F gk [ & G s ]*
// where the e_i / g_i / s are propositional (negation on atoms only).
// Anything else is rejected with a pointer to the JSON import path.
struct LtlAst {
    LtlPattern pattern;
    Alphabet alphabet;          // atoms in order of first appearance
    std::vector<Guard> goals;   // chain stages (sequential) or recurrence goals
    std::optional<Guard> safety; // formula that must always hold
    std::string source;
};

// Operators: F or <> (eventually), G or [] (always), & | !, parentheses.
// The next operator (X) is recognized and rejected explicitly.
LtlAst parse_ltl(const std::string& text);

// Sequential -> chain automaton, one accepting set on the final state, plus
// an absorbing violation state when a safety conjunct is present.
// Recurrence with k goals -> states q0,q1..qk (plus violation state under
// safety) with one singleton accepting set per goal, where the automaton
// state tracks which goal region the current label satisfies.
Ldgba compile_ltl(const LtlAst& ast);

} // namespace ltlmod
