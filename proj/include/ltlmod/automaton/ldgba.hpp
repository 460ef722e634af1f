#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ltlmod/automaton/guard.hpp"

namespace ltlmod {

struct LdgbaEdge {
    int src;
    Guard guard;
    int dst;
    bool operator==(const LdgbaEdge&) const = default;
};

struct EpsEdge {
    int src;
    int dst;
    bool operator==(const EpsEdge&) const = default;
};

// Limit-deterministic generalized Buchi automaton.  States are indices into
// `states`; the deterministic part holds every accepting set, transitions
// inside it are total and stay inside it, and eps-moves only leave the
// nondeterministic part.
struct Ldgba {
    std::vector<std::string> states;
    int initial = 0;
    Alphabet alphabet;
    std::vector<char> deterministic;              // per state: 1 iff in the deterministic part
    std::vector<LdgbaEdge> edges;
    std::vector<EpsEdge> eps_edges;
    std::vector<std::vector<int>> accepting_sets; // F_1..F_f, state indices

    // caches rebuilt by finalize()
    std::vector<std::vector<int>> out_edges; // per state: indices into edges
    std::vector<std::vector<int>> eps_out;   // per state: eps targets, file order
    std::vector<uint32_t> accept_mask;       // per state: bit j iff state in F_{j+1}

    void finalize();

    int num_states() const { return static_cast<int>(states.size()); }
    int num_accepting_sets() const { return static_cast<int>(accepting_sets.size()); }
    int state_index(const std::string& id) const;

    bool structurally_equal(const Ldgba& o) const;
};

struct Violation {
    std::string clause; // which defining condition is broken
    std::string detail; // offending state / edge
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    // violations that make the automaton unusable (as opposed to
    // non-total states, which behave as run dead ends)
    bool structurally_sound() const;
};

// Checks every defining clause: the partition covers the states, accepting
// sets live in the deterministic part, eps-edges never leave from it, f >= 1,
// and (by enumerating all 2^|alphabet| labels, alphabet <= 16) every
// deterministic state has exactly one satisfied outgoing guard per label,
// leading back into the deterministic part.
ValidationReport validate(const Ldgba& a);

// States from which the acceptance condition can no longer be met: no
// reachable SCC with an internal edge intersects every accepting set.
// Guard edges count as present iff satisfiable; eps edges are always present.
std::set<int> detect_sinks(const Ldgba& a);

class AmbiguousStepError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unique guard-satisfied successor of q under `label`, or nullopt when no
// guard fires (a run dead end).  More than one satisfied guard at a
// nondeterministic state raises AmbiguousStepError; resolving such choices
// is the product layer's job (via eps-actions).
std::optional<int> automaton_step(const Ldgba& a, int q, Label label);

} // namespace ltlmod
