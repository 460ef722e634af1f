#pragma once

#include <string>

#include "ltlmod/automaton/ldgba.hpp"

namespace ltlmod {

class AutomatonIoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// JSON schema (keys are part of the interface):
// {"alphabet":[str], "states":[str], "initial":str, "Q_D":[str], "Q_N":[str],
//  "edges":[{"src":str,"guard":str,"dst":str}], "eps_edges":[{"src":str,"dst":str}],
//  "accepting_sets":[[str]]}
Ldgba load_automaton(const std::string& path);
Ldgba automaton_from_json_text(const std::string& text);
void save_automaton(const Ldgba& a, const std::string& path);
std::string automaton_to_json_text(const Ldgba& a);

// FNV-1a over the canonical JSON text; used in run manifests.
uint64_t automaton_hash(const Ldgba& a);

} // namespace ltlmod
