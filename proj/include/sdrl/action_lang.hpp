#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sdrl {

// A fluent constant together with its finite, ordered value domain.
struct FluentDecl {
  std::string name;
  std::string sort_name;             // "bool" or a declared sort
  std::vector<std::string> domain;
  friend bool operator==(const FluentDecl&, const FluentDecl&) = default;
};

// Assignment fluent=value, stored as indices into the owning description.
struct FluentAtom {
  int fluent = -1;
  int value = -1;
  friend bool operator==(const FluentAtom&, const FluentAtom&) = default;
  friend auto operator<=>(const FluentAtom&, const FluentAtom&) = default;
};

enum class LawKind { Static, Dynamic, Nonexecutable, Inertial, Default };

struct CausalLaw {
  LawKind kind = LawKind::Static;
  std::optional<FluentAtom> head;  // Static, Dynamic, Default
  int action = -1;                 // Dynamic, Nonexecutable
  int inertial_fluent = -1;        // Inertial
  std::vector<FluentAtom> body;
  friend bool operator==(const CausalLaw&, const CausalLaw&) = default;
};

struct SortDecl {
  std::string name;
  std::vector<std::string> values;
  friend bool operator==(const SortDecl&, const SortDecl&) = default;
};

struct ActionParam {
  std::string var;
  int sort = -1;
  friend bool operator==(const ActionParam&, const ActionParam&) = default;
};

struct ActionSchema {
  std::string name;
  std::vector<ActionParam> params;
  friend bool operator==(const ActionSchema&, const ActionSchema&) = default;
};

// Complete assignment of every declared fluent, as domain-value indices in
// fluent declaration order.
struct SymbolicState {
  std::vector<std::int32_t> values;
  friend bool operator==(const SymbolicState&, const SymbolicState&) = default;
  friend auto operator<=>(const SymbolicState&, const SymbolicState&) = default;
};

std::uint64_t state_hash(const SymbolicState& s);

// Grounded rule set: all schematic variables expanded, actions sorted by name.
struct ActionDescription {
  std::vector<SortDecl> sorts;
  std::vector<ActionSchema> schemas;
  std::vector<FluentDecl> fluents;
  std::vector<std::string> actions;
  std::vector<CausalLaw> laws;

  int fluent_index(std::string_view name) const;
  int action_index(std::string_view name) const;
  int sort_index(std::string_view name) const;
  bool inertial(int fluent) const;

  std::string atom_text(const FluentAtom& a) const;
  std::string state_text(const SymbolicState& s) const;  // "f=v f=v ..."

  friend bool operator==(const ActionDescription&, const ActionDescription&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line;
  int column;
};

struct Diagnostic {
  std::string message;
  int law = -1;  // index into laws when the diagnostic names one
};

ActionDescription parse_action_description(std::string_view text);

// Empty result iff every description invariant holds.
std::vector<Diagnostic> validate(const ActionDescription& d);

// Grounded source text; parsing it again yields a structurally identical
// description.
std::string pretty_print(const ActionDescription& d);

bool body_satisfied(const std::vector<FluentAtom>& body, const SymbolicState& s);
bool statically_closed(const ActionDescription& d, const SymbolicState& s);

// Fluent order in which static-law bodies are finalized before their heads;
// fluents on static cycles (rejected by validate) are appended in declaration
// order as a best effort.
std::vector<int> static_dependency_order(const ActionDescription& d);

// Finalizes unassigned slots (-1) in static-dependency order: an applicable
// static law overrides the defeasible fills (inertia when a source state is
// given, then defaults). Returns false when applicable static laws disagree.
bool finalize_state(const ActionDescription& d, std::vector<std::int32_t>& values,
                    const SymbolicState* inertia_source);

// Completes a partial assignment by static closure and defaults; throws if a
// fluent stays unassigned or a static law is violated.
SymbolicState complete_state(const ActionDescription& d,
                             const std::vector<FluentAtom>& given);

// Parses "f=v" pairs separated by commas or whitespace.
std::vector<FluentAtom> parse_atoms(const ActionDescription& d, std::string_view text);

}  // namespace sdrl
