#pragma once

#include <string>
#include <string_view>

#include "reprank/ontology.hpp"

namespace reprank {

// Parses ontology source text. Grammar (documented in the README):
//
//   program    := { statement }
//   statement  := decl | fact | rule
//   decl       := '@pred' pred '/' nat [ 'features' '(' ident-list ')' ] '.'
//   fact       := atom '.'                          -- ground, constants only
//   rule       := [ ident ':' ] atom-list '->' rhs '.'
//   rhs        := 'false'                           -- negative constraint
//              |  VAR '=' VAR                       -- EGD
//              |  [ 'exists' var-list ] atom        -- TGD, single head atom
//   atom       := pred '(' term-list ')'
//
// '%' starts a comment. Variables begin with an uppercase letter; predicates
// and constants with a lowercase letter. Every predicate must be declared
// before use; nulls (_:n<k>) are rejected in source text.
Ontology parse_program(std::string_view text);

// Canonical text form; parse_program(print_program(kb)) is structurally
// equal to kb.
std::string print_program(const Ontology& kb);

// Parses query text `[exists V1, V2 ...] atom { '&' atom }` over the
// ontology's schema and detects the simple-query distinguished atom.
ConjunctiveQuery parse_query(std::string_view text, const Ontology& kb);

} // namespace reprank
