#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "reprank/term.hpp"

namespace reprank {

// Input rejected by a parser: carries the source position.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                             ": " + what),
          line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Structurally valid input that violates a domain-level constraint
// (report files, preference relations, hierarchy declarations, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown by query answering when the knowledge base violates a negative
// constraint or an equality dependency.
class InconsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rule body(X,Y) -> exists Z head(X,Z), normalized to a single head atom.
struct Tgd {
    std::string label;                           // optional rule name, may be empty
    std::vector<Atom> body;                      // nonempty, variables and constants only
    Atom head;                                   // single atom
    std::vector<std::string> existential_vars;   // head-only variables, in head order

    friend bool operator==(const Tgd&, const Tgd&) = default;
};

enum class TgdClass { Linear, Guarded, Neither };

// Linear: single body atom. Guarded: some body atom contains every
// universally quantified variable. Linear implies guarded; the returned
// class is the most specific one.
TgdClass classify_tgd(const Tgd& tgd);

struct NegativeConstraint {
    std::string label;
    std::vector<Atom> body;

    friend bool operator==(const NegativeConstraint&, const NegativeConstraint&) = default;
};

struct Egd {
    std::string label;
    std::vector<Atom> body;
    std::string lhs_var;
    std::string rhs_var;

    friend bool operator==(const Egd&, const Egd&) = default;
};

struct PredicateDecl {
    std::string name;
    std::size_t arity = 0;
    std::vector<std::string> features;   // empty when the predicate carries no feature tuple

    friend bool operator==(const PredicateDecl&, const PredicateDecl&) = default;
};

// A Datalog+/- knowledge base: database, TGDs, non-conflicting EGDs
// (declared so by the user; not verified), negative constraints, and the
// declared schema with per-predicate feature tuples. Immutable once parsed
// and safe to share across threads.
class Ontology {
public:
    void declare(PredicateDecl decl);                // throws ValidationError on redeclaration
    void add_fact(Atom atom);
    void add_tgd(Tgd tgd);
    void add_nc(NegativeConstraint nc);
    void add_egd(Egd egd);

    const std::vector<PredicateDecl>& declarations() const { return decls_; }
    const std::vector<Atom>& database() const { return facts_; }
    const std::vector<Tgd>& tgds() const { return tgds_; }
    const std::vector<NegativeConstraint>& ncs() const { return ncs_; }
    const std::vector<Egd>& egds() const { return egds_; }

    bool declared(const std::string& predicate) const { return index_.count(predicate) != 0; }
    const PredicateDecl* decl(const std::string& predicate) const;
    // Feature tuple of a predicate; nullptr when it has none.
    const std::vector<std::string>* features(const std::string& predicate) const;

    const Tgd* tgd_by_label(const std::string& label) const;

    friend bool operator==(const Ontology& a, const Ontology& b) {
        return a.decls_ == b.decls_ && a.facts_ == b.facts_ && a.tgds_ == b.tgds_ &&
               a.ncs_ == b.ncs_ && a.egds_ == b.egds_;
    }

private:
    std::vector<PredicateDecl> decls_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<Atom> facts_;
    std::vector<Tgd> tgds_;
    std::vector<NegativeConstraint> ncs_;
    std::vector<Egd> egds_;
};

// Conjunctive query exists Y . a1 & ... & am with free variables X in
// first-occurrence order. `distinguished` indexes the unique atom whose
// argument list is exactly X, when the query is simple.
struct ConjunctiveQuery {
    std::vector<std::string> free_vars;
    std::vector<std::string> existential_vars;
    std::vector<Atom> atoms;
    std::optional<std::size_t> distinguished;

    bool simple() const { return distinguished.has_value(); }
    bool atomic() const { return simple() && atoms.size() == 1 && existential_vars.empty(); }
    const Atom& distinguished_atom() const { return atoms.at(*distinguished); }

    std::string text() const;
};

} // namespace reprank
