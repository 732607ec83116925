#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "reprank/ontology.hpp"

namespace reprank {

// Bounded breadth-first chase instance. Atoms are ground over constants and
// nulls and carry the derivation level at which they were added; level 0 is
// the initial database. Immutable views are safe to share once construction
// is done.
class ChaseInstance {
public:
    ChaseInstance() = default;
    explicit ChaseInstance(std::span<const Atom> database);

    std::size_t size() const { return atoms_.size(); }
    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t level(std::size_t idx) const { return levels_[idx]; }
    std::size_t max_level() const { return max_level_; }
    std::uint64_t next_null_ordinal() const { return next_null_; }

    bool contains(const Atom& atom) const { return present_.count(atom.text()) != 0; }
    // Indices of atoms with the given predicate, in insertion order.
    const std::vector<std::size_t>& with_predicate(const std::string& predicate) const;
    // Indices of atoms with the given predicate and term at one argument
    // position; backs index-assisted matching.
    const std::vector<std::size_t>& with_predicate_arg(const std::string& predicate,
                                                       std::size_t position,
                                                       const Term& term) const;

    // Adds a ground atom at the given level if not present; returns whether
    // it was added. Null ordinals are allocated through fresh_null().
    bool add(Atom atom, std::size_t level);
    Term fresh_null() { return Term::null(next_null_++); }

    friend bool operator==(const ChaseInstance& a, const ChaseInstance& b) {
        return a.atoms_ == b.atoms_ && a.levels_ == b.levels_ && a.next_null_ == b.next_null_;
    }

private:
    std::vector<Atom> atoms_;
    std::vector<std::size_t> levels_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_predicate_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_predicate_arg_;
    std::unordered_set<std::string> present_;
    std::size_t max_level_ = 0;
    std::uint64_t next_null_ = 1;
};

struct ChaseOptions {
    // Multiplied by the number of query atoms to bound the chase depth;
    // 0 selects the default, max over TGDs of (1 + head arity).
    std::size_t depth_constant = 0;
};

std::size_t default_depth_constant(const Ontology& kb);
std::size_t effective_depth_constant(const Ontology& kb, const ChaseOptions& opts);

// One breadth-first level: every applicable (TGD, homomorphism) pair whose
// body image peaks at the current frontier fires once, in (TGD order,
// lexicographic body image) order; an application is skipped when its head
// image already has a homomorphic match. Returns whether anything was added.
bool chase_step(ChaseInstance& inst, std::span<const Tgd> tgds);

// Chase of the given database under the TGDs, up to max_level or until an
// early fixpoint. Throws ValidationError when a TGD is neither linear nor
// guarded.
ChaseInstance build_chase(std::span<const Atom> database, std::span<const Tgd> tgds,
                          std::size_t max_level);
ChaseInstance chase_to_level(const Ontology& kb, std::size_t max_level);

// All homomorphism images of the free variables, restricted to tuples over
// constants only, evaluated on the instance. Deterministically sorted.
std::vector<std::vector<Term>> evaluate_cq(const ConjunctiveQuery& query, const ChaseInstance& inst);
bool holds_bcq(std::span<const Atom> body, const ChaseInstance& inst);

struct ConsistencyResult {
    bool consistent = true;
    std::string violated;   // text of the violated constraint when inconsistent

    explicit operator bool() const { return consistent; }
};

// Negative constraints are evaluated as BCQs over the bounded chase; EGDs
// apply the standard equality chase rule where equating two distinct
// constants is a hard failure and null substitutions are propagated.
ConsistencyResult check_consistency(const Ontology& kb, const ChaseOptions& opts = {});

// Certain answers over constants for the bounded-chase fragment, with the
// depth bound depth_constant * |query atoms|. Throws InconsistencyError when
// the KB is inconsistent.
std::vector<std::vector<Term>> answer_cq(const ConjunctiveQuery& query, const Ontology& kb,
                                         const ChaseOptions& opts = {});

// Answers to a simple query in atom form: the distinguished atom
// instantiated with each answer tuple.
std::vector<Atom> answers_in_atom_form(const ConjunctiveQuery& query, const Ontology& kb,
                                       const ChaseOptions& opts = {});

// KB |= a for a ground atom: membership in the bounded chase.
bool entails(const Ontology& kb, const Atom& ground_atom, const ChaseOptions& opts = {});

// Chase dump in the ontology DSL with _:n<k> null literals, one fact per
// line grouped by level.
std::string dump_chase(const Ontology& kb, std::size_t max_level, const ChaseOptions& opts = {});

} // namespace reprank
