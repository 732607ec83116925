#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace reprank {

enum class TermKind { Constant, Null, Variable };

// A term is a constant, a labeled null, or a variable. The built-in ordering
// is the lexicographic order used by the chase: constants sort by name and
// every null sorts after all constants, by creation ordinal.
class Term {
public:
    static Term constant(std::string name) { return Term(TermKind::Constant, std::move(name), 0); }
    static Term null(std::uint64_t ordinal) { return Term(TermKind::Null, {}, ordinal); }
    static Term variable(std::string name) { return Term(TermKind::Variable, std::move(name), 0); }

    TermKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    std::uint64_t ordinal() const { return ordinal_; }

    bool is_constant() const { return kind_ == TermKind::Constant; }
    bool is_null() const { return kind_ == TermKind::Null; }
    bool is_variable() const { return kind_ == TermKind::Variable; }

    // Nulls print as _:n<ordinal>, which the program parser rejects on input.
    std::string text() const;

    friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
        if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
        if (a.kind_ == TermKind::Null) return a.ordinal_ <=> b.ordinal_;
        return a.name_ <=> b.name_;
    }
    friend bool operator==(const Term& a, const Term& b) {
        return a.kind_ == b.kind_ && a.ordinal_ == b.ordinal_ && a.name_ == b.name_;
    }

private:
    Term(TermKind kind, std::string name, std::uint64_t ordinal)
        : kind_(kind), name_(std::move(name)), ordinal_(ordinal) {}

    TermKind kind_;
    std::string name_;
    std::uint64_t ordinal_;
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    bool ground() const {
        for (const auto& t : args)
            if (!t.is_constant()) return false;
        return true;
    }
    // Ground over constants and nulls (i.e. no variables).
    bool instance() const {
        for (const auto& t : args)
            if (t.is_variable()) return false;
        return true;
    }

    std::string text() const;

    friend std::strong_ordering operator<=>(const Atom&, const Atom&) = default;
    friend bool operator==(const Atom&, const Atom&) = default;
};

} // namespace reprank
