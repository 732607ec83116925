#include "reprank/term.hpp"

namespace reprank {

std::string Term::text() const {
    switch (kind_) {
    case TermKind::Null:
        return "_:n" + std::to_string(ordinal_);
    case TermKind::Constant:
    case TermKind::Variable:
        break;
    }
    return name_;
}

std::string Atom::text() const {
    std::string out = predicate;
    out += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i > 0) out += ',';
        out += args[i].text();
    }
    out += ')';
    return out;
}

} // namespace reprank
