#include "reprank/parser.hpp"

#include <cctype>
#include <unordered_set>

namespace reprank {

namespace {

enum class Tok { Ident, Variable, Number, Null, LParen, RParen, Comma, Dot, Arrow, Equals, Slash, Colon, At, Amp, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 1;
    std::size_t col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_trivia();
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_ = {Tok::End, "", line_, col_};
            return;
        }
        char c = src_[pos_];
        if (c == '_' && pos_ + 1 < src_.size() && src_[pos_ + 1] == ':') {
            std::size_t start = pos_;
            bump();
            bump();
            while (pos_ < src_.size() && (std::isalnum((unsigned char)src_[pos_]) || src_[pos_] == '_'))
                bump();
            tok_.kind = Tok::Null;
            tok_.text = std::string(src_.substr(start, pos_ - start));
            return;
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() && (std::isalnum((unsigned char)src_[pos_]) || src_[pos_] == '_'))
                bump();
            tok_.text = std::string(src_.substr(start, pos_ - start));
            tok_.kind = std::isupper((unsigned char)c) ? Tok::Variable : Tok::Ident;
            return;
        }
        if (std::isdigit((unsigned char)c)) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_])) bump();
            tok_.kind = Tok::Number;
            tok_.text = std::string(src_.substr(start, pos_ - start));
            return;
        }
        if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            bump();
            bump();
            tok_ = {Tok::Arrow, "->", tok_.line, tok_.col};
            return;
        }
        Tok kind;
        switch (c) {
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case ',': kind = Tok::Comma; break;
        case '.': kind = Tok::Dot; break;
        case '=': kind = Tok::Equals; break;
        case '/': kind = Tok::Slash; break;
        case ':': kind = Tok::Colon; break;
        case '@': kind = Tok::At; break;
        case '&': kind = Tok::Amp; break;
        default:
            throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
        }
        bump();
        tok_.kind = kind;
        tok_.text = std::string(1, c);
    }

    void skip_trivia() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    Token tok_;
};

[[noreturn]] void fail(const Token& at, const std::string& msg) {
    throw ParseError(at.line, at.col, msg);
}

Token expect(Lexer& lex, Tok kind, const char* what) {
    if (lex.peek().kind != kind) fail(lex.peek(), std::string("expected ") + what);
    return lex.take();
}

class ProgramParser {
public:
    explicit ProgramParser(std::string_view text) : lex_(text) {}

    Ontology parse() {
        while (lex_.peek().kind != Tok::End) {
            if (lex_.peek().kind == Tok::At)
                parse_decl();
            else
                parse_clause();
        }
        return std::move(kb_);
    }

private:
    void parse_decl() {
        lex_.take();   // '@'
        Token kw = expect(lex_, Tok::Ident, "'pred'");
        if (kw.text != "pred") fail(kw, "unknown declaration '@" + kw.text + "'");
        Token name = expect(lex_, Tok::Ident, "predicate name");
        expect(lex_, Tok::Slash, "'/'");
        Token arity = expect(lex_, Tok::Number, "arity");
        std::size_t n = 0;
        for (char c : arity.text) n = n * 10 + std::size_t(c - '0');
        if (n == 0) fail(arity, "arity must be at least 1");
        PredicateDecl decl{name.text, n, {}};
        if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "features") {
            lex_.take();
            expect(lex_, Tok::LParen, "'('");
            std::unordered_set<std::string> seen;
            while (true) {
                Token f = expect(lex_, Tok::Ident, "feature name");
                if (!seen.insert(f.text).second) fail(f, "duplicate feature '" + f.text + "'");
                decl.features.push_back(f.text);
                if (lex_.peek().kind == Tok::Comma) {
                    lex_.take();
                    continue;
                }
                break;
            }
            expect(lex_, Tok::RParen, "')'");
        }
        expect(lex_, Tok::Dot, "'.'");
        try {
            kb_.declare(std::move(decl));
        } catch (const ValidationError& e) {
            fail(name, e.what());
        }
    }

    // fact, TGD, negative constraint, or EGD; rules may carry a label.
    void parse_clause() {
        std::string label;
        Token first = lex_.peek();
        if (first.kind == Tok::Ident) {
            // lookahead for 'label:'
            Lexer probe = lex_;
            probe.take();
            if (probe.peek().kind == Tok::Colon) {
                label = lex_.take().text;
                lex_.take();   // ':'
            }
        }
        std::vector<Atom> atoms;
        std::vector<Token> starts;
        starts.push_back(lex_.peek());
        atoms.push_back(parse_atom());
        while (lex_.peek().kind == Tok::Comma) {
            lex_.take();
            starts.push_back(lex_.peek());
            atoms.push_back(parse_atom());
        }
        if (lex_.peek().kind == Tok::Dot) {
            lex_.take();
            if (!label.empty()) fail(first, "only rules may be labeled");
            if (atoms.size() != 1) fail(first, "a fact must be a single atom");
            for (const auto& t : atoms[0].args)
                if (t.is_variable())
                    fail(starts[0], "variable '" + t.name() + "' in database fact");
            kb_.add_fact(std::move(atoms[0]));
            return;
        }
        Token arrow = expect(lex_, Tok::Arrow, "'->' or '.'");
        parse_rhs(std::move(label), std::move(atoms), arrow);
        expect(lex_, Tok::Dot, "'.'");
    }

    void parse_rhs(std::string label, std::vector<Atom> body, const Token& at) {
        if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "false") {
            lex_.take();
            kb_.add_nc({std::move(label), std::move(body)});
            return;
        }
        if (lex_.peek().kind == Tok::Variable) {
            // EGD: X = Y, or a stray variable.
            Token lhs = lex_.take();
            expect(lex_, Tok::Equals, "'=' in equality rule head");
            Token rhs = expect(lex_, Tok::Variable, "variable");
            auto in_body = [&](const std::string& v) {
                for (const auto& a : body)
                    for (const auto& t : a.args)
                        if (t.is_variable() && t.name() == v) return true;
                return false;
            };
            if (!in_body(lhs.text)) fail(lhs, "equality variable '" + lhs.text + "' not in body");
            if (!in_body(rhs.text)) fail(rhs, "equality variable '" + rhs.text + "' not in body");
            kb_.add_egd({std::move(label), std::move(body), lhs.text, rhs.text});
            return;
        }
        std::vector<std::string> existentials;
        if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "exists") {
            lex_.take();
            while (true) {
                Token v = lex_.take();
                if (v.kind != Tok::Variable) fail(v, "existential variable must start uppercase");
                existentials.push_back(v.text);
                if (lex_.peek().kind == Tok::Comma) {
                    lex_.take();
                    continue;
                }
                break;
            }
        }
        Token head_at = lex_.peek();
        Atom head = parse_atom();
        finish_tgd(std::move(label), std::move(body), std::move(head), std::move(existentials),
                   head_at, at);
    }

    void finish_tgd(std::string label, std::vector<Atom> body, Atom head,
                    std::vector<std::string> existentials, const Token& head_at, const Token&) {
        std::unordered_set<std::string> body_vars;
        for (const auto& a : body)
            for (const auto& t : a.args)
                if (t.is_variable()) body_vars.insert(t.name());
        std::unordered_set<std::string> ex(existentials.begin(), existentials.end());
        if (ex.size() != existentials.size()) fail(head_at, "duplicate existential variable");
        for (const auto& v : existentials)
            if (body_vars.count(v))
                fail(head_at, "existential variable '" + v + "' also occurs in the body");
        // Existentials are kept in head-occurrence order.
        std::vector<std::string> ordered;
        std::unordered_set<std::string> used;
        for (const auto& t : head.args) {
            if (!t.is_variable()) continue;
            if (ex.count(t.name())) {
                if (used.insert(t.name()).second) ordered.push_back(t.name());
            } else if (!body_vars.count(t.name())) {
                fail(head_at, "head variable '" + t.name() + "' does not occur in the body");
            }
        }
        if (used.size() != ex.size()) fail(head_at, "declared existential variable missing from head");
        kb_.add_tgd({std::move(label), std::move(body), std::move(head), std::move(ordered)});
    }

    Atom parse_atom() {
        Token name = lex_.take();
        if (name.kind == Tok::Null) fail(name, "nulls may not appear in source text");
        if (name.kind != Tok::Ident) fail(name, "expected predicate name");
        const PredicateDecl* decl = kb_.decl(name.text);
        if (!decl) fail(name, "unknown predicate '" + name.text + "'");
        expect(lex_, Tok::LParen, "'('");
        Atom atom{name.text, {}};
        while (true) {
            Token t = lex_.take();
            switch (t.kind) {
            case Tok::Ident: atom.args.push_back(Term::constant(t.text)); break;
            case Tok::Variable: atom.args.push_back(Term::variable(t.text)); break;
            case Tok::Null: fail(t, "nulls may not appear in source text");
            default: fail(t, "expected term");
            }
            if (lex_.peek().kind == Tok::Comma) {
                lex_.take();
                continue;
            }
            break;
        }
        expect(lex_, Tok::RParen, "')'");
        if (atom.args.size() != decl->arity)
            fail(name, "predicate '" + name.text + "' expects " + std::to_string(decl->arity) +
                           " arguments, got " + std::to_string(atom.args.size()));
        return atom;
    }

    Lexer lex_;
    Ontology kb_;
};

} // namespace

Ontology parse_program(std::string_view text) { return ProgramParser(text).parse(); }

std::string print_program(const Ontology& kb) {
    std::string out;
    for (const auto& d : kb.declarations()) {
        out += "@pred " + d.name + "/" + std::to_string(d.arity);
        if (!d.features.empty()) {
            out += " features(";
            for (std::size_t i = 0; i < d.features.size(); ++i) {
                if (i > 0) out += ',';
                out += d.features[i];
            }
            out += ')';
        }
        out += ".\n";
    }
    for (const auto& f : kb.database()) out += f.text() + ".\n";
    auto body_text = [](const std::vector<Atom>& body) {
        std::string s;
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (i > 0) s += ", ";
            s += body[i].text();
        }
        return s;
    };
    for (const auto& t : kb.tgds()) {
        if (!t.label.empty()) out += t.label + ": ";
        out += body_text(t.body) + " -> ";
        if (!t.existential_vars.empty()) {
            out += "exists ";
            for (std::size_t i = 0; i < t.existential_vars.size(); ++i) {
                if (i > 0) out += ", ";
                out += t.existential_vars[i];
            }
            out += ' ';
        }
        out += t.head.text() + ".\n";
    }
    for (const auto& nc : kb.ncs()) {
        if (!nc.label.empty()) out += nc.label + ": ";
        out += body_text(nc.body) + " -> false.\n";
    }
    for (const auto& e : kb.egds()) {
        if (!e.label.empty()) out += e.label + ": ";
        out += body_text(e.body) + " -> " + e.lhs_var + " = " + e.rhs_var + ".\n";
    }
    return out;
}

ConjunctiveQuery parse_query(std::string_view text, const Ontology& kb) {
    Lexer lex(text);
    ConjunctiveQuery q;
    if (lex.peek().kind == Tok::Ident && lex.peek().text == "exists") {
        lex.take();
        while (true) {
            Token v = lex.take();
            if (v.kind != Tok::Variable) fail(v, "existential variable must start uppercase");
            q.existential_vars.push_back(v.text);
            if (lex.peek().kind == Tok::Comma) {
                lex.take();
                continue;
            }
            break;
        }
    }
    std::unordered_set<std::string> existential(q.existential_vars.begin(),
                                                q.existential_vars.end());
    if (existential.size() != q.existential_vars.size())
        throw ParseError(1, 1, "duplicate existential variable");
    std::unordered_set<std::string> seen_free;
    auto parse_atom = [&]() {
        Token name = lex.take();
        if (name.kind != Tok::Ident) fail(name, "expected predicate name");
        const PredicateDecl* decl = kb.decl(name.text);
        if (!decl) fail(name, "unknown predicate '" + name.text + "'");
        expect(lex, Tok::LParen, "'('");
        Atom atom{name.text, {}};
        while (true) {
            Token t = lex.take();
            if (t.kind == Tok::Ident) {
                atom.args.push_back(Term::constant(t.text));
            } else if (t.kind == Tok::Variable) {
                atom.args.push_back(Term::variable(t.text));
                if (!existential.count(t.text) && seen_free.insert(t.text).second)
                    q.free_vars.push_back(t.text);
            } else {
                fail(t, "expected term");
            }
            if (lex.peek().kind == Tok::Comma) {
                lex.take();
                continue;
            }
            break;
        }
        expect(lex, Tok::RParen, "')'");
        if (atom.args.size() != decl->arity)
            fail(name, "predicate '" + name.text + "' expects " + std::to_string(decl->arity) +
                           " arguments, got " + std::to_string(atom.args.size()));
        return atom;
    };
    q.atoms.push_back(parse_atom());
    while (lex.peek().kind == Tok::Amp) {
        lex.take();
        q.atoms.push_back(parse_atom());
    }
    if (lex.peek().kind != Tok::End) fail(lex.peek(), "unexpected trailing input");

    // Simple query: exactly one atom whose argument list is exactly the free
    // variables, in order.
    std::size_t matches = 0;
    std::size_t match_idx = 0;
    for (std::size_t i = 0; i < q.atoms.size(); ++i) {
        const Atom& a = q.atoms[i];
        if (a.args.size() != q.free_vars.size() || q.free_vars.empty()) continue;
        bool all = true;
        for (std::size_t j = 0; j < a.args.size(); ++j)
            if (!a.args[j].is_variable() || a.args[j].name() != q.free_vars[j]) {
                all = false;
                break;
            }
        if (all) {
            ++matches;
            match_idx = i;
        }
    }
    if (matches == 1) q.distinguished = match_idx;
    return q;
}

} // namespace reprank
