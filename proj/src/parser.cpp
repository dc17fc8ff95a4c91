#include "defectont/parser.hpp"

#include <algorithm>
#include <cctype>

#include "defectont/decimal.hpp"

namespace defectont {

namespace {

enum class Tok : uint8_t { Name, Number, String, LParen, RParen, Colon, Newline, End };

struct Token {
    Tok kind;
    std::string text;
    SourcePos pos;
};

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

class Lexer {
  public:
    Lexer(std::string_view text, std::string_view file) : text_(text), file_(file) {}

    Token next() {
        skip_blanks();
        SourcePos pos{line_, col_};
        if (i_ >= text_.size()) return {Tok::End, "", pos};
        char c = text_[i_];
        if (c == '\n') {
            advance();
            return {Tok::Newline, "\n", pos};
        }
        if (c == '(') {
            advance();
            return {Tok::LParen, "(", pos};
        }
        if (c == ')') {
            advance();
            return {Tok::RParen, ")", pos};
        }
        if (c == ':') {
            advance();
            return {Tok::Colon, ":", pos};
        }
        if (c == '"') return lex_string(pos);
        if (is_name_start(c)) return lex_name(pos);
        if (is_digit(c) || ((c == '-' || c == '+') && i_ + 1 < text_.size() &&
                            is_digit(text_[i_ + 1]))) {
            return lex_number(pos);
        }
        throw DloError(ErrorCategory::Lexical,
                       std::string("unexpected character '") + c + "'", pos,
                       std::string(file_));
    }

  private:
    void advance() {
        if (text_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    void skip_blanks() {
        while (i_ < text_.size()) {
            char c = text_[i_];
            if (c == '#') {
                while (i_ < text_.size() && text_[i_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r') {
                advance();
            } else {
                break;
            }
        }
    }

    Token lex_name(SourcePos pos) {
        size_t start = i_;
        while (i_ < text_.size() && is_name_char(text_[i_])) advance();
        return {Tok::Name, std::string(text_.substr(start, i_ - start)), pos};
    }

    Token lex_number(SourcePos pos) {
        size_t start = i_;
        if (text_[i_] == '-' || text_[i_] == '+') advance();
        bool seen_point = false;
        while (i_ < text_.size() &&
               (is_digit(text_[i_]) || (text_[i_] == '.' && !seen_point))) {
            if (text_[i_] == '.') seen_point = true;
            advance();
        }
        std::string t(text_.substr(start, i_ - start));
        if (t.back() == '.') {
            throw DloError(ErrorCategory::Lexical, "malformed number '" + t + "'", pos,
                           std::string(file_));
        }
        return {Tok::Number, std::move(t), pos};
    }

    Token lex_string(SourcePos pos) {
        advance();  // opening quote
        size_t start = i_;
        while (i_ < text_.size() && text_[i_] != '"' && text_[i_] != '\n') advance();
        if (i_ >= text_.size() || text_[i_] == '\n') {
            throw DloError(ErrorCategory::Lexical, "unterminated string literal", pos,
                           std::string(file_));
        }
        std::string t(text_.substr(start, i_ - start));
        advance();  // closing quote
        return {Tok::String, std::move(t), pos};
    }

    std::string_view text_;
    std::string_view file_;
    size_t i_ = 0;
    uint32_t line_ = 1;
    uint32_t col_ = 1;
};

const char* const kReserved[] = {"ontology", "import", "class", "role", "attr",
                                 "individual", "subclass", "equiv", "disjoint",
                                 "subrole", "domain", "range", "instance", "rel",
                                 "data", "top", "bot", "not", "and", "or", "some",
                                 "all", "one", "inv", "inverse", "symmetric",
                                 "decimal", "string"};

bool is_reserved(std::string_view word) {
    return std::find(std::begin(kReserved), std::end(kReserved), word) !=
           std::end(kReserved);
}

class Parser {
  public:
    Parser(std::string_view text, std::string_view file) : lexer_(text, file), file_(file) {
        cur_ = lexer_.next();
    }

    SourceModule parse_module() {
        SourceModule m;
        m.source_name = std::string(file_);
        skip_newlines();
        expect_keyword("ontology");
        Token name = expect(Tok::Name, "module name");
        m.name = name.text;
        m.name_pos = name.pos;
        end_statement();
        while (cur_.kind != Tok::End) {
            skip_newlines();
            if (cur_.kind == Tok::End) break;
            parse_statement(m);
        }
        check_duplicates(m);
        return m;
    }

    AstConcept parse_single_concept() {
        AstConcept c = parse_concept();
        expect(Tok::End, "end of input");
        return c;
    }

    AstAxiom parse_single_axiom() {
        SourceModule dummy;
        parse_statement(dummy, /*axioms_only=*/true);
        if (dummy.axioms.size() != 1) {
            throw DloError(ErrorCategory::Syntax, "expected a single axiom statement",
                           cur_.pos, std::string(file_));
        }
        return dummy.axioms[0];
    }

  private:
    [[noreturn]] void fail(const std::string& msg, SourcePos pos) {
        throw DloError(ErrorCategory::Syntax, msg, pos, std::string(file_));
    }

    Token advance() {
        Token t = cur_;
        cur_ = lexer_.next();
        return t;
    }

    Token expect(Tok kind, const char* what) {
        if (cur_.kind != kind) {
            fail(std::string("expected ") + what + ", found '" + describe(cur_) + "'",
                 cur_.pos);
        }
        return advance();
    }

    void expect_keyword(const char* word) {
        if (cur_.kind != Tok::Name || cur_.text != word) {
            fail(std::string("expected '") + word + "', found '" + describe(cur_) + "'",
                 cur_.pos);
        }
        advance();
    }

    static std::string describe(const Token& t) {
        switch (t.kind) {
            case Tok::Newline: return "end of line";
            case Tok::End: return "end of input";
            default: return t.text;
        }
    }

    void skip_newlines() {
        while (cur_.kind == Tok::Newline) advance();
    }

    void end_statement() {
        if (cur_.kind == Tok::Newline) {
            advance();
            return;
        }
        if (cur_.kind == Tok::End) return;
        fail("expected end of statement, found '" + describe(cur_) + "'", cur_.pos);
    }

    std::string parse_name(const char* what) {
        Token t = expect(Tok::Name, what);
        if (is_reserved(t.text)) {
            fail("reserved word '" + t.text + "' cannot be used as a name", t.pos);
        }
        return t.text;
    }

    AstRole parse_role() {
        if (cur_.kind == Tok::LParen) {
            Token open = advance();
            expect_keyword("inv");
            AstRole r;
            r.name = parse_name("role name");
            r.inverse = true;
            r.pos = open.pos;
            expect(Tok::RParen, "')'");
            return r;
        }
        AstRole r;
        r.pos = cur_.pos;
        r.name = parse_name("role name");
        return r;
    }

    AstConcept parse_concept() {
        if (cur_.kind == Tok::Name) {
            Token t = advance();
            AstConcept c;
            c.pos = t.pos;
            if (t.text == "top") {
                c.kind = AstConceptKind::Top;
            } else if (t.text == "bot") {
                c.kind = AstConceptKind::Bottom;
            } else if (is_reserved(t.text)) {
                fail("reserved word '" + t.text + "' cannot be used as a class name",
                     t.pos);
            } else {
                c.kind = AstConceptKind::Named;
                c.name = t.text;
            }
            return c;
        }
        Token open = expect(Tok::LParen, "concept");
        Token op = expect(Tok::Name, "concept operator");
        AstConcept c;
        c.pos = open.pos;
        if (op.text == "not") {
            c.kind = AstConceptKind::Not;
            c.kids.push_back(parse_concept());
        } else if (op.text == "and" || op.text == "or") {
            c.kind = op.text == "and" ? AstConceptKind::And : AstConceptKind::Or;
            while (cur_.kind != Tok::RParen && cur_.kind != Tok::Newline &&
                   cur_.kind != Tok::End) {
                c.kids.push_back(parse_concept());
            }
            if (c.kids.size() < 2) {
                throw DloError(ErrorCategory::Arity,
                               "'" + op.text + "' needs at least two operands", op.pos,
                               std::string(file_));
            }
        } else if (op.text == "some" || op.text == "all") {
            c.kind = op.text == "some" ? AstConceptKind::Some : AstConceptKind::All;
            c.role = parse_role();
            c.kids.push_back(parse_concept());
        } else if (op.text == "one") {
            c.kind = AstConceptKind::Nominal;
            c.name = parse_name("individual name");
        } else {
            fail("expected concept operator, found '" + op.text + "'", op.pos);
        }
        expect(Tok::RParen, "')'");
        return c;
    }

    void parse_statement(SourceModule& m, bool axioms_only = false) {
        Token head = expect(Tok::Name, "statement keyword");
        const std::string& k = head.text;
        auto decl = [&](NameKind kind) {
            AstDecl d;
            d.kind = kind;
            d.pos = head.pos;
            d.name = parse_name("name");
            return d;
        };
        auto axiom = [&](AstAxiomKind kind) {
            AstAxiom a;
            a.kind = kind;
            a.pos = head.pos;
            return a;
        };
        if (!axioms_only && k == "import") {
            AstImport imp;
            imp.pos = head.pos;
            imp.name = parse_name("module name");
            m.imports.push_back(std::move(imp));
        } else if (!axioms_only && k == "class") {
            m.decls.push_back(decl(NameKind::Class));
        } else if (!axioms_only && k == "role") {
            AstDecl d = decl(NameKind::Role);
            if (cur_.kind == Tok::Name && cur_.text == "inverse") {
                advance();
                d.inverse_name = parse_name("inverse role name");
            }
            if (cur_.kind == Tok::Name && cur_.text == "symmetric") {
                advance();
                d.symmetric = true;
            }
            m.decls.push_back(std::move(d));
        } else if (!axioms_only && k == "attr") {
            AstDecl d = decl(NameKind::Attribute);
            expect(Tok::Colon, "':'");
            Token t = expect(Tok::Name, "'decimal' or 'string'");
            if (t.text == "decimal") {
                d.attr_type = AttrType::Decimal;
            } else if (t.text == "string") {
                d.attr_type = AttrType::String;
            } else {
                fail("expected 'decimal' or 'string', found '" + t.text + "'", t.pos);
            }
            m.decls.push_back(std::move(d));
        } else if (!axioms_only && k == "individual") {
            m.decls.push_back(decl(NameKind::Individual));
        } else if (k == "subclass" || k == "equiv") {
            AstAxiom a = axiom(k == "subclass" ? AstAxiomKind::SubClass
                                               : AstAxiomKind::Equiv);
            a.concepts.push_back(parse_concept());
            a.concepts.push_back(parse_concept());
            m.axioms.push_back(std::move(a));
        } else if (k == "disjoint") {
            AstAxiom a = axiom(AstAxiomKind::Disjoint);
            a.names.push_back(parse_name("class name"));
            a.names.push_back(parse_name("class name"));
            while (cur_.kind == Tok::Name) a.names.push_back(parse_name("class name"));
            m.axioms.push_back(std::move(a));
        } else if (k == "subrole") {
            AstAxiom a = axiom(AstAxiomKind::SubRole);
            a.roles.push_back(parse_role());
            a.roles.push_back(parse_role());
            m.axioms.push_back(std::move(a));
        } else if (k == "domain" || k == "range") {
            AstAxiom a = axiom(k == "domain" ? AstAxiomKind::Domain
                                             : AstAxiomKind::Range);
            a.roles.push_back(parse_role());
            a.concepts.push_back(parse_concept());
            m.axioms.push_back(std::move(a));
        } else if (k == "instance") {
            AstAxiom a = axiom(AstAxiomKind::Instance);
            a.names.push_back(parse_name("individual name"));
            a.concepts.push_back(parse_concept());
            m.axioms.push_back(std::move(a));
        } else if (k == "rel") {
            AstAxiom a = axiom(AstAxiomKind::Rel);
            a.names.push_back(parse_name("individual name"));
            a.roles.push_back(parse_role());
            a.names.push_back(parse_name("individual name"));
            m.axioms.push_back(std::move(a));
        } else if (k == "data") {
            AstAxiom a = axiom(AstAxiomKind::Data);
            a.names.push_back(parse_name("individual name"));
            a.names.push_back(parse_name("attribute name"));
            if (cur_.kind == Tok::Number) {
                Token t = advance();
                a.literal = t.text;
                if (!Decimal::try_parse(a.literal)) {
                    throw DloError(ErrorCategory::Value,
                                   "bad decimal literal '" + a.literal + "'", t.pos,
                                   std::string(file_));
                }
            } else if (cur_.kind == Tok::String) {
                a.literal = advance().text;
                a.literal_is_string = true;
            } else {
                fail("expected literal, found '" + describe(cur_) + "'", cur_.pos);
            }
            if (cur_.kind == Tok::Name) a.unit = parse_name("unit code");
            m.axioms.push_back(std::move(a));
        } else {
            fail("unknown statement '" + k + "'", head.pos);
        }
        end_statement();
    }

    void check_duplicates(const SourceModule& m) {
        std::vector<std::pair<NameKind, std::string>> seen;
        for (const AstDecl& d : m.decls) {
            auto key = std::make_pair(d.kind, d.name);
            if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
                throw DloError(ErrorCategory::Duplicate,
                               "duplicate declaration of " +
                                   std::string(to_string(d.kind)) + " '" + d.name + "'",
                               d.pos, std::string(file_));
            }
            seen.push_back(std::move(key));
        }
    }

    Lexer lexer_;
    std::string_view file_;
    Token cur_;
};

std::string serialize_concept(const AstConcept& c) {
    switch (c.kind) {
        case AstConceptKind::Top: return "top";
        case AstConceptKind::Bottom: return "bot";
        case AstConceptKind::Named: return c.name;
        case AstConceptKind::Nominal: return "(one " + c.name + ")";
        case AstConceptKind::Not: return "(not " + serialize_concept(c.kids[0]) + ")";
        case AstConceptKind::And:
        case AstConceptKind::Or: {
            std::string out = c.kind == AstConceptKind::And ? "(and" : "(or";
            for (const auto& k : c.kids) out += " " + serialize_concept(k);
            return out + ")";
        }
        case AstConceptKind::Some:
        case AstConceptKind::All: {
            std::string out = c.kind == AstConceptKind::Some ? "(some " : "(all ";
            out += c.role.inverse ? "(inv " + c.role.name + ")" : c.role.name;
            return out + " " + serialize_concept(c.kids[0]) + ")";
        }
    }
    internal_error("serialize_concept: bad kind");
}

std::string serialize_role(const AstRole& r) {
    return r.inverse ? "(inv " + r.name + ")" : r.name;
}

}  // namespace

SourceModule parse_module(std::string_view text, std::string_view filename) {
    Parser p(text, filename);
    return p.parse_module();
}

AstConcept parse_concept_text(std::string_view text) {
    Parser p(text, {});
    return p.parse_single_concept();
}

AstAxiom parse_axiom_text(std::string_view text) {
    Parser p(text, {});
    return p.parse_single_axiom();
}

std::string serialize_statement(const AstAxiom& a) {
    switch (a.kind) {
        case AstAxiomKind::SubClass:
            return "subclass " + serialize_concept(a.concepts[0]) + " " +
                   serialize_concept(a.concepts[1]);
        case AstAxiomKind::Equiv:
            return "equiv " + serialize_concept(a.concepts[0]) + " " +
                   serialize_concept(a.concepts[1]);
        case AstAxiomKind::Disjoint: {
            std::string out = "disjoint";
            for (const auto& n : a.names) out += " " + n;
            return out;
        }
        case AstAxiomKind::SubRole:
            return "subrole " + serialize_role(a.roles[0]) + " " +
                   serialize_role(a.roles[1]);
        case AstAxiomKind::Domain:
            return "domain " + serialize_role(a.roles[0]) + " " +
                   serialize_concept(a.concepts[0]);
        case AstAxiomKind::Range:
            return "range " + serialize_role(a.roles[0]) + " " +
                   serialize_concept(a.concepts[0]);
        case AstAxiomKind::Instance:
            return "instance " + a.names[0] + " " + serialize_concept(a.concepts[0]);
        case AstAxiomKind::Rel:
            return "rel " + a.names[0] + " " + serialize_role(a.roles[0]) + " " +
                   a.names[1];
        case AstAxiomKind::Data: {
            std::string out = "data " + a.names[0] + " " + a.names[1] + " ";
            if (a.literal_is_string) {
                out += "\"" + a.literal + "\"";
            } else {
                out += a.literal;
                if (!a.unit.empty()) out += " " + a.unit;
            }
            return out;
        }
    }
    internal_error("serialize_statement: bad kind");
}

std::string serialize_decl(const AstDecl& d) {
    switch (d.kind) {
        case NameKind::Class: return "class " + d.name;
        case NameKind::Role: {
            std::string out = "role " + d.name;
            if (!d.inverse_name.empty()) out += " inverse " + d.inverse_name;
            if (d.symmetric) out += " symmetric";
            return out;
        }
        case NameKind::Attribute:
            return "attr " + d.name + " : " +
                   (d.attr_type == AttrType::Decimal ? "decimal" : "string");
        case NameKind::Individual: return "individual " + d.name;
    }
    internal_error("serialize_decl: bad kind");
}

std::string serialize_module(const SourceModule& m) {
    std::string out = "ontology " + m.name + "\n";
    for (const auto& imp : m.imports) out += "import " + imp.name + "\n";
    std::vector<const AstDecl*> decls;
    decls.reserve(m.decls.size());
    for (const auto& d : m.decls) decls.push_back(&d);
    std::stable_sort(decls.begin(), decls.end(), [](const AstDecl* a, const AstDecl* b) {
        if (a->kind != b->kind) return static_cast<int>(a->kind) < static_cast<int>(b->kind);
        return a->name < b->name;
    });
    for (const AstDecl* d : decls) out += serialize_decl(*d) + "\n";
    for (const auto& a : m.axioms) out += serialize_statement(a) + "\n";
    return out;
}

bool structurally_equal(const SourceModule& a, const SourceModule& b) {
    return serialize_module(a) == serialize_module(b);
}

bool is_valid_dlo_name(std::string_view name) {
    if (name.empty() || !is_name_start(name[0])) return false;
    for (char c : name) {
        if (!is_name_char(c)) return false;
    }
    return !is_reserved(name);
}

}  // namespace defectont
