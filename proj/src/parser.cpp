#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "jastit/syntax.hpp"

namespace jastit {

SyntaxError::SyntaxError(std::size_t position, std::vector<std::string> expected, std::string found)
    : Error([&] {
          std::string msg = "syntax error at offset " + std::to_string(position) + ": expected ";
          for (std::size_t i = 0; i < expected.size(); ++i) {
              if (i) msg += (i + 1 == expected.size()) ? " or " : ", ";
              msg += expected[i];
          }
          msg += ", found " + found;
          return msg;
      }()),
      position_(position),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

enum class Tok {
    Ident,
    Int,
    LParen,
    RParen,
    LBracket,
    RBracket,
    And,
    Or,
    Not,
    Imp,
    Iff,
    Colon,
    Star,
    Plus,
    Bang,
    Box,
    Dia,
    Know,
    Evid,
    True,
    False,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
}

struct Utf8Symbol {
    std::string_view bytes;
    Tok kind;
};

// Unicode spellings accepted alongside the ASCII forms.
constexpr Utf8Symbol kUnicode[] = {
    {"∧", Tok::And},   // ∧
    {"∨", Tok::Or},    // ∨
    {"¬", Tok::Not},   // ¬
    {"→", Tok::Imp},   // →
    {"↔", Tok::Iff},   // ↔
    {"□", Tok::Box},   // □
    {"◇", Tok::Dia},   // ◇
    {"×", Tok::Star},  // ×
    {"⊤", Tok::True},  // ⊤
    {"⊥", Tok::False}, // ⊥
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (std::isalpha(c) || c == '_') {
            std::size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) {
                ++j;
            }
            std::string word(s.substr(i, j - i));
            Tok kind = Tok::Ident;
            if (word == "Box") kind = Tok::Box;
            else if (word == "Dia") kind = Tok::Dia;
            else if (word == "K") kind = Tok::Know;
            else if (word == "E") kind = Tok::Evid;
            else if (word == "true") kind = Tok::True;
            else if (word == "false") kind = Tok::False;
            out.push_back({kind, std::move(word), i});
            i = j;
            continue;
        }
        if (std::isdigit(c)) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Int, std::string(s.substr(i, j - i)), i});
            i = j;
            continue;
        }
        auto two = s.substr(i, 3);
        if (two.rfind("<->", 0) == 0) {
            out.push_back({Tok::Iff, "<->", i});
            i += 3;
            continue;
        }
        if (s.substr(i, 2) == "->") {
            out.push_back({Tok::Imp, "->", i});
            i += 2;
            continue;
        }
        Tok single = Tok::End;
        switch (c) {
            case '(': single = Tok::LParen; break;
            case ')': single = Tok::RParen; break;
            case '[': single = Tok::LBracket; break;
            case ']': single = Tok::RBracket; break;
            case '&': single = Tok::And; break;
            case '|': single = Tok::Or; break;
            case '~': single = Tok::Not; break;
            case ':': single = Tok::Colon; break;
            case '*': single = Tok::Star; break;
            case '+': single = Tok::Plus; break;
            case '!': single = Tok::Bang; break;
            default: break;
        }
        if (single != Tok::End) {
            out.push_back({single, std::string(1, s[i]), i});
            ++i;
            continue;
        }
        bool matched = false;
        for (const auto& sym : kUnicode) {
            if (s.substr(i, sym.bytes.size()) == sym.bytes) {
                out.push_back({sym.kind, std::string(sym.bytes), i});
                i += sym.bytes.size();
                matched = true;
                break;
            }
        }
        if (!matched) {
            throw SyntaxError(i, {"a formula token"}, "'" + std::string(1, s[i]) + "'");
        }
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

    Formula formula_to_end() {
        Formula f = parse_iff();
        expect_end({"'&'", "'|'", "'->'", "'<->'", "end of input"});
        return f;
    }

    Poly poly_to_end() {
        auto p = parse_sum();
        if (!p) fail({"a polynomial"});
        expect_end({"'+'", "'*'", "end of input"});
        return *p;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    bool at(Tok k) const { return peek().kind == k; }
    void advance() { ++pos_; }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        throw SyntaxError(peek().pos, std::move(expected), describe(peek()));
    }

    void expect(Tok k, const char* what) {
        if (!at(k)) fail({what});
        advance();
    }

    void expect_end(std::vector<std::string> expected) {
        if (!at(Tok::End)) fail(std::move(expected));
    }

    Formula parse_iff() {
        Formula lhs = parse_imp();
        if (at(Tok::Iff)) {
            advance();
            Formula rhs = parse_imp();
            return iff(lhs, rhs);
        }
        return lhs;
    }

    Formula parse_imp() {
        Formula lhs = parse_or();
        if (at(Tok::Imp)) {
            advance();
            Formula rhs = parse_imp();
            return implies(lhs, rhs);
        }
        return lhs;
    }

    Formula parse_or() {
        Formula acc = parse_and();
        while (at(Tok::Or)) {
            advance();
            acc = disj(acc, parse_and());
        }
        return acc;
    }

    Formula parse_and() {
        Formula acc = parse_unary();
        while (at(Tok::And)) {
            advance();
            acc = Formula::conj(acc, parse_unary());
        }
        return acc;
    }

    Formula parse_unary() {
        switch (peek().kind) {
            case Tok::Not: advance(); return Formula::neg(parse_unary());
            case Tok::Box: advance(); return Formula::box(parse_unary());
            case Tok::Dia: advance(); return dia(parse_unary());
            case Tok::Know: advance(); return Formula::knows(parse_unary());
            case Tok::LBracket: {
                advance();
                if (!at(Tok::Int)) fail({"an agent index"});
                const Agent j = std::stoi(peek().text);
                advance();
                expect(Tok::RBracket, "']'");
                return Formula::cstit(j, parse_unary());
            }
            default: break;
        }
        // A polynomial followed by ':' starts a justification formula.
        const std::size_t saved = pos_;
        if (auto p = try_poly(); p && at(Tok::Colon)) {
            advance();
            return Formula::proves(*p, parse_unary());
        }
        pos_ = saved;
        return parse_primary();
    }

    Formula parse_primary() {
        switch (peek().kind) {
            case Tok::Ident: {
                Formula f = Formula::atom(peek().text);
                advance();
                return f;
            }
            case Tok::True: advance(); return verum();
            case Tok::False: advance(); return falsum();
            case Tok::Evid: {
                advance();
                auto p = parse_sum();
                if (!p) fail({"a polynomial after 'E'"});
                return Formula::announced(*p);
            }
            case Tok::LParen: {
                advance();
                Formula f = parse_iff();
                expect(Tok::RParen, "')'");
                return f;
            }
            default:
                fail({"a propositional variable", "'('", "'~'", "'Box'", "'Dia'", "'K'", "'E'",
                      "'['", "a polynomial"});
        }
    }

    std::optional<Poly> try_poly() {
        try {
            return parse_sum();
        } catch (const SyntaxError&) {
            return std::nullopt;
        }
    }

    std::optional<Poly> parse_sum() {
        auto acc = parse_prod();
        if (!acc) return std::nullopt;
        while (at(Tok::Plus)) {
            advance();
            auto rhs = parse_prod();
            if (!rhs) fail({"a polynomial"});
            acc = Poly::sum(*acc, *rhs);
        }
        return acc;
    }

    std::optional<Poly> parse_prod() {
        auto acc = parse_check();
        if (!acc) return std::nullopt;
        while (at(Tok::Star)) {
            advance();
            auto rhs = parse_check();
            if (!rhs) fail({"a polynomial"});
            acc = Poly::app(*acc, *rhs);
        }
        return acc;
    }

    std::optional<Poly> parse_check() {
        switch (peek().kind) {
            case Tok::Bang: {
                advance();
                auto arg = parse_check();
                if (!arg) fail({"a polynomial after '!'"});
                return Poly::check(*arg);
            }
            case Tok::Ident: {
                Poly p = Poly::named(peek().text);
                advance();
                return p;
            }
            case Tok::LParen: {
                advance();
                auto inner = parse_sum();
                if (!inner) return std::nullopt;
                expect(Tok::RParen, "')'");
                return inner;
            }
            default: return std::nullopt;
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).formula_to_end(); }

Poly parse_poly(std::string_view text) { return Parser(text).poly_to_end(); }

}  // namespace jastit
