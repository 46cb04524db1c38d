#include "bv/serialize.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace bv {

static std::string gen_text(const ModelAlgebra& m, Gen g) {
    std::string name = m.gen_name(g);
    unsigned j = jet_of(g);
    if (j == 0) return name;
    return "(D" + std::to_string(j) + " " + name + ")";
}

static std::string factor_text(const ModelAlgebra& m, const Factor& f) {
    std::string s = gen_text(m, f.g);
    if (f.e != 1) s += "^" + std::to_string(f.e);
    return s;
}

std::string serialize(const Poly& f) {
    if (f.is_zero()) return "0";
    const ModelAlgebra& m = *f.model();
    std::vector<std::string> parts;
    for (auto& [mon, c] : f.terms()) {
        if (mon.empty()) {
            parts.push_back(rat_to_string(c));
            continue;
        }
        std::ostringstream os;
        bool trivial_coeff = (c == 1);
        if (!trivial_coeff || mon.factors.size() > 1) os << "(* ";
        if (!trivial_coeff) os << rat_to_string(c) << " ";
        for (size_t i = 0; i < mon.factors.size(); ++i) {
            if (i) os << " ";
            os << factor_text(m, mon.factors[i]);
        }
        if (!trivial_coeff || mon.factors.size() > 1) os << ")";
        parts.push_back(os.str());
    }
    if (parts.size() == 1) return parts[0];
    std::string s = "(+ ";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += " ";
        s += parts[i];
    }
    return s + ")";
}

// ---------------------------------------------------------------------------

namespace {

struct Token {
    enum Kind { LParen, RParen, Atom, End } kind;
    std::string text;
    size_t pos;
};

struct Lexer {
    const std::string& s;
    size_t i = 0;
    explicit Lexer(const std::string& str) : s(str) {}
    Token next() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
        if (i >= s.size()) return {Token::End, "", i};
        if (s[i] == '(') return {Token::LParen, "(", i++};
        if (s[i] == ')') return {Token::RParen, ")", i++};
        size_t start = i;
        while (i < s.size() && !std::isspace((unsigned char)s[i]) && s[i] != '(' && s[i] != ')')
            ++i;
        return {Token::Atom, s.substr(start, i - start), start};
    }
    Token peek() {
        size_t save = i;
        Token t = next();
        i = save;
        return t;
    }
};

bool is_integer(const std::string& t) {
    if (t.empty()) return false;
    size_t k = (t[0] == '-') ? 1 : 0;
    if (k == t.size()) return false;
    for (; k < t.size(); ++k)
        if (!std::isdigit((unsigned char)t[k])) return false;
    return true;
}

bool is_rational(const std::string& t) {
    auto slash = t.find('/');
    if (slash == std::string::npos) return is_integer(t);
    return is_integer(t.substr(0, slash)) && is_integer(t.substr(slash + 1));
}

Rat parse_rational(const std::string& t) {
    auto slash = t.find('/');
    if (slash == std::string::npos) return Rat(Int(t));
    return Rat(Int(t.substr(0, slash)), Int(t.substr(slash + 1)));
}

struct Parser {
    const ModelAlgebra& m;
    Lexer lex;
    Parser(const ModelAlgebra& model, const std::string& text) : m(model), lex(text) {}

    [[noreturn]] void fail(const std::string& why, size_t pos) { throw ParseError(why, pos); }

    // NAME with optional trailing ^exponent; whole atom must be consumed
    bool match_gen_atom(const std::string& atom, Gen& g, int& exp) {
        int best_len = -1;
        Gen best_g = 0;
        int best_e = 1;
        for (int idx = 0; idx < m.num_fields(); ++idx) {
            const auto& d = m.field(idx).desc;
            const std::string& nm = d.name;
            if (atom.compare(0, nm.size(), nm) != 0) continue;
            size_t p = nm.size();
            int comp = 0;
            if (d.components > 1) {
                if (p >= atom.size() || atom[p] != d.comp_sep) continue;
                ++p;
                size_t q = p;
                while (q < atom.size() && std::isdigit((unsigned char)atom[q])) ++q;
                if (q == p) continue;
                comp = std::stoi(atom.substr(p, q - p));
                if (comp >= d.components) continue;
                p = q;
            }
            int e = 1;
            if (p < atom.size()) {
                if (atom[p] != '^') continue;
                std::string rest = atom.substr(p + 1);
                if (!is_integer(rest)) continue;
                e = std::stoi(rest);
                p = atom.size();
            }
            if (int(nm.size()) > best_len) {
                best_len = int(nm.size());
                best_g = make_gen(idx, comp, 0);
                best_e = e;
            }
        }
        if (best_len < 0) return false;
        g = best_g;
        exp = best_e;
        return true;
    }

    // expects a generator (bare or jet-wrapped) and optional exponent
    Poly parse_factor(Token t) {
        if (t.kind == Token::Atom) {
            Gen g;
            int e;
            if (!match_gen_atom(t.text, g, e)) fail("unknown generator '" + t.text + "'", t.pos);
            return Poly::generator(m, g, e);
        }
        if (t.kind != Token::LParen) fail("expected factor", t.pos);
        Token head = lex.next();
        if (head.kind != Token::Atom || head.text.size() < 2 || head.text[0] != 'D' ||
            !is_integer(head.text.substr(1)))
            fail("expected jet marker Dk", head.pos);
        int jet = std::stoi(head.text.substr(1));
        if (jet < 1) fail("jet order in (Dk ...) must be >= 1", head.pos);
        Token name = lex.next();
        if (name.kind != Token::Atom) fail("expected generator name", name.pos);
        Gen g;
        int e;
        if (!match_gen_atom(name.text, g, e) || e != 1)
            fail("unknown generator '" + name.text + "'", name.pos);
        Token close = lex.next();
        if (close.kind != Token::RParen) fail("expected ')'", close.pos);
        int exp = 1;
        Token after = lex.peek();
        if (after.kind == Token::Atom && after.text[0] == '^' &&
            is_integer(after.text.substr(1))) {
            lex.next();
            exp = std::stoi(after.text.substr(1));
        }
        return Poly::generator(m, raise_jet(g, jet), exp);
    }

    Poly parse_expr(Token t) {
        if (t.kind == Token::Atom) {
            if (t.text == "0") return Poly(&m);
            if (is_rational(t.text)) return Poly(&m, parse_rational(t.text));
            return parse_factor(t);
        }
        if (t.kind != Token::LParen) fail("expected expression", t.pos);
        Token head = lex.next();
        if (head.kind == Token::Atom && head.text == "+") {
            Poly r(&m);
            int n = 0;
            for (;;) {
                Token u = lex.next();
                if (u.kind == Token::RParen) break;
                if (u.kind == Token::End) fail("unterminated sum", u.pos);
                r += parse_expr(u);
                ++n;
            }
            if (n == 0) fail("empty sum", head.pos);
            return r;
        }
        if (head.kind == Token::Atom && head.text == "*") {
            Poly r(&m, 1);
            int n = 0;
            for (;;) {
                Token u = lex.peek();
                if (u.kind == Token::RParen) { lex.next(); break; }
                if (u.kind == Token::End) fail("unterminated product", u.pos);
                lex.next();
                if (u.kind == Token::Atom && is_rational(u.text)) r = r * parse_rational(u.text);
                else r = r * parse_factor(u);
                ++n;
            }
            if (n == 0) fail("empty product", head.pos);
            return r;
        }
        // a jet generator like (D1 x^0)
        lex.i = head.pos;  // rewind inside the paren
        return parse_factor_from_head(t);
    }

    Poly parse_factor_from_head(Token lparen) {
        // re-parse as factor starting at the '('
        return parse_factor(lparen);
    }

    Poly run() {
        Token t = lex.next();
        Poly r = parse_expr(t);
        Token end = lex.next();
        if (end.kind != Token::End) fail("trailing input", end.pos);
        return r;
    }
};

} // namespace

Poly parse(const ModelAlgebra& model, const std::string& text) {
    Parser p(model, text);
    return p.run();
}

} // namespace bv
