#include <padyn/errors.hpp>
#include <padyn/parser.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace padyn {

namespace {

struct Lexer {
    const std::string& s;
    size_t pos = 0;

    explicit Lexer(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw SyntaxError(std::string("expected '") + c + "'", pos);
    }
};

struct Parser {
    Lexer lex;
    const std::optional<std::vector<std::string>>& allowed;

    Parser(const std::string& text, const std::optional<std::vector<std::string>>& vars)
        : lex(text), allowed(vars) {}

    MPoly parse() {
        MPoly p = expr();
        if (!lex.eof()) throw SyntaxError("unexpected trailing input", lex.pos);
        return p;
    }

    MPoly expr() {
        MPoly acc = term();
        while (true) {
            if (lex.accept('+'))
                acc = acc + term();
            else if (lex.accept('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    MPoly term() {
        MPoly acc = unary();
        while (lex.accept('*')) acc = acc * unary();
        return acc;
    }

    MPoly unary() {
        if (lex.accept('-')) return -unary();
        return power();
    }

    MPoly power() {
        MPoly base = atom();
        if (lex.accept('^')) {
            unsigned e = integer_literal();
            return base.pow(e);
        }
        return base;
    }

    unsigned integer_literal() {
        lex.skip_ws();
        size_t start = lex.pos;
        std::string digits;
        while (lex.pos < lex.s.size() && std::isdigit(static_cast<unsigned char>(lex.s[lex.pos])))
            digits += lex.s[lex.pos++];
        if (digits.empty()) throw SyntaxError("expected integer exponent", start);
        return static_cast<unsigned>(std::stoul(digits));
    }

    MPoly atom() {
        lex.skip_ws();
        if (lex.pos >= lex.s.size()) throw SyntaxError("unexpected end of input", lex.pos);
        char c = lex.s[lex.pos];
        if (c == '(') {
            ++lex.pos;
            MPoly inner = expr();
            lex.expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Int num = read_int();
            if (lex.peek() == '/') {
                ++lex.pos;
                lex.skip_ws();
                if (lex.pos >= lex.s.size() || !std::isdigit(static_cast<unsigned char>(lex.s[lex.pos])))
                    throw SyntaxError("expected denominator", lex.pos);
                Int den = read_int();
                Rat r(num, den);
                r.canonicalize();
                return MPoly::constant(GRat(r));
            }
            return MPoly::constant(GRat(Rat(num)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (lex.pos < lex.s.size() &&
                   (std::isalnum(static_cast<unsigned char>(lex.s[lex.pos])) || lex.s[lex.pos] == '_'))
                name += lex.s[lex.pos++];
            if (name == "i") return MPoly::constant(GRat::I());
            if (allowed && std::find(allowed->begin(), allowed->end(), name) == allowed->end())
                throw UnknownVariable(name);
            return MPoly::var(name);
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", lex.pos);
    }

    Int read_int() {
        std::string digits;
        while (lex.pos < lex.s.size() && std::isdigit(static_cast<unsigned char>(lex.s[lex.pos])))
            digits += lex.s[lex.pos++];
        return Int(digits);
    }
};

}  // namespace

MPoly parse_poly(const std::string& text, const std::optional<std::vector<std::string>>& allowed_vars) {
    Parser p(text, allowed_vars);
    return p.parse();
}

std::array<MPoly, 3> MapDefinition::parse_components() const {
    std::array<MPoly, 3> out;
    for (size_t k = 0; k < 3; ++k) out[k] = parse_poly(component_text[k], vars);
    bool all_homog = true;
    int max_deg = 0;
    for (const auto& p : out) {
        all_homog = all_homog && p.is_homogeneous();
        max_deg = std::max(max_deg, p.total_degree());
    }
    int common = out[0].total_degree();
    bool equal_deg = all_homog && out[1].total_degree() == common && out[2].total_degree() == common;
    if (!all_homog || !equal_deg) {
        // Affine input: homogenize with the designated last variable.
        if (vars.size() < 3) throw ComputationError("map definition needs a homogenizing variable");
        for (auto& p : out) p = p.homogenized(vars.back(), max_deg);
    }
    return out;
}

std::string MapDefinition::serialize() const {
    std::ostringstream os;
    os << "name=" << name << "\n";
    os << "vars=";
    for (size_t i = 0; i < vars.size(); ++i) os << (i ? "," : "") << vars[i];
    os << "\n";
    for (size_t k = 0; k < 3; ++k) os << "P" << k << "=" << component_text[k] << "\n";
    os << "field=" << field << "\n";
    return os.str();
}

MapDefinition parse_map_file(const std::string& contents) {
    MapDefinition def;
    std::istringstream is(contents);
    std::string line;
    bool have[3] = {false, false, false};
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ComputationError("map file: malformed line: " + line);
        std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        if (key == "name") {
            def.name = val;
        } else if (key == "vars") {
            def.vars.clear();
            std::istringstream vs(val);
            std::string v;
            while (std::getline(vs, v, ',')) def.vars.push_back(v);
        } else if (key == "field") {
            def.field = val;
        } else if (key.size() == 2 && key[0] == 'P' && key[1] >= '0' && key[1] <= '2') {
            size_t k = static_cast<size_t>(key[1] - '0');
            def.component_text[k] = val;
            have[k] = true;
        } else {
            throw ComputationError("map file: unknown key: " + key);
        }
    }
    if (!(have[0] && have[1] && have[2])) throw ComputationError("map file: missing components");
    if (def.vars.empty()) throw ComputationError("map file: missing vars");
    return def;
}

MapDefinition builtin_map(const std::string& name) {
    MapDefinition def;
    def.vars = {"X", "Y", "Z"};
    if (name == "phi") {
        def.name = "phi";
        def.component_text = {"-Y^2", "X*(X-Z)", "-(X+Z)*(X-Z)"};
        return def;
    }
    if (name == "psi") {
        def.name = "psi";
        def.component_text = {"X*(X-Y)+2*Z^2", "(X+Y)*(X-Y)+Z^2", "Z^2"};
        return def;
    }
    if (name == "psi-affine") {
        def.name = "psi-affine";
        def.component_text = {"X*(X-Y)+2*Z^2", "(X+Y)*(X-Y)+Z^2", "Z^2"};
        return def;
    }
    throw ComputationError("no builtin map named " + name);
}

}  // namespace padyn
