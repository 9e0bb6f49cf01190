#pragma once

#include <padyn/mpoly.hpp>

#include <optional>
#include <string>
#include <vector>

namespace padyn {

struct SyntaxError : std::runtime_error {
    size_t position;
    SyntaxError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

struct UnknownVariable : std::runtime_error {
    explicit UnknownVariable(const std::string& name)
        : std::runtime_error("unknown variable: " + name) {}
};

/// Grammar: integers, i, variables, + - * ^ and parentheses; explicit *
/// required (no juxtaposition); rational literals as a/b. Whitespace is
/// ignored. Precedence: ^ then unary - then * then binary +/-.
MPoly parse_poly(const std::string& text,
                 const std::optional<std::vector<std::string>>& allowed_vars = std::nullopt);

/// A named rational map as read from a map file (UTF-8 key=value lines:
/// name=, vars=X,Y,Z, P0=, P1=, P2=, field=Qi).
struct MapDefinition {
    std::string name;
    std::vector<std::string> vars;
    std::array<std::string, 3> component_text;
    std::string field = "Qi";

    std::array<MPoly, 3> parse_components() const;
    std::string serialize() const;
};

MapDefinition parse_map_file(const std::string& contents);

/// Built-in map definitions (phi of the plane toolkit, psi the polynomial
/// example), byte-identical with the files shipped under maps/.
MapDefinition builtin_map(const std::string& name);

}  // namespace padyn
