#pragma once

// Line-oriented bench description format.
//
//   # comment
//   param theta=0                         variable with a default value
//   input gaussian pol=d                  pol: h v d a r l
//   input state name=hr_vl                hh_vv hv_vh hr_vl scalar_hr
//   input mode name=hg10 pol=h            gaussian lg+1 lg-1 hg10 hg01
//   element qwp angle=45 [on=PATH,...]
//   element hwp angle=-45+$theta
//   element waveplate retardance=90 angle=30
//   element qhq phase=60
//   element spp charge=+1
//   element reflect
//   element phase value=180
//   element pbs angle=0 [on=IN | on=T_IN,R_IN] [out=T,R | out=OUT]
//   element bs [on=IN | on=A,B] [out=A,B | out=P1,P2]
//   tap name=PATH
//
// Beams travel on named paths. `input` creates path "in". A splitter with
// one input path replaces it by two (pbs: t,r; bs: a,b by default); with
// two input paths it recombines them (pbs: out; bs: port1,port2). Other
// elements act on the paths listed in `on`, or on every live path.
// Numeric values are expressions over decimal literals and $variables with
// + - * / and parentheses; angles are in degrees.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lumenbell::bench {

/// what() reads "line L: message (column C)".
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message);

    int line() const { return line_; }
    int column() const { return column_; }
    /// Message without the location prefix.
    const std::string& detail() const { return detail_; }

private:
    int line_;
    int column_;
    std::string detail_;
};

struct Expr {
    enum class Op { number, variable, negate, add, subtract, multiply, divide };

    Op op = Op::number;
    double number = 0.0;
    std::string name;
    std::vector<Expr> args;

    static Expr literal(double v);
    static Expr variable(std::string name);
    static Expr unary(Op op, Expr operand);
    static Expr binary(Op op, Expr lhs, Expr rhs);

    /// Throws std::out_of_range naming the variable when it is unbound.
    double evaluate(const std::map<std::string, double>& vars) const;
    void collect_variables(std::vector<std::string>& out) const;

    bool operator==(const Expr&) const = default;
};

Expr parse_expression(std::string_view text);
std::string to_string(const Expr& e);

struct Identifier {
    std::string value;
    bool operator==(const Identifier&) const = default;
};

struct PathList {
    std::vector<std::string> names;
    bool operator==(const PathList&) const = default;
};

using Value = std::variant<Expr, Identifier, PathList>;

struct Param {
    std::string key;
    Value value;
    bool operator==(const Param&) const = default;
};

enum class Keyword { param, input, element, tap };

struct Record {
    Keyword keyword = Keyword::element;
    std::string kind;  ///< empty for param and tap
    std::vector<Param> params;
    int line = 0;      ///< 1-based source line; not part of equality

    const Param* find(std::string_view key) const;
    bool operator==(const Record& o) const {
        return keyword == o.keyword && kind == o.kind && params == o.params;
    }
};

struct BenchDescription {
    std::vector<Record> records;

    /// Variable defaults declared by `param` records.
    std::map<std::string, double> defaults() const;
    bool operator==(const BenchDescription&) const = default;
};

/// Parses and statically checks a description (known kinds and keys,
/// value types, variables declared, path flow). Throws ParseError.
BenchDescription parse_bench(std::string_view text);

/// Canonical text form; parse_bench(print_bench(d)) == d.
std::string print_bench(const BenchDescription& desc);

}  // namespace lumenbell::bench
