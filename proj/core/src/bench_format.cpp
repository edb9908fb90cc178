#include "lumenbell/bench_format.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace lumenbell::bench {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message + " (column " +
                         std::to_string(column) + ")"),
      line_(line),
      column_(column),
      detail_(message) {}

// ---------------------------------------------------------------------------
// Expressions

Expr Expr::literal(double v) {
    Expr e;
    e.op = Op::number;
    e.number = v;
    return e;
}

Expr Expr::variable(std::string name) {
    Expr e;
    e.op = Op::variable;
    e.name = std::move(name);
    return e;
}

Expr Expr::unary(Op op, Expr operand) {
    Expr e;
    e.op = op;
    e.args.push_back(std::move(operand));
    return e;
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
    Expr e;
    e.op = op;
    e.args.push_back(std::move(lhs));
    e.args.push_back(std::move(rhs));
    return e;
}

double Expr::evaluate(const std::map<std::string, double>& vars) const {
    switch (op) {
        case Op::number: return number;
        case Op::variable: {
            const auto it = vars.find(name);
            if (it == vars.end()) throw std::out_of_range("unbound variable '$" + name + "'");
            return it->second;
        }
        case Op::negate: return -args[0].evaluate(vars);
        case Op::add: return args[0].evaluate(vars) + args[1].evaluate(vars);
        case Op::subtract: return args[0].evaluate(vars) - args[1].evaluate(vars);
        case Op::multiply: return args[0].evaluate(vars) * args[1].evaluate(vars);
        case Op::divide: return args[0].evaluate(vars) / args[1].evaluate(vars);
    }
    return 0.0;
}

void Expr::collect_variables(std::vector<std::string>& out) const {
    if (op == Op::variable) out.push_back(name);
    for (const Expr& a : args) a.collect_variables(out);
}

namespace {

// Thrown inside the expression parser; `offset` is relative to the
// expression text and is turned into a column by the caller.
struct ExprError {
    std::size_t offset;
    std::string message;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    Expr parse() {
        if (text_.empty()) throw ExprError{0, "empty value"};
        Expr e = sum();
        if (pos_ != text_.size()) {
            throw ExprError{pos_, std::string("unexpected character '") + text_[pos_] + "'"};
        }
        return e;
    }

private:
    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr sum() {
        Expr lhs = product();
        for (;;) {
            if (accept('+')) {
                lhs = Expr::binary(Expr::Op::add, std::move(lhs), product());
            } else if (accept('-')) {
                lhs = Expr::binary(Expr::Op::subtract, std::move(lhs), product());
            } else {
                return lhs;
            }
        }
    }

    Expr product() {
        Expr lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = Expr::binary(Expr::Op::multiply, std::move(lhs), unary());
            } else if (accept('/')) {
                lhs = Expr::binary(Expr::Op::divide, std::move(lhs), unary());
            } else {
                return lhs;
            }
        }
    }

    Expr unary() {
        if (accept('-')) return Expr::unary(Expr::Op::negate, unary());
        if (accept('+')) return unary();
        return atom();
    }

    Expr atom() {
        if (pos_ >= text_.size()) throw ExprError{pos_, "unexpected end of value"};
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr inner = sum();
            if (!accept(')')) throw ExprError{pos_, "expected ')'"};
            return inner;
        }
        if (c == '$') {
            const std::size_t start = ++pos_;
            if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) {
                throw ExprError{start, "expected a variable name after '$'"};
            }
            while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
            return Expr::variable(std::string(text_.substr(start, pos_ - start)));
        }
        if (is_digit(c) || c == '.') return number();
        throw ExprError{pos_, std::string("unexpected character '") + c + "'"};
    }

    // digits [. digits] [e [+-] digits], or . digits ...
    Expr number() {
        const std::size_t start = pos_;
        std::size_t digits = 0;
        while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_, ++digits;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_, ++digits;
        }
        if (digits == 0) throw ExprError{start, "malformed number"};
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            std::size_t exp_digits = 0;
            while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_, ++exp_digits;
            if (exp_digits == 0) throw ExprError{start, "malformed number"};
        }
        double v = 0.0;
        const char* first = text_.data() + start;
        const char* last = text_.data() + pos_;
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last) throw ExprError{start, "malformed number"};
        return Expr::literal(v);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
    switch (e.op) {
        case Expr::Op::add:
        case Expr::Op::subtract: return 1;
        case Expr::Op::multiply:
        case Expr::Op::divide: return 2;
        case Expr::Op::negate: return 3;
        default: return 4;
    }
}

std::string format_number(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

}  // namespace

Expr parse_expression(std::string_view text) {
    try {
        return ExprParser(text).parse();
    } catch (const ExprError& e) {
        throw ParseError(1, static_cast<int>(e.offset) + 1, e.message);
    }
}

std::string to_string(const Expr& e) {
    auto wrap = [](const Expr& child, bool paren) {
        const std::string s = to_string(child);
        return paren ? "(" + s + ")" : s;
    };
    switch (e.op) {
        case Expr::Op::number: return format_number(e.number);
        case Expr::Op::variable: return "$" + e.name;
        case Expr::Op::negate: return "-" + wrap(e.args[0], precedence(e.args[0]) < 3);
        default: break;
    }
    const int p = precedence(e);
    const char* sym = e.op == Expr::Op::add        ? "+"
                      : e.op == Expr::Op::subtract ? "-"
                      : e.op == Expr::Op::multiply ? "*"
                                                   : "/";
    return wrap(e.args[0], precedence(e.args[0]) < p) + sym +
           wrap(e.args[1], precedence(e.args[1]) <= p);
}

// ---------------------------------------------------------------------------
// Records

const Param* Record::find(std::string_view key) const {
    for (const Param& p : params) {
        if (p.key == key) return &p;
    }
    return nullptr;
}

std::map<std::string, double> BenchDescription::defaults() const {
    std::map<std::string, double> out;
    for (const Record& r : records) {
        if (r.keyword != Keyword::param) continue;
        for (const Param& p : r.params) out[p.key] = std::get<Expr>(p.value).evaluate({});
    }
    return out;
}

namespace {

enum class ValueType { expr, identifier, paths };

struct KeySpec {
    std::string_view key;
    ValueType type;
    bool required;
    std::vector<std::string_view> choices;  ///< for identifiers; empty = any
};

struct KindSpec {
    std::string_view kind;
    std::vector<KeySpec> keys;
};

const std::vector<std::string_view> kPolChoices{"h", "v", "d", "a", "r", "l"};

const std::vector<KindSpec>& input_kinds() {
    static const std::vector<KindSpec> kinds{
        {"gaussian", {{"pol", ValueType::identifier, true, kPolChoices}}},
        {"state",
         {{"name", ValueType::identifier, true, {"hh_vv", "hv_vh", "hr_vl", "scalar_hr"}}}},
        {"mode",
         {{"name", ValueType::identifier, true, {"gaussian", "lg+1", "lg-1", "hg10", "hg01"}},
          {"pol", ValueType::identifier, true, kPolChoices}}},
    };
    return kinds;
}

const std::vector<KindSpec>& element_kinds() {
    const KeySpec on{"on", ValueType::paths, false, {}};
    static const std::vector<KindSpec> kinds{
        {"qwp", {{"angle", ValueType::expr, true, {}}, on}},
        {"hwp", {{"angle", ValueType::expr, true, {}}, on}},
        {"waveplate",
         {{"retardance", ValueType::expr, true, {}}, {"angle", ValueType::expr, true, {}}, on}},
        {"qhq", {{"phase", ValueType::expr, true, {}}, on}},
        {"spp", {{"charge", ValueType::expr, true, {}}, on}},
        {"reflect", {on}},
        {"phase", {{"value", ValueType::expr, true, {}}, on}},
        {"pbs",
         {{"angle", ValueType::expr, true, {}}, on, {"out", ValueType::paths, false, {}}}},
        {"bs", {on, {"out", ValueType::paths, false, {}}}},
    };
    return kinds;
}

const KindSpec* find_kind(const std::vector<KindSpec>& kinds, std::string_view kind) {
    for (const KindSpec& k : kinds) {
        if (k.kind == kind) return &k;
    }
    return nullptr;
}

struct Token {
    std::string_view text;
    int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size() || line[i] == '#') break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' &&
               line[i] != '#') {
            ++i;
        }
        out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

bool valid_path_name(std::string_view s) {
    if (s.empty() || !is_ident_start(s[0])) return false;
    return std::all_of(s.begin(), s.end(), is_ident_char);
}

bool valid_choice_token(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return is_ident_char(c) || c == '+' || c == '-';
    });
}

Value parse_value(const KeySpec& spec, const Token& tok, std::size_t value_offset, int line) {
    const std::string_view text = tok.text.substr(value_offset);
    const int col = tok.column + static_cast<int>(value_offset);
    switch (spec.type) {
        case ValueType::expr:
            try {
                return ExprParser(text).parse();
            } catch (const ExprError& e) {
                throw ParseError(line, col + static_cast<int>(e.offset),
                                 "malformed value '" + std::string(text) + "' for '" +
                                     std::string(spec.key) + "': " + e.message);
            }
        case ValueType::identifier: {
            if (!valid_choice_token(text) ||
                (!spec.choices.empty() &&
                 std::find(spec.choices.begin(), spec.choices.end(), text) ==
                     spec.choices.end())) {
                std::string allowed;
                for (auto c : spec.choices) allowed += (allowed.empty() ? "" : ", ") + std::string(c);
                throw ParseError(line, col,
                                 "invalid value '" + std::string(text) + "' for '" +
                                     std::string(spec.key) + "' (expected one of " + allowed +
                                     ")");
            }
            return Identifier{std::string(text)};
        }
        case ValueType::paths: {
            PathList list;
            std::size_t start = 0;
            for (;;) {
                const std::size_t comma = text.find(',', start);
                const std::string_view name = text.substr(start, comma - start);
                if (!valid_path_name(name)) {
                    throw ParseError(line, col + static_cast<int>(start),
                                     "invalid path name '" + std::string(name) + "' in '" +
                                         std::string(spec.key) + "'");
                }
                list.names.emplace_back(name);
                if (comma == std::string_view::npos) break;
                start = comma + 1;
            }
            return list;
        }
    }
    throw ParseError(line, col, "internal: unknown value type");
}

// Tracks live beam paths through the record sequence so that errors are
// reported at the record that causes them rather than at run time.
class PathChecker {
public:
    void check(const Record& rec, const Token& head) {
        const int line = rec.line;
        switch (rec.keyword) {
            case Keyword::param: return;
            case Keyword::input:
                if (has_input_) throw ParseError(line, head.column, "second 'input' record");
                has_input_ = true;
                live_ = {"in"};
                return;
            case Keyword::tap: {
                require_input(line, head.column);
                const auto& name = std::get<Identifier>(rec.params.at(0).value).value;
                if (!is_live(name)) {
                    throw ParseError(line, head.column, "tap of unknown path '" + name + "'");
                }
                return;
            }
            case Keyword::element: break;
        }
        require_input(line, head.column);

        std::vector<std::string> on;
        if (const Param* p = rec.find("on")) {
            on = std::get<PathList>(p->value).names;
            for (const auto& n : on) {
                if (!is_live(n)) throw ParseError(line, head.column, "unknown path '" + n + "'");
            }
            if (std::set<std::string>(on.begin(), on.end()).size() != on.size()) {
                throw ParseError(line, head.column, "path listed twice in 'on'");
            }
        }
        const bool splitter = rec.kind == "pbs" || rec.kind == "bs";
        if (!splitter) return;

        if (on.empty()) {
            if (live_.size() != 1) {
                throw ParseError(line, head.column,
                                 "'" + rec.kind + "' needs 'on=' when several paths are live");
            }
            on = live_;
        }
        if (on.size() > 2) {
            throw ParseError(line, head.column, "'" + rec.kind + "' takes one or two input paths");
        }
        const bool merge = on.size() == 2;
        std::vector<std::string> out;
        if (const Param* p = rec.find("out")) {
            out = std::get<PathList>(p->value).names;
        } else if (rec.kind == "bs") {
            out = merge ? std::vector<std::string>{"port1", "port2"}
                        : std::vector<std::string>{"a", "b"};
        } else {
            out = merge ? std::vector<std::string>{"out"} : std::vector<std::string>{"t", "r"};
        }
        const std::size_t expected = (rec.kind == "pbs" && merge) ? 1 : 2;
        if (out.size() != expected) {
            throw ParseError(line, head.column,
                             "'" + rec.kind + "' with " + std::to_string(on.size()) +
                                 " input path(s) produces " + std::to_string(expected) +
                                 " output path(s)");
        }
        for (const auto& n : on) std::erase(live_, n);
        for (const auto& n : out) {
            if (is_live(n) || std::count(out.begin(), out.end(), n) > 1) {
                throw ParseError(line, head.column, "output path '" + n + "' already exists");
            }
        }
        live_.insert(live_.end(), out.begin(), out.end());
    }

private:
    void require_input(int line, int column) const {
        if (!has_input_) throw ParseError(line, column, "record before 'input'");
    }
    bool is_live(const std::string& n) const {
        return std::find(live_.begin(), live_.end(), n) != live_.end();
    }

    bool has_input_ = false;
    std::vector<std::string> live_;
};

}  // namespace

BenchDescription parse_bench(std::string_view text) {
    BenchDescription desc;
    PathChecker paths;
    std::set<std::string> declared;
    std::vector<std::pair<std::string, std::pair<int, int>>> used;  // name, (line, col)

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const std::vector<Token> toks = tokenize(line);
        if (toks.empty()) continue;

        Record rec;
        rec.line = line_no;
        const Token& head = toks[0];
        std::size_t first_param = 1;
        const std::vector<KeySpec>* keys = nullptr;
        static const std::vector<KeySpec> tap_keys{{"name", ValueType::identifier, true, {}}};

        if (head.text == "param") {
            rec.keyword = Keyword::param;
        } else if (head.text == "tap") {
            rec.keyword = Keyword::tap;
            keys = &tap_keys;
        } else if (head.text == "input" || head.text == "element") {
            const bool is_input = head.text == "input";
            rec.keyword = is_input ? Keyword::input : Keyword::element;
            if (toks.size() < 2) {
                throw ParseError(line_no, head.column + static_cast<int>(head.text.size()),
                                 "missing " + std::string(is_input ? "input" : "element") +
                                     " kind");
            }
            const KindSpec* kind =
                find_kind(is_input ? input_kinds() : element_kinds(), toks[1].text);
            if (!kind) {
                throw ParseError(line_no, toks[1].column,
                                 "unknown " + std::string(is_input ? "input" : "element") +
                                     " '" + std::string(toks[1].text) + "'");
            }
            rec.kind = std::string(toks[1].text);
            keys = &kind->keys;
            first_param = 2;
        } else {
            throw ParseError(line_no, head.column,
                             "unknown record '" + std::string(head.text) + "'");
        }

        for (std::size_t i = first_param; i < toks.size(); ++i) {
            const Token& tok = toks[i];
            const std::size_t eq = tok.text.find('=');
            if (eq == std::string_view::npos || eq == 0) {
                throw ParseError(line_no, tok.column,
                                 "expected key=value, got '" + std::string(tok.text) + "'");
            }
            const std::string key(tok.text.substr(0, eq));
            if (rec.find(key)) throw ParseError(line_no, tok.column, "duplicate key '" + key + "'");

            if (rec.keyword == Keyword::param) {
                if (!valid_path_name(key)) {
                    throw ParseError(line_no, tok.column, "invalid parameter name '" + key + "'");
                }
                const KeySpec spec{"value", ValueType::expr, true, {}};
                Value v = parse_value(spec, tok, eq + 1, line_no);
                std::vector<std::string> vars;
                std::get<Expr>(v).collect_variables(vars);
                if (!vars.empty()) {
                    throw ParseError(line_no, tok.column + static_cast<int>(eq) + 1,
                                     "parameter default must be a constant");
                }
                if (!declared.insert(key).second) {
                    throw ParseError(line_no, tok.column, "parameter '" + key + "' declared twice");
                }
                rec.params.push_back({key, std::move(v)});
                continue;
            }

            const auto spec = std::find_if(keys->begin(), keys->end(),
                                           [&](const KeySpec& k) { return k.key == key; });
            if (spec == keys->end()) {
                throw ParseError(line_no, tok.column,
                                 "unknown parameter '" + key + "'" +
                                     (rec.kind.empty() ? "" : " for '" + rec.kind + "'"));
            }
            Value v = parse_value(*spec, tok, eq + 1, line_no);
            if (rec.keyword == Keyword::tap && !valid_path_name(std::get<Identifier>(v).value)) {
                throw ParseError(line_no, tok.column + static_cast<int>(eq) + 1,
                                 "invalid path name '" + std::get<Identifier>(v).value + "'");
            }
            if (const Expr* e = std::get_if<Expr>(&v)) {
                std::vector<std::string> vars;
                e->collect_variables(vars);
                for (auto& n : vars) {
                    used.push_back({n, {line_no, tok.column + static_cast<int>(eq) + 1}});
                }
            }
            rec.params.push_back({key, std::move(v)});
        }

        if (rec.keyword == Keyword::param && rec.params.empty()) {
            throw ParseError(line_no, head.column, "'param' needs name=value");
        }
        if (keys) {
            for (const KeySpec& k : *keys) {
                if (k.required && !rec.find(k.key)) {
                    throw ParseError(line_no, head.column,
                                     "missing parameter '" + std::string(k.key) + "'" +
                                         (rec.kind.empty() ? "" : " for '" + rec.kind + "'"));
                }
            }
        }
        paths.check(rec, head);
        desc.records.push_back(std::move(rec));
    }

    for (const auto& [name, loc] : used) {
        if (!declared.contains(name)) {
            throw ParseError(loc.first, loc.second, "undeclared variable '$" + name + "'");
        }
    }
    return desc;
}

std::string print_bench(const BenchDescription& desc) {
    std::ostringstream os;
    for (const Record& r : desc.records) {
        switch (r.keyword) {
            case Keyword::param: os << "param"; break;
            case Keyword::input: os << "input " << r.kind; break;
            case Keyword::element: os << "element " << r.kind; break;
            case Keyword::tap: os << "tap"; break;
        }
        for (const Param& p : r.params) {
            os << ' ' << p.key << '=';
            std::visit(
                [&os](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, Expr>) {
                        os << to_string(v);
                    } else if constexpr (std::is_same_v<T, Identifier>) {
                        os << v.value;
                    } else {
                        for (std::size_t i = 0; i < v.names.size(); ++i) {
                            os << (i ? "," : "") << v.names[i];
                        }
                    }
                },
                p.value);
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace lumenbell::bench
