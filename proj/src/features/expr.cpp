#include "bankbench/features/expr.hpp"

#include <cctype>
#include <cmath>

#include "bankbench/core/error.hpp"
#include "bankbench/core/numeric.hpp"

namespace bankbench::features {

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    explicit Parser(std::string_view t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& why) {
        throw config_error("formula '" + std::string(text) + "': " + why + " at offset " +
                           std::to_string(pos));
    }

    ExprPtr make(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

    int resolve_field(std::string_view name) {
        if (name == "working_capital") return k_field_working_capital;
        if (name == "quick_assets") return k_field_quick_assets;
        if (name == "constant_capital") return k_field_constant_capital;
        if (const auto* f = data::find_statement_field(name)) {
            return static_cast<int>(f - data::statement_fields().data());
        }
        return -1;
    }

    std::string_view ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        return text.substr(start, pos - start);
    }

    ExprPtr primary() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of formula");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            auto e = comparison();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (c == '-') {
            ++pos;
            ExprNode n;
            n.op = ExprNode::Op::neg;
            n.a = primary();
            return make(std::move(n));
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.'))
                ++pos;
            auto v = parse_double(text.substr(start, pos - start));
            if (!v) fail("bad number literal");
            ExprNode n;
            n.op = ExprNode::Op::constant;
            n.value = *v;
            return make(std::move(n));
        }
        auto name = ident();
        if (name.empty()) fail("expected identifier");
        if (name == "gdp") {
            ExprNode n;
            n.op = ExprNode::Op::gdp;
            return make(std::move(n));
        }
        if (name == "log" || name == "abs") {
            if (!eat('(')) fail("expected '(' after function name");
            ExprNode n;
            n.op = name == "log" ? ExprNode::Op::log_fn : ExprNode::Op::abs_fn;
            n.a = comparison();
            if (!eat(')')) fail("expected ')'");
            return make(std::move(n));
        }
        if (name == "prev") {
            if (!eat('(')) fail("expected '(' after prev");
            auto inner = ident();
            ExprNode n;
            if (inner == "gdp") {
                n.op = ExprNode::Op::gdp;
            } else {
                n.op = ExprNode::Op::field;
                n.field = resolve_field(inner);
                if (n.field < 0) fail("unknown field '" + std::string(inner) + "' in prev()");
            }
            n.use_prev = true;
            if (!eat(')')) fail("expected ')'");
            return make(std::move(n));
        }
        int field = resolve_field(name);
        if (field < 0) fail("unknown identifier '" + std::string(name) + "'");
        ExprNode n;
        n.op = ExprNode::Op::field;
        n.field = field;
        return make(std::move(n));
    }

    ExprPtr term() {
        auto lhs = primary();
        for (;;) {
            skip_ws();
            if (eat('*')) {
                ExprNode n;
                n.op = ExprNode::Op::mul;
                n.a = lhs;
                n.b = primary();
                lhs = make(std::move(n));
            } else if (eat('/')) {
                ExprNode n;
                n.op = ExprNode::Op::divide;
                n.a = lhs;
                n.b = primary();
                lhs = make(std::move(n));
            } else {
                return lhs;
            }
        }
    }

    ExprPtr additive() {
        auto lhs = term();
        for (;;) {
            skip_ws();
            if (eat('+')) {
                ExprNode n;
                n.op = ExprNode::Op::add;
                n.a = lhs;
                n.b = term();
                lhs = make(std::move(n));
            } else if (eat('-')) {
                ExprNode n;
                n.op = ExprNode::Op::sub;
                n.a = lhs;
                n.b = term();
                lhs = make(std::move(n));
            } else {
                return lhs;
            }
        }
    }

    ExprPtr comparison() {
        auto lhs = additive();
        skip_ws();
        if (pos >= text.size()) return lhs;
        ExprNode n;
        if (text.compare(pos, 2, "<=") == 0) {
            n.op = ExprNode::Op::le;
            pos += 2;
        } else if (text.compare(pos, 2, ">=") == 0) {
            n.op = ExprNode::Op::ge;
            pos += 2;
        } else if (text[pos] == '<') {
            n.op = ExprNode::Op::lt;
            ++pos;
        } else if (text[pos] == '>') {
            n.op = ExprNode::Op::gt;
            ++pos;
        } else {
            return lhs;
        }
        n.a = lhs;
        n.b = additive();
        return make(std::move(n));
    }

    ExprPtr parse() {
        auto e = comparison();
        skip_ws();
        if (pos != text.size()) fail("trailing characters");
        return e;
    }
};

std::optional<double> field_value(const data::CompanyYearRecord& rec, int field) {
    const auto& st = rec.statement;
    switch (field) {
    case k_field_working_capital:
        if (st.current_assets && st.current_liabilities)
            return *st.current_assets - *st.current_liabilities;
        return std::nullopt;
    case k_field_quick_assets:
        if (st.quick_assets) return st.quick_assets;
        if (st.current_assets && st.inventories) return *st.current_assets - *st.inventories;
        return std::nullopt;
    case k_field_constant_capital:
        if (st.equity && st.long_term_liabilities)
            return *st.equity + *st.long_term_liabilities;
        return std::nullopt;
    default:
        return rec.statement.*(data::statement_fields()[static_cast<std::size_t>(field)].member);
    }
}

} // namespace

ExprPtr parse_expr(const std::string& text) {
    Parser p(text);
    return p.parse();
}

std::optional<double> eval_expr(const ExprPtr& expr, const EvalEnv& env) {
    if (!expr) throw config_error("eval_expr: null expression");
    using Op = ExprNode::Op;
    auto finite = [](double v) -> std::optional<double> {
        if (!std::isfinite(v)) return std::nullopt;
        return v;
    };
    switch (expr->op) {
    case Op::constant:
        return expr->value;
    case Op::field: {
        const auto* rec = expr->use_prev ? env.prev : env.rec;
        if (!rec) return std::nullopt;
        return field_value(*rec, expr->field);
    }
    case Op::gdp: {
        const auto* rec = expr->use_prev ? env.prev : env.rec;
        if (!rec || !env.macro) return std::nullopt;
        const double* g = env.macro->lookup(rec->country, rec->report_year);
        if (!g) return std::nullopt;
        return *g;
    }
    case Op::neg: {
        auto a = eval_expr(expr->a, env);
        if (!a) return std::nullopt;
        return -*a;
    }
    case Op::log_fn: {
        auto a = eval_expr(expr->a, env);
        if (!a || *a <= 0.0) return std::nullopt;
        return finite(std::log(*a));
    }
    case Op::abs_fn: {
        auto a = eval_expr(expr->a, env);
        if (!a) return std::nullopt;
        return std::fabs(*a);
    }
    default: {
        auto a = eval_expr(expr->a, env);
        auto b = eval_expr(expr->b, env);
        if (!a || !b) return std::nullopt;
        switch (expr->op) {
        case Op::add: return finite(*a + *b);
        case Op::sub: return finite(*a - *b);
        case Op::mul: return finite(*a * *b);
        case Op::divide:
            if (*b == 0.0) return std::nullopt;
            return finite(*a / *b);
        case Op::lt: return *a < *b ? 1.0 : 0.0;
        case Op::gt: return *a > *b ? 1.0 : 0.0;
        case Op::le: return *a <= *b ? 1.0 : 0.0;
        case Op::ge: return *a >= *b ? 1.0 : 0.0;
        default: throw config_error("eval_expr: unhandled op");
        }
    }
    }
}

} // namespace bankbench::features
