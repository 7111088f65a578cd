#pragma once

#include <memory>
#include <optional>
#include <string>

#include "bankbench/data/panel.hpp"

namespace bankbench::features {

// Small expression language for the ratio catalog. Formulas are plain
// arithmetic over statement field names with a few extras:
//   +  -  *  /            missing-propagating arithmetic, x/0 -> missing
//   <  >  <=  >=          comparisons producing 0/1
//   log(x)  abs(x)        log is missing for x <= 0
//   prev(name)            the field taken from the prior consecutive year
//   gdp                   annual GDP for the record's country
// Derived names: working_capital, quick_assets (falls back to
// current_assets - inventories when the field is absent), constant_capital.

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Op {
        constant, field, gdp,
        neg, log_fn, abs_fn,
        add, sub, mul, divide,
        lt, gt, le, ge,
    };
    Op op = Op::constant;
    double value = 0.0; // constant
    int field = -1;     // statement field index, or derived id >= 100
    bool use_prev = false;
    ExprPtr a;
    ExprPtr b;
};

// Derived field ids (statement field indices occupy [0, 25)).
inline constexpr int k_field_working_capital = 100;
inline constexpr int k_field_quick_assets = 101;
inline constexpr int k_field_constant_capital = 102;

ExprPtr parse_expr(const std::string& text);

struct EvalEnv {
    const data::CompanyYearRecord* rec = nullptr;
    const data::CompanyYearRecord* prev = nullptr; // prior consecutive year or null
    const data::MacroTable* macro = nullptr;
};

std::optional<double> eval_expr(const ExprPtr& expr, const EvalEnv& env);

} // namespace bankbench::features
