// alg_eval.hpp - structural algebraic evaluation of Expr: exact values for
// trees built from rational literals, i, Add, Mul, Sqrt, and Pow with
// rational-literal exponents. Anything involving e, pi, Exp, Ln, Trig,
// ArcTrig, or Hyp is structurally ineligible; cap overflow is reported
// distinctly.
#pragma once

#include <optional>

#include "arithmos/algebraic.hpp"
#include "arithmos/expr.hpp"

namespace arithmos {

struct AlgebraicEval {
    enum class Status { Value, NotStructural, CapExceeded };
    Status status = Status::NotStructural;
    std::optional<AlgebraicNumber> value;

    bool ok() const { return status == Status::Value; }
};

inline AlgebraicEval try_eval_algebraic(const Expr& e, const DegreeCapConfig& caps = {}) {
    using Status = AlgebraicEval::Status;
    switch (e.kind()) {
        case NodeKind::Rational: return {Status::Value, from_rational(e.rat())};
        case NodeKind::Constant:
            if (e.const_kind() == ConstKind::I) return {Status::Value, imaginary_unit()};
            return {Status::NotStructural, std::nullopt};
        case NodeKind::Add:
        case NodeKind::Mul: {
            bool is_add = e.kind() == NodeKind::Add;
            std::optional<AlgebraicNumber> acc;
            bool capped = false;
            for (const auto& k : e.kids()) {
                AlgebraicEval sub = try_eval_algebraic(k, caps);
                if (sub.status == Status::NotStructural) return {Status::NotStructural, std::nullopt};
                if (sub.status == Status::CapExceeded) {
                    capped = true;
                    continue;
                }
                if (capped) continue;
                try {
                    if (!acc) acc = *sub.value;
                    else
                        acc = field_op(is_add ? FieldOpKind::Add : FieldOpKind::Mul, *acc,
                                       &*sub.value, caps);
                } catch (const CapExceeded&) {
                    capped = true;
                }
            }
            if (capped) return {Status::CapExceeded, std::nullopt};
            return {Status::Value, acc};
        }
        case NodeKind::Pow: {
            if (!e.kid(1).is_rational()) return {Status::NotStructural, std::nullopt};
            AlgebraicEval base = try_eval_algebraic(e.kid(0), caps);
            if (base.status != Status::Value) return base;
            try {
                return {Status::Value, pow_rational(*base.value, e.kid(1).rat(), caps)};
            } catch (const CapExceeded&) {
                return {Status::CapExceeded, std::nullopt};
            }
        }
        case NodeKind::Sqrt: {
            AlgebraicEval arg = try_eval_algebraic(e.kid(0), caps);
            if (arg.status != Status::Value) return arg;
            try {
                return {Status::Value, sqrt_principal(*arg.value, caps)};
            } catch (const CapExceeded&) {
                return {Status::CapExceeded, std::nullopt};
            }
        }
        default: return {Status::NotStructural, std::nullopt};
    }
}

}  // namespace arithmos
