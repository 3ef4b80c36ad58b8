// expr.hpp - immutable AST for closed-form constant expressions.
//
// Nodes are shared_ptr-backed and never mutated after construction, so
// copies are cheap and trees are safe to share across threads. A fixed
// total order over node structure (kind rank, then children, then literal
// value) drives the canonical sorting of Add/Mul children and makes Expr
// usable as an ordered map key.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "arithmos/rational.hpp"

namespace arithmos {

enum class NodeKind : std::uint8_t {
    Rational,
    Constant,
    Add,
    Mul,
    Pow,
    Exp,
    Ln,
    Sqrt,
    Trig,
    ArcTrig,
    Hyp,
};

enum class ConstKind : std::uint8_t { E, Pi, I };

enum class TrigKind : std::uint8_t { Sin, Cos, Tan, Sec, Csc, Cot };

enum class HypKind : std::uint8_t { Sinh, Cosh, Tanh };

class Expr {
public:
    struct Node {
        NodeKind kind;
        ConstKind cst = ConstKind::E;
        TrigKind trig = TrigKind::Sin;
        HypKind hyp = HypKind::Sinh;
        Rational rat;               // Rational nodes only
        std::vector<Expr> kids;     // n-ary for Add/Mul, [base, exp] for Pow, [arg] for the rest
    };

    Expr() : node_(zero_node()) {}

    NodeKind kind() const { return node_->kind; }
    ConstKind const_kind() const { return node_->cst; }
    TrigKind trig_kind() const { return node_->trig; }
    HypKind hyp_kind() const { return node_->hyp; }
    const Rational& rat() const { return node_->rat; }
    const std::vector<Expr>& kids() const { return node_->kids; }
    const Expr& kid(std::size_t i) const { return node_->kids[i]; }
    std::size_t arity() const { return node_->kids.size(); }

    bool is_rational() const { return kind() == NodeKind::Rational; }
    bool is_rational_value(long num, long den = 1) const {
        return is_rational() && rat() == make_rational(num, den);
    }
    bool is_const(ConstKind c) const { return kind() == NodeKind::Constant && const_kind() == c; }

    // --- raw builders (no canonicalization; see canonical.hpp) ---
    static Expr rational(Rational q) {
        q.canonicalize();
        Node n{NodeKind::Rational};
        n.rat = std::move(q);
        return Expr(std::move(n));
    }
    static Expr integer(long v) { return rational(Rational(v)); }
    static Expr constant(ConstKind c) {
        Node n{NodeKind::Constant};
        n.cst = c;
        return Expr(std::move(n));
    }
    static Expr add(std::vector<Expr> kids) {
        Node n{NodeKind::Add};
        n.kids = std::move(kids);
        return Expr(std::move(n));
    }
    static Expr mul(std::vector<Expr> kids) {
        Node n{NodeKind::Mul};
        n.kids = std::move(kids);
        return Expr(std::move(n));
    }
    static Expr pow(Expr base, Expr exp) {
        Node n{NodeKind::Pow};
        n.kids = {std::move(base), std::move(exp)};
        return Expr(std::move(n));
    }
    static Expr exp(Expr arg) { return unary(NodeKind::Exp, std::move(arg)); }
    static Expr ln(Expr arg) { return unary(NodeKind::Ln, std::move(arg)); }
    static Expr sqrt(Expr arg) { return unary(NodeKind::Sqrt, std::move(arg)); }
    static Expr trig(TrigKind k, Expr arg) {
        Node n{NodeKind::Trig};
        n.trig = k;
        n.kids = {std::move(arg)};
        return Expr(std::move(n));
    }
    static Expr arctrig(TrigKind k, Expr arg) {
        Node n{NodeKind::ArcTrig};
        n.trig = k;
        n.kids = {std::move(arg)};
        return Expr(std::move(n));
    }
    static Expr hyp(HypKind k, Expr arg) {
        Node n{NodeKind::Hyp};
        n.hyp = k;
        n.kids = {std::move(arg)};
        return Expr(std::move(n));
    }

    friend int compare(const Expr& a, const Expr& b);
    friend bool operator==(const Expr& a, const Expr& b) { return compare(a, b) == 0; }
    friend bool operator!=(const Expr& a, const Expr& b) { return compare(a, b) != 0; }
    friend bool operator<(const Expr& a, const Expr& b) { return compare(a, b) < 0; }

private:
    explicit Expr(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

    static Expr unary(NodeKind k, Expr arg) {
        Node n{k};
        n.kids = {std::move(arg)};
        return Expr(std::move(n));
    }

    static std::shared_ptr<const Node> zero_node() {
        static const std::shared_ptr<const Node> z = [] {
            Node n{NodeKind::Rational};
            n.rat = 0;
            return std::make_shared<const Node>(std::move(n));
        }();
        return z;
    }

    std::shared_ptr<const Node> node_;
};

// Total structural order: kind rank, then per-kind tag, then children
// (lexicographic, shorter first on shared prefix), then literal value.
inline int compare(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return 0;
    if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
    switch (a.kind()) {
        case NodeKind::Rational: return cmp(a.rat(), b.rat());
        case NodeKind::Constant:
            if (a.const_kind() != b.const_kind()) return a.const_kind() < b.const_kind() ? -1 : 1;
            return 0;
        case NodeKind::Trig:
        case NodeKind::ArcTrig:
            if (a.trig_kind() != b.trig_kind()) return a.trig_kind() < b.trig_kind() ? -1 : 1;
            break;
        case NodeKind::Hyp:
            if (a.hyp_kind() != b.hyp_kind()) return a.hyp_kind() < b.hyp_kind() ? -1 : 1;
            break;
        default: break;
    }
    const auto& ka = a.kids();
    const auto& kb = b.kids();
    std::size_t n = std::min(ka.size(), kb.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = compare(ka[i], kb[i]);
        if (c != 0) return c;
    }
    if (ka.size() != kb.size()) return ka.size() < kb.size() ? -1 : 1;
    return 0;
}

inline const char* trig_name(TrigKind k) {
    switch (k) {
        case TrigKind::Sin: return "sin";
        case TrigKind::Cos: return "cos";
        case TrigKind::Tan: return "tan";
        case TrigKind::Sec: return "sec";
        case TrigKind::Csc: return "csc";
        case TrigKind::Cot: return "cot";
    }
    return "?";
}

inline const char* arctrig_name(TrigKind k) {
    switch (k) {
        case TrigKind::Sin: return "asin";
        case TrigKind::Cos: return "acos";
        case TrigKind::Tan: return "atan";
        case TrigKind::Sec: return "asec";
        case TrigKind::Csc: return "acsc";
        case TrigKind::Cot: return "acot";
    }
    return "?";
}

inline const char* hyp_name(HypKind k) {
    switch (k) {
        case HypKind::Sinh: return "sinh";
        case HypKind::Cosh: return "cosh";
        case HypKind::Tanh: return "tanh";
    }
    return "?";
}

}  // namespace arithmos
