// catalog.hpp - the inference-rule catalog: identifiers, human names, source
// tags, verbatim source quotes (the anchors carried by certificates), and
// one-line guard summaries. The engine emits exactly these rule ids; the
// anchor-integrity test checks emitted anchors against this table.
#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "arithmos/errors.hpp"

namespace arithmos {

struct RuleInfo {
    const char* id;
    const char* name;    // human label, e.g. "Gelfond–Schneider"
    const char* source;  // e.g. "Lemma 3"
    const char* quote;   // verbatim quote used as the anchor
    const char* guard;   // one-line guard summary
    const char* alt_quote = nullptr;  // secondary anchor used by some branches
};

inline const std::vector<RuleInfo>& rule_catalog() {
    static const std::vector<RuleInfo> table = {
        {"CL1", "rational literal", "§1", "all rational numbers are algebraic",
         "subject is a reduced rational literal"},
        {"CL2", "algebraic closure", "footnote", "A is a field",
         "value is structurally algebraic; rational vs algebraic-irrational by minimal-polynomial degree"},
        {"CL3", "transcendence closure", "footnote", "easily proved by contradiction",
         "t transcendental: t+α, α·t (α≠0), t/α, α/t, t^r (r∈Q, r≠0) stay transcendental"},
        {"CL4", "field closure", "footnote", "A is a field",
         "every child algebraic under field operations ⇒ parent algebraic"},
        {"B1", "transcendence of e", "§1", "e is transcendental", "the constant e"},
        {"B2", "transcendence of pi", "§ after Lemma 1", "implies the transcendence of",
         "the constant π"},
        {"B3", "imaginary unit", "—", "i is a root of x²+1", "the constant i is algebraic irrational"},
        {"R-HL-EXP", "Hermite–Lindemann", "Lemma 1", "transcendental for all algebraic",
         "exp(u) with u algebraic, u ≠ 0"},
        {"R-HL-LN", "Hermite–Lindemann, log form", "§ after Lemma 1",
         "equivalent to the transcendence of ln α", "ln(u) with u algebraic, u ≠ 0, u ≠ 1"},
        {"R-LW-SUM", "Lindemann–Weierstrass", "Corollary 1", "is a transcendental number",
         "Σ βk·exp(αk), αk distinct nonzero algebraic, βk algebraic not all zero"},
        {"R-LW-TRIG", "Lindemann–Weierstrass, trig form", "Corollary 2",
         "cos α, sin α, cosh α, and sinh α", "sin/cos/sinh/cosh of a nonzero algebraic argument"},
        {"R-GS", "Gelfond–Schneider", "Lemma 3", "any value of α^β is transcendental",
         "u^v with u algebraic ∉ {0,1}, v algebraic irrational"},
        {"R-LOGRATIO", "log-ratio Gelfond–Schneider", "Lemma 4", "transcendental whenever",
         "ln(u)/ln(v), u,v algebraic nonzero, v ≠ 1; exact multiplicative dependence decides rational cases"},
        {"R-ARCTAN", "Margolius", "Corollary 3", "x is rational and x ≠ 0, ±1",
         "arctan(x)/π with rational x ∉ {0, ±1}", "is rational only when x = 0, ±1"},
        {"R-ARC-SPECIAL", "exact arc value", "Corollary 3 proof",
         "is rational only when x = 0, ±1",
         "arctrig(x)/π at the finitely many rational x with rational arc ratio"},
        {"R-ARCTRIG", "arc-ratio dichotomy", "Theorem 1", "either rational or transcendental",
         "arctrig(x)/π with real algebraic x in the arc's domain", "For arccos x, choose"},
        {"R-TRIGPI", "trig at multiples of pi", "footnote", "cos(rπ) and sin(rπ) are algebraic",
         "trig(α·π): rational α ⇒ algebraic value; real algebraic irrational α ⇒ transcendental",
         "the transcendence of trig(√2 π)"},
        {"R-BAKER-LIN", "Baker linear form", "Corollary 4", "either null or transcendental",
         "Σ βk·ln(αk) with algebraic βk and nonzero algebraic αk; exact power-product decision for rational data"},
        {"R-BAKER-PROD", "Baker product form", "Corollary 5",
         "e^{β₀} α₁^{β₁} … αₙ^{βₙ} is transcendental",
         "exp(β0)·Π αk^{βk} with all parameters algebraic and nonzero"},
        {"R-BAKER-PROD2", "Baker pure product", "Corollary 6", "other than 0 or 1",
         "Π αk^{βk}, αk algebraic ∉ {0,1}, with 1, β1, …, βn linearly independent over Q"},
        {"R-BAKER-EXP", "Baker exponential", "Corollary 7", "without exceptions",
         "exp(α + π·β), α,β algebraic: α ≠ 0 always; α = 0 when i·β ∉ Q",
         "which solves Hilbert's 7th problem"},
        {"R-ALNB-PI", "(α + ln β)/π", "footnote after Corollary 7",
         "transcendence of (α + ln β)/π", "(α + ln β)/π with algebraic nonzero α, β"},
        {"R-SUMPROD", "sum-or-product transcendence", "Theorem 2", "Given two transcendental numbers",
         "u, v transcendental ⇒ at least one of u+v, u·v transcendental"},
        {"R-QUAD", "harmless irrationality", "Lemma 7", "which is not quadratic",
         "u transcendental or algebraic of degree > 2 ⇒ at least one of u+v, u·v irrational"},
        {"R-1OF3", "two of three", "Theorem 3", "at least two of the numbers",
         "t ≠ 0, 1/e ⇒ at least two of t+e, t·e, ln t transcendental"},
        {"R-INVT", "reciprocal combinations", "Corollary 8", "are both transcendental",
         "t transcendental, α,β algebraic not both zero ⇒ α·t + β/t and t·(α−t) transcendental"},
        {"R-COSH", "hyperbolic at r·ln t", "Theorem 5", "cosh(r ln t), and sinh(r ln t)",
         "cosh/sinh(r·ln t), rational r ≠ 0, t transcendental; 1, cosh, sinh independent over A"},
        {"R-TANH", "tanh at r·ln t", "Theorem 6", "tanh(r ln t) is transcendental",
         "tanh(r·ln t), rational r ≠ 0, t transcendental"},
        {"R-COS-LN", "trig at β·ln α", "Theorem 7", "cos(β ln α) and sin(β ln α)",
         "cos/sin(β·ln α), α algebraic ∉ {0,1}, β algebraic, i·β ∉ Q"},
        {"R-TAN-LN", "tan at β·ln α", "Theorem 8", "tan(β ln α) is transcendental",
         "tan(β·ln α), same guards as Theorem 7"},
        {"R-LNPI", "ln π vs √n·π", "Theorem 9", "holds for all non-negative integers",
         "q·ln π + ln r − p·√n·π ≠ 0 for integers p,q ≥ 0 not both zero, rational r ≠ 0, integer n ≥ 1"},
        {"R-LNPI-LI", "linear independence of ln π and √n·π", "Corollary 9",
         "linearly independent over Q",
         "a·ln π + b·√n·π ≠ 0 for rationals a, b not both zero, integer n ≥ 1"},
        {"R-NZ-UPGRADE", "dichotomy nonzero upgrade", "Corollary 4", "either null or transcendental",
         "zero-or-transcendental verdict plus a rigorous nonzero enclosure ⇒ transcendental"},
        {"INTERSECT", "verdict intersection", "—", "—",
         "conclusions of simultaneously applicable rules intersect"},
        {"DISJ-PROP", "disjunctive propagation", "—", "—",
         "k members of S share a class and all but k are excluded ⇒ the rest refine"},
        {"TOP", "no applicable rule", "—", "—", "no rule fired; the full verdict lattice"},
        {"HYP", "hypothetical assumption", "—", "—",
         "test-only injected fact; never persisted to a primary knowledge base"},
    };
    return table;
}

inline const RuleInfo* find_rule(std::string_view id) {
    for (const auto& r : rule_catalog())
        if (id == r.id) return &r;
    return nullptr;
}

inline std::string anchor_of(const RuleInfo& r, bool alt = false) {
    std::string quote = (alt && r.alt_quote) ? r.alt_quote : r.quote;
    return std::string(r.source) + ": \"" + quote + "\"";
}

inline std::string anchor_of(std::string_view id, bool alt = false) {
    const RuleInfo* r = find_rule(id);
    if (!r) throw NotFoundError("rule id not in catalog: " + std::string(id));
    return anchor_of(*r, alt);
}

// The checked-in anchor table: every anchor a certificate may carry.
inline const std::set<std::string>& anchor_table() {
    static const std::set<std::string> table = [] {
        std::set<std::string> t;
        for (const auto& r : rule_catalog()) {
            t.insert(anchor_of(r, false));
            if (r.alt_quote) t.insert(anchor_of(r, true));
        }
        return t;
    }();
    return table;
}

}  // namespace arithmos
