// engine.hpp - the inference core: bottom-up classification of canonical
// expressions against the rule catalog, disjunctive facts, fixpoint
// propagation, and certificate construction.
//
// Guards are exact: every algebraicity/rationality/degree decision comes
// from the algebraic module, never from numerics. The only numeric input
// is the sound nonvanishing certificate behind R-NZ-UPGRADE, which may
// only strengthen a zero-or-transcendental dichotomy.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arithmos/alg_eval.hpp"
#include "arithmos/canonical.hpp"
#include "arithmos/certificate.hpp"
#include "arithmos/eval.hpp"
#include "arithmos/independence.hpp"
#include "arithmos/render.hpp"
#include "arithmos/verdict.hpp"

namespace arithmos {

struct EngineConfig {
    DegreeCapConfig caps;
    mpfr_prec_t max_precision = kMaxPrecision;
    bool allow_hypotheses = false;  // test-only fact injection gate
};

struct Fact {
    Expr subject;
    Verdict verdict;
    std::optional<Rational> exact_value;
    bool rat_only_if_zero = false;  // "RAT possibility is exactly value 0"
    CertPtr cert;
};

struct DisjunctiveFact {
    std::vector<Expr> members;  // canonical, sorted
    int at_least = 1;
    DisjClass cls = DisjClass::Trans;
    CertPtr cert;
};

namespace detail {
class Classifier;
}

class KnowledgeBase {
public:
    explicit KnowledgeBase(EngineConfig cfg = {}) : config_(std::move(cfg)) {}

    const EngineConfig& config() const { return config_; }
    const std::map<Expr, Fact>& facts() const { return facts_; }
    const std::vector<DisjunctiveFact>& disjunctive() const { return disjunctive_; }
    int last_propagation_iterations() const { return last_iterations_; }

    const Fact* find(const Expr& e) const {
        auto it = facts_.find(e);
        return it == facts_.end() ? nullptr : &it->second;
    }

private:
    friend class detail::Classifier;
    EngineConfig config_;
    std::map<Expr, Fact> facts_;
    std::vector<DisjunctiveFact> disjunctive_;
    std::map<Expr, AlgebraicEval> alg_cache_;
    int last_iterations_ = 0;
};

namespace detail {

// One rule application at one node.
struct RuleFiring {
    std::string rule_id;
    bool alt_anchor = false;
    Verdict verdict = Verdict::unknown();
    std::optional<Rational> exact_value;
    bool rat_only_if_zero = false;
    Json evidence = Json::object();
    std::vector<CertPtr> premises;
    std::optional<DisjunctiveConclusion> disj;  // set when the rule records a disjunctive fact
    std::vector<Expr> disj_members;
};

inline Json minpoly_json(const AlgebraicNumber& a) {
    Json arr = Json::array();
    for (const auto& c : a.minpoly().c) arr.push_back(c.get_str());
    return arr;
}

// arctrig(x)/pi for the finitely many rational x with a rational ratio
// (complete for rationals by Niven's theorem).
inline const std::map<TrigKind, std::map<Rational, Rational>>& arc_special_table() {
    static const std::map<TrigKind, std::map<Rational, Rational>> table = [] {
        std::map<TrigKind, std::map<Rational, Rational>> t;
        auto q = [](long n, long d = 1) { return make_rational(n, d); };
        t[TrigKind::Sin] = {{q(0), q(0)}, {q(1, 2), q(1, 6)}, {q(-1, 2), q(-1, 6)}, {q(1), q(1, 2)}, {q(-1), q(-1, 2)}};
        t[TrigKind::Cos] = {{q(1), q(0)}, {q(1, 2), q(1, 3)}, {q(0), q(1, 2)}, {q(-1, 2), q(2, 3)}, {q(-1), q(1)}};
        t[TrigKind::Tan] = {{q(0), q(0)}, {q(1), q(1, 4)}, {q(-1), q(-1, 4)}};
        t[TrigKind::Sec] = {{q(1), q(0)}, {q(2), q(1, 3)}, {q(-2), q(2, 3)}, {q(-1), q(1)}};
        t[TrigKind::Csc] = {{q(1), q(1, 2)}, {q(2), q(1, 6)}, {q(-2), q(-1, 6)}, {q(-1), q(-1, 2)}};
        t[TrigKind::Cot] = {{q(1), q(1, 4)}, {q(-1), q(-1, 4)}, {q(0), q(1, 2)}};
        return t;
    }();
    return table;
}

inline const char* arc_z_construction(TrigKind k) {
    switch (k) {
        case TrigKind::Cos: return "z = x ± sqrt(1 - x^2) i";
        case TrigKind::Sec: return "z = ±1 ± sqrt(x^2 - 1) i";
        case TrigKind::Sin: return "z = ±sqrt(1 - x^2) + x i";
        case TrigKind::Csc: return "z = ±sqrt(x^2 - 1) ± i";
        case TrigKind::Tan: return "z = ±1 + x i";
        case TrigKind::Cot: return "z = x ± i";
    }
    return "?";
}

class Classifier {
public:
    explicit Classifier(KnowledgeBase& kb) : kb_(kb) {}

    const Fact& classify(const Expr& e) {
        const Fact& f = classify_node(e);
        propagate();
        return *kb_.find(f.subject);
    }

    struct SetResult {
        std::vector<Fact> facts;
        std::vector<DisjunctiveFact> disjunctive;
    };

    SetResult classify_set(const std::vector<Expr>& es) {
        for (const auto& e : es) classify_node(e);
        apply_two_of_three(es);
        propagate();
        SetResult r;
        for (const auto& e : es) r.facts.push_back(*kb_.find(e));
        r.disjunctive = kb_.disjunctive_;
        return r;
    }

    void inject_hypothesis(const Expr& e, const Verdict& v) {
        if (!kb_.config_.allow_hypotheses)
            throw Error("hypothetical facts are disabled for this knowledge base");
        Certificate c;
        c.rule_id = "HYP";
        c.subject = render_compact(e);
        c.verdict = v;
        upsert_fact(e, v, std::nullopt, false, make_cert(std::move(c)));
    }

    const std::vector<RuleFiring>& firings_at(const Expr& e) {
        classify_node(e);
        return firings_[e];
    }

private:
    // ---- shared guards -----------------------------------------------------

    const AlgebraicEval& alg(const Expr& e) {
        auto it = kb_.alg_cache_.find(e);
        if (it != kb_.alg_cache_.end()) return it->second;
        AlgebraicEval v = try_eval_algebraic(e, kb_.config_.caps);
        return kb_.alg_cache_.emplace(e, std::move(v)).first->second;
    }

    std::optional<AlgebraicNumber> alg_value(const Expr& e) {
        const AlgebraicEval& v = alg(e);
        if (v.ok()) return v.value;
        return std::nullopt;
    }

    bool is_trans(const Expr& e) {
        const Fact* f = kb_.find(e);
        return f && f->verdict.is_exactly(nature::kTrans);
    }

    CertPtr cert_of(const Expr& e) {
        const Fact* f = kb_.find(e);
        return f ? f->cert : nullptr;
    }

    // beta * inner(kind) decomposition: expr is inner itself, or a product
    // of algebraic factors with exactly one inner(kind) factor.
    struct CoeffInner {
        AlgebraicNumber beta;
        Expr inner_arg;
    };

    std::optional<CoeffInner> coeff_times(const Expr& child, NodeKind inner) {
        if (child.kind() == inner) return CoeffInner{from_rational(1, 1), child.kid(0)};
        if (child.kind() != NodeKind::Mul) return std::nullopt;
        std::optional<Expr> arg;
        AlgebraicNumber beta = from_rational(1, 1);
        for (const auto& k : child.kids()) {
            if (k.kind() == inner && !arg) {
                arg = k.kid(0);
                continue;
            }
            auto a = alg_value(k);
            if (!a) return std::nullopt;
            beta = field_op(FieldOpKind::Mul, beta, &*a, kb_.config_.caps);
        }
        if (!arg) return std::nullopt;
        return CoeffInner{std::move(beta), *arg};
    }

    // rational coefficient, sqrt-radicand n, for terms c * sqrt(n) * pi.
    struct PiTerm {
        Rational coeff;
        Integer radicand{1};
    };

    std::optional<PiTerm> pi_term(const Expr& child) {
        if (child.is_const(ConstKind::Pi)) return PiTerm{Rational(1), Integer(1)};
        if (child.kind() != NodeKind::Mul) return std::nullopt;
        PiTerm t{Rational(1), Integer(1)};
        bool saw_pi = false;
        for (const auto& k : child.kids()) {
            if (k.is_const(ConstKind::Pi) && !saw_pi) {
                saw_pi = true;
                continue;
            }
            if (k.is_rational()) {
                t.coeff *= k.rat();
                continue;
            }
            if (k.kind() == NodeKind::Sqrt && k.kid(0).is_rational() && t.radicand == 1) {
                const Rational& n = k.kid(0).rat();
                if (is_integer(n) && n > 1) {
                    t.radicand = n.get_num();
                    continue;
                }
            }
            return std::nullopt;
        }
        if (!saw_pi || t.coeff == 0) return std::nullopt;
        return t;
    }

    // Exact comparison of a real algebraic number with a rational.
    int real_cmp(const AlgebraicNumber& a, const Rational& q) {
        if (auto r = a.as_rational()) return r < q ? -1 : (r > q ? 1 : 0);
        Box b = a.box();
        for (int i = 0; i < 256; ++i) {
            if (b.re_hi < q) return -1;
            if (b.re_lo > q) return 1;
            b = refine_box(AlgebraicNumber(a.minpoly(), b), b.halfwidth() / 4);
        }
        throw PrecisionExhausted("real comparison stalled");
    }

    // ---- per-node classification --------------------------------------------

    const Fact& classify_node(const Expr& e) {
        if (const Fact* f = kb_.find(e)) return *f;
        for (const auto& k : e.kids()) classify_node(k);

        std::vector<RuleFiring> firings;
        apply_rules(e, firings);

        Verdict verdict = Verdict::unknown();
        std::optional<Rational> exact;
        bool roiz = false;
        std::vector<CertPtr> rule_certs;
        for (const auto& f : firings) {
            if (f.disj) continue;  // disjunctive recordings do not bind this node
            verdict = intersect(verdict, f.verdict);
            if (!exact && f.exact_value) exact = f.exact_value;
            roiz = roiz || f.rat_only_if_zero;
            rule_certs.push_back(firing_cert(e, f));
        }
        roiz = roiz && verdict.is_exactly(nature::kRatOrTrans);

        // Baker dichotomy + rigorous nonvanishing => transcendental.
        if (roiz) {
            NonzeroCertification nz = certify_nonzero(e, kb_.config_.max_precision);
            if (nz.nonzero) {
                RuleFiring up;
                up.rule_id = "R-NZ-UPGRADE";
                up.verdict = Verdict::transcendental();
                up.evidence["precision_bits"] = static_cast<long>(nz.precision_bits);
                up.premises = rule_certs;
                verdict = intersect(verdict, up.verdict);
                roiz = false;
                exact.reset();
                rule_certs.push_back(firing_cert(e, up));
            }
        }

        CertPtr cert;
        if (rule_certs.empty()) {
            Certificate c;
            c.rule_id = "TOP";
            c.subject = render_compact(e);
            c.verdict = verdict;
            cert = make_cert(std::move(c));
        } else if (rule_certs.size() == 1) {
            cert = rule_certs[0];
        } else {
            Certificate c;
            c.rule_id = "INTERSECT";
            c.subject = render_compact(e);
            c.verdict = verdict;
            c.exact_value = exact;
            c.premises = rule_certs;
            cert = make_cert(std::move(c));
        }

        const Fact& out = upsert_fact(e, verdict, exact, roiz, cert);
        firings_[e] = std::move(firings);

        // Disjunctive recordings (need this node's fact in place first).
        for (const auto& f : firings_[e]) {
            if (!f.disj) continue;
            DisjunctiveFact df;
            df.members = f.disj_members;
            df.at_least = f.disj->at_least;
            df.cls = f.disj->cls;
            df.cert = firing_cert(e, f);
            add_disjunctive(std::move(df));
        }
        return out;
    }

    const Fact& upsert_fact(const Expr& e, const Verdict& v, std::optional<Rational> exact, bool roiz,
                            CertPtr cert) {
        auto it = kb_.facts_.find(e);
        if (it == kb_.facts_.end()) {
            Fact f{e, v, std::move(exact), roiz, std::move(cert)};
            return kb_.facts_.emplace(e, std::move(f)).first->second;
        }
        it->second.verdict = intersect(it->second.verdict, v);
        if (!it->second.exact_value && exact) it->second.exact_value = exact;
        it->second.cert = std::move(cert);
        return it->second;
    }

    CertPtr firing_cert(const Expr& e, const RuleFiring& f) {
        Certificate c;
        c.rule_id = f.rule_id;
        c.alt_anchor = f.alt_anchor;
        c.evidence = f.evidence;
        c.premises = f.premises;
        if (f.disj) {
            c.disjunctive = f.disj;
        } else {
            c.subject = render_compact(e);
            c.verdict = f.verdict;
            c.exact_value = f.exact_value;
        }
        return make_cert(std::move(c));
    }

    void add_disjunctive(DisjunctiveFact df) {
        std::sort(df.members.begin(), df.members.end());
        for (const auto& d : kb_.disjunctive_) {
            if (d.members == df.members && d.at_least == df.at_least && d.cls == df.cls) return;
        }
        kb_.disjunctive_.push_back(std::move(df));
    }

    // ---- rule dispatch -------------------------------------------------------

    void apply_rules(const Expr& e, std::vector<RuleFiring>& out) {
        switch (e.kind()) {
            case NodeKind::Rational: {
                RuleFiring f;
                f.rule_id = "CL1";
                bool nz = e.rat() != 0;
                f.verdict = Verdict::of(nature::kRat, nz);
                f.exact_value = e.rat();
                out.push_back(std::move(f));
                return;
            }
            case NodeKind::Constant: {
                RuleFiring f;
                switch (e.const_kind()) {
                    case ConstKind::E: f.rule_id = "B1"; f.verdict = Verdict::transcendental(); break;
                    case ConstKind::Pi: f.rule_id = "B2"; f.verdict = Verdict::transcendental(); break;
                    case ConstKind::I:
                        f.rule_id = "B3";
                        f.verdict = Verdict::of(nature::kAlgIrr, true);
                        f.evidence["minpoly"] = minpoly_json(imaginary_unit());
                        break;
                }
                out.push_back(std::move(f));
                return;
            }
            default: break;
        }

        rule_algebraic_value(e, out);
        switch (e.kind()) {
            case NodeKind::Exp:
                rule_hl_exp(e, out);
                rule_baker_exp(e, out);
                break;
            case NodeKind::Ln: rule_hl_ln(e, out); break;
            case NodeKind::Sqrt: rule_cl3_pow(e, e.kid(0), make_rational(1, 2), out); break;
            case NodeKind::Pow:
                rule_gs(e, out);
                if (e.kid(1).is_rational() && e.kid(1).rat() != 0)
                    rule_cl3_pow(e, e.kid(0), e.kid(1).rat(), out);
                break;
            case NodeKind::Add:
                rule_cl3_split(e, out);
                rule_lw_sum(e, out);
                rule_baker_lin(e, out);
                rule_lnpi(e, out);
                rule_invt_add(e, out);
                rule_sumprod_quad(e, out);
                break;
            case NodeKind::Mul:
                rule_cl3_split(e, out);
                rule_logratio(e, out);
                rule_arc_over_pi(e, out);
                rule_alnb_pi(e, out);
                rule_baker_prod(e, out);
                rule_baker_prod2(e, out);
                rule_invt_mul(e, out);
                rule_sumprod_quad(e, out);
                break;
            case NodeKind::Trig:
                rule_lw_trig(e, out);
                rule_trigpi(e, out);
                rule_trig_ln(e, out);
                break;
            case NodeKind::Hyp:
                rule_lw_trig(e, out);
                rule_hyp_ln(e, out);
                break;
            default: break;
        }
    }

    // CL2/CL4: the node's value is structurally algebraic.
    void rule_algebraic_value(const Expr& e, std::vector<RuleFiring>& out) {
        auto a = alg_value(e);
        if (!a) return;
        RuleFiring f;
        f.rule_id = (e.kind() == NodeKind::Add || e.kind() == NodeKind::Mul) ? "CL4" : "CL2";
        bool nz = !a->is_zero();
        if (auto r = a->as_rational()) {
            f.verdict = Verdict::of(nature::kRat, nz);
            f.exact_value = r;
        } else {
            f.verdict = Verdict::of(nature::kAlgIrr, true);
        }
        f.evidence["minpoly"] = minpoly_json(*a);
        for (const auto& k : e.kids()) f.premises.push_back(cert_of(k));
        out.push_back(std::move(f));
    }

    // CL3 over flattened Add/Mul: algebraic part plus a transcendental rest.
    void rule_cl3_split(const Expr& e, std::vector<RuleFiring>& out) {
        if (alg(e).ok()) return;  // CL2/CL4 already decide
        bool is_add = e.kind() == NodeKind::Add;
        std::vector<Expr> algebraic, rest;
        for (const auto& k : e.kids()) {
            if (alg_value(k)) algebraic.push_back(k);
            else rest.push_back(k);
        }
        if (algebraic.empty() || rest.empty()) return;
        // Exactness of the algebraic part's value (nonzero needed for Mul).
        std::optional<AlgebraicNumber> part;
        for (const auto& k : algebraic) {
            auto v = alg_value(k);
            if (!part) part = *v;
            else part = field_op(is_add ? FieldOpKind::Add : FieldOpKind::Mul, *part, &*v,
                                 kb_.config_.caps);
        }
        if (!is_add && part->is_zero()) return;
        Expr remainder = rest.size() == 1
                             ? rest[0]
                             : canonicalize(is_add ? Expr::add(rest) : Expr::mul(rest));
        const Fact& rf = classify_node(remainder);
        if (!rf.verdict.is_exactly(nature::kTrans)) return;
        RuleFiring f;
        f.rule_id = "CL3";
        f.verdict = Verdict::transcendental();
        f.evidence["algebraic_part_minpoly"] = minpoly_json(*part);
        f.evidence["transcendental_part"] = render_compact(remainder);
        f.premises.push_back(rf.cert);
        for (const auto& k : algebraic) f.premises.push_back(cert_of(k));
        out.push_back(std::move(f));
    }

    // CL3 for t^r with rational r != 0 (Sqrt is r = 1/2).
    void rule_cl3_pow(const Expr& e, const Expr& base, const Rational& r,
                      std::vector<RuleFiring>& out) {
        if (alg(e).ok()) return;
        if (r == 0 || !is_trans(base)) return;
        RuleFiring f;
        f.rule_id = "CL3";
        f.verdict = Verdict::transcendental();
        f.evidence["exponent"] = r.get_str();
        f.premises.push_back(cert_of(base));
        out.push_back(std::move(f));
    }

    void rule_hl_exp(const Expr& e, std::vector<RuleFiring>& out) {
        auto u = alg_value(e.kid(0));
        if (!u || u->is_zero()) return;
        RuleFiring f;
        f.rule_id = "R-HL-EXP";
        f.verdict = Verdict::transcendental();
        f.evidence["arg_minpoly"] = minpoly_json(*u);
        f.premises.push_back(cert_of(e.kid(0)));
        out.push_back(std::move(f));
    }

    void rule_hl_ln(const Expr& e, std::vector<RuleFiring>& out) {
        auto u = alg_value(e.kid(0));
        if (!u || u->is_zero() || u->is_one()) return;
        RuleFiring f;
        f.rule_id = "R-HL-LN";
        f.verdict = Verdict::transcendental();
        f.evidence["arg_minpoly"] = minpoly_json(*u);
        f.premises.push_back(cert_of(e.kid(0)));
        out.push_back(std::move(f));
    }

    // exp(alpha + pi*beta) with algebraic alpha, beta, beta != 0.
    void rule_baker_exp(const Expr& e, std::vector<RuleFiring>& out) {
        const Expr& w = e.kid(0);
        std::vector<Expr> terms = w.kind() == NodeKind::Add ? w.kids() : std::vector<Expr>{w};
        std::optional<AlgebraicNumber> alpha, beta;
        for (const auto& t : terms) {
            if (auto a = alg_value(t)) {
                alpha = alpha ? field_op(FieldOpKind::Add, *alpha, &*a, kb_.config_.caps) : *a;
                continue;
            }
            if (auto ct = coeff_times_pi(t)) {
                beta = beta ? field_op(FieldOpKind::Add, *beta, &*ct, kb_.config_.caps) : *ct;
                continue;
            }
            return;
        }
        if (!beta || beta->is_zero()) return;  // pure algebraic exponent is R-HL-EXP's case
        if (!alpha) alpha = from_rational(0, 1);
        RuleFiring f;
        f.rule_id = "R-BAKER-EXP";
        f.verdict = Verdict::transcendental();
        f.evidence["alpha_minpoly"] = minpoly_json(*alpha);
        f.evidence["beta_minpoly"] = minpoly_json(*beta);
        if (!alpha->is_zero()) {
            f.evidence["branch"] = "alpha_nonzero";
        } else {
            AlgebraicNumber i = imaginary_unit();
            AlgebraicNumber ib = field_op(FieldOpKind::Mul, i, &*beta, kb_.config_.caps);
            if (ib.as_rational()) return;  // i*beta rational: (-1)^(i beta) may be algebraic
            f.alt_anchor = true;  // Hilbert's-7th footnote branch
            f.evidence["branch"] = "alpha_zero_ibeta_irrational";
            f.evidence["i_beta_minpoly"] = minpoly_json(ib);
        }
        f.premises.push_back(cert_of(e.kid(0)));
        out.push_back(std::move(f));
    }

    // algebraic coefficient times pi (beta*pi), beta exact.
    std::optional<AlgebraicNumber> coeff_times_pi(const Expr& t) {
        if (t.is_const(ConstKind::Pi)) return from_rational(1, 1);
        if (t.kind() != NodeKind::Mul) return std::nullopt;
        bool saw_pi = false;
        AlgebraicNumber beta = from_rational(1, 1);
        for (const auto& k : t.kids()) {
            if (k.is_const(ConstKind::Pi) && !saw_pi) {
                saw_pi = true;
                continue;
            }
            auto a = alg_value(k);
            if (!a) return std::nullopt;
            beta = field_op(FieldOpKind::Mul, beta, &*a, kb_.config_.caps);
        }
        if (!saw_pi) return std::nullopt;
        return beta;
    }

    void rule_gs(const Expr& e, std::vector<RuleFiring>& out) {
        auto u = alg_value(e.kid(0));
        auto v = alg_value(e.kid(1));
        if (!u || !v) return;
        if (u->is_zero() || u->is_one()) return;
        if (v->as_rational()) return;
        RuleFiring f;
        f.rule_id = "R-GS";
        f.verdict = Verdict::transcendental();
        f.evidence["base_minpoly"] = minpoly_json(*u);
        f.evidence["exponent_minpoly"] = minpoly_json(*v);
        f.premises.push_back(cert_of(e.kid(0)));
        f.premises.push_back(cert_of(e.kid(1)));
        out.push_back(std::move(f));
    }

    // Sum of beta_k exp(alpha_k), exponents collected exactly.
    void rule_lw_sum(const Expr& e, std::vector<RuleFiring>& out) {
        std::vector<std::pair<AlgebraicNumber, AlgebraicNumber>> terms;  // (beta, alpha-value)
        for (const auto& k : e.kids()) {
            auto ct = coeff_times(k, NodeKind::Exp);
            if (!ct) return;
            auto a = alg_value(ct->inner_arg);
            if (!a || a->is_zero()) return;
            terms.emplace_back(std::move(ct->beta), std::move(*a));
        }
        // Collect equal exponents; drop groups whose betas cancel exactly.
        std::vector<std::pair<AlgebraicNumber, AlgebraicNumber>> groups;
        for (auto& [beta, a] : terms) {
            bool merged = false;
            for (auto& [gb, ga] : groups) {
                if (equals(ga, a)) {
                    gb = field_op(FieldOpKind::Add, gb, &beta, kb_.config_.caps);
                    merged = true;
                    break;
                }
            }
            if (!merged) groups.emplace_back(beta, a);
        }
        int live = 0;
        for (auto& [gb, ga] : groups)
            if (!gb.is_zero()) ++live;
        if (live == 0) return;
        RuleFiring f;
        f.rule_id = "R-LW-SUM";
        f.verdict = Verdict::transcendental();
        f.evidence["terms"] = static_cast<int>(groups.size());
        Json alphas = Json::array();
        for (auto& [gb, ga] : groups) {
            Json t = Json::object();
            t["alpha_minpoly"] = minpoly_json(ga);
            t["beta_minpoly"] = minpoly_json(gb);
            alphas.push_back(std::move(t));
        }
        f.evidence["collected"] = std::move(alphas);
        for (const auto& k : e.kids()) f.premises.push_back(cert_of(k));
        out.push_back(std::move(f));
    }

    // Sum of beta_k ln(alpha_k).
    void rule_baker_lin(const Expr& e, std::vector<RuleFiring>& out) {
        std::vector<AlgebraicNumber> betas;
        std::vector<AlgebraicNumber> args;
        for (const auto& k : e.kids()) {
            auto ct = coeff_times(k, NodeKind::Ln);
            if (!ct) return;
            auto a = alg_value(ct->inner_arg);
            if (!a || a->is_zero()) return;
            betas.push_back(std::move(ct->beta));
            args.push_back(std::move(*a));
        }
        bool exact_case = true;
        std::vector<Rational> ratios, arg_rats;
        for (std::size_t i = 0; i < betas.size(); ++i) {
            auto br = betas[i].as_rational();
            auto ar = args[i].as_rational();
            if (!br || !ar || *ar <= 0) {
                exact_case = false;
                break;
            }
            ratios.push_back(*br);
            arg_rats.push_back(*ar);
        }
        RuleFiring f;
        f.rule_id = "R-BAKER-LIN";
        for (const auto& k : e.kids()) f.premises.push_back(cert_of(k));
        if (exact_case) {
            // sum beta_k ln a_k = (1/D) ln(prod a_k^(D beta_k)) with D the
            // common denominator: exactly zero iff the power product is 1.
            Integer d(1);
            for (const auto& b : ratios) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), b.get_den().get_mpz_t());
            Rational prod(1);
            for (std::size_t i = 0; i < ratios.size(); ++i) {
                Rational scaled = ratios[i] * Rational(d);
                prod *= pow_rational(arg_rats[i], scaled.get_num().get_si());
            }
            f.evidence["denominator"] = d.get_str();
            f.evidence["power_product"] = prod.get_str();
            if (prod == 1) {
                f.verdict = Verdict::of(nature::kRat);
                f.exact_value = Rational(0);
            } else {
                f.verdict = Verdict::transcendental();
            }
        } else {
            f.verdict = Verdict::of(nature::kRatOrTrans);
            f.rat_only_if_zero = true;
            Json ev = Json::array();
            for (std::size_t i = 0; i < betas.size(); ++i) {
                Json t = Json::object();
                t["beta_minpoly"] = minpoly_json(betas[i]);
                t["alpha_minpoly"] = minpoly_json(args[i]);
                ev.push_back(std::move(t));
            }
            f.evidence["terms"] = std::move(ev);
        }
        out.push_back(std::move(f));
    }

    // q ln(pi) + ln(r) - p sqrt(n) pi != 0  (and the Corollary 9 form).
    void rule_lnpi(const Expr& e, std::vector<RuleFiring>& out) {
        Rational lnpi_coeff(0), pi_coeff(0), lnr(1);
        Integer radicand(1);
        bool saw_lnpi = false, saw_pi = false, saw_lnr = false;
        for (const auto& k : e.kids()) {
            if (auto ct = coeff_times(k, NodeKind::Ln)) {
                const Expr& arg = ct->inner_arg;
                auto br = ct->beta.as_rational();
                if (!br) return;
                if (arg.is_const(ConstKind::Pi)) {
                    lnpi_coeff += *br;
                    saw_lnpi = true;
                    continue;
                }
                if (arg.is_rational() && arg.rat() != 0) {
                    // integer multiples of ln r fold into r^c exactly
                    if (!is_integer(*br) || !br->get_num().fits_slong_p()) return;
                    lnr *= pow_rational(arg.rat(), br->get_num().get_si());
                    saw_lnr = true;
                    continue;
                }
                return;
            }
            if (auto pt = pi_term(k)) {
                if (saw_pi && pt->radicand != radicand) return;
                pi_coeff += pt->coeff;
                radicand = pt->radicand;
                saw_pi = true;
                continue;
            }
            return;
        }
        if (!saw_lnpi && !saw_pi) return;
        // Normalize the overall sign so the ln(pi) coefficient is >= 0.
        Rational q = lnpi_coeff, b = pi_coeff, r = lnr;
        if (q < 0 || (q == 0 && b > 0)) {
            q = -q;
            b = -b;
            r = r == 0 ? r : Rational(1) / r;
        }
        if (q == 0 && b == 0) return;
        Rational p = -b;
        bool lnpi_form = is_integer(q) && is_integer(p) && p >= 0 && r != 0 && (saw_lnr || true);
        RuleFiring f;
        for (const auto& k : e.kids()) f.premises.push_back(cert_of(k));
        if (saw_lnr) {
            if (!lnpi_form) return;
            f.rule_id = "R-LNPI";
            f.evidence["q"] = q.get_str();
            f.evidence["p"] = p.get_str();
            f.evidence["r"] = r.get_str();
            f.evidence["n"] = radicand.get_str();
        } else if (lnpi_form) {
            f.rule_id = "R-LNPI";
            f.evidence["q"] = q.get_str();
            f.evidence["p"] = p.get_str();
            f.evidence["r"] = "1";
            f.evidence["n"] = radicand.get_str();
        } else {
            f.rule_id = "R-LNPI-LI";
            f.evidence["a"] = q.get_str();
            f.evidence["b"] = b.get_str();
            f.evidence["n"] = radicand.get_str();
        }
        f.verdict = Verdict::of(nature::kAll, true);
        out.push_back(std::move(f));
    }

    // ln(u) / ln(v).
    void rule_logratio(const Expr& e, std::vector<RuleFiring>& out) {
        if (e.arity() != 2) return;
        const Expr* num = nullptr;
        const Expr* den = nullptr;
        for (const auto& k : e.kids()) {
            if (k.kind() == NodeKind::Ln) num = &k;
            else if (k.kind() == NodeKind::Pow && k.kid(1).is_rational_value(-1) &&
                     k.kid(0).kind() == NodeKind::Ln)
                den = &k;
        }
        if (!num || !den) return;
        auto u = alg_value(num->kid(0));
        auto v = alg_value(den->kid(0).kid(0));
        if (!u || !v || u->is_zero() || v->is_zero() || v->is_one()) return;
        RuleFiring f;
        f.rule_id = "R-LOGRATIO";
        f.evidence["u_minpoly"] = minpoly_json(*u);
        f.evidence["v_minpoly"] = minpoly_json(*v);
        f.premises.push_back(cert_of(*num));
        f.premises.push_back(cert_of(*den));
        auto ur = u->as_rational();
        auto vr = v->as_rational();
        if (ur && vr && *ur > 0 && *vr > 0) {
            auto dep = multiplicative_dependence(*ur, *vr);
            if (dep) {
                f.verdict = Verdict::of(nature::kRat);
                f.exact_value = make_rational(dep->second, dep->first);
                f.evidence["dependence"] = Json::array({dep->first.get_str(), dep->second.get_str()});
            } else {
                f.verdict = Verdict::transcendental();
                f.evidence["dependence"] = "independent";
            }
        } else {
            f.verdict = Verdict::of(nature::kRatOrTrans);
        }
        out.push_back(std::move(f));
    }

    // arctrig(x) / pi.
    void rule_arc_over_pi(const Expr& e, std::vector<RuleFiring>& out) {
        if (e.arity() != 2) return;
        const Expr* arc = nullptr;
        bool inv_pi = false;
        for (const auto& k : e.kids()) {
            if (k.kind() == NodeKind::ArcTrig) arc = &k;
            else if (k.kind() == NodeKind::Pow && k.kid(1).is_rational_value(-1) &&
                     k.kid(0).is_const(ConstKind::Pi))
                inv_pi = true;
        }
        if (!arc || !inv_pi) return;
        TrigKind kind = arc->trig_kind();
        auto x = alg_value(arc->kid(0));
        if (!x) return;
        if (auto xr = x->as_rational()) {
            const auto& table = arc_special_table().at(kind);
            auto hit = table.find(*xr);
            if (hit != table.end()) {
                RuleFiring f;
                f.rule_id = "R-ARC-SPECIAL";
                f.verdict = Verdict::of(nature::kRat, hit->second != 0);
                f.exact_value = hit->second;
                f.evidence["x"] = xr->get_str();
                f.evidence["ratio"] = hit->second.get_str();
                f.premises.push_back(cert_of(*arc));
                out.push_back(std::move(f));
                return;
            }
            if (kind == TrigKind::Tan) {
                RuleFiring f;
                f.rule_id = "R-ARCTAN";
                f.verdict = Verdict::transcendental();
                f.evidence["x"] = xr->get_str();
                f.evidence["z_construction"] = arc_z_construction(kind);
                f.evidence["quotient_form"] = "arctan(x)/pi = theta/pi";
                f.premises.push_back(cert_of(*arc));
                out.push_back(std::move(f));
                return;
            }
        }
        if (!x->is_real()) return;
        // Domain of the real arc by kind.
        bool in_domain = true;
        switch (kind) {
            case TrigKind::Sin:
            case TrigKind::Cos:
                in_domain = real_cmp(*x, Rational(-1)) >= 0 && real_cmp(*x, Rational(1)) <= 0;
                break;
            case TrigKind::Sec:
            case TrigKind::Csc:
                in_domain = real_cmp(*x, Rational(1)) >= 0 || real_cmp(*x, Rational(-1)) <= 0;
                break;
            default: break;
        }
        if (!in_domain) return;
        RuleFiring f;
        f.rule_id = "R-ARCTRIG";
        f.verdict = Verdict::of(nature::kRatOrTrans);
        f.evidence["x_minpoly"] = minpoly_json(*x);
        f.evidence["z_construction"] = arc_z_construction(kind);
        f.evidence["quotient_form"] = "theta/pi = ln(z/|z|) / ln(-1)";
        f.premises.push_back(cert_of(*arc));
        out.push_back(std::move(f));
    }

    // (alpha + ln(beta)) / pi.
    void rule_alnb_pi(const Expr& e, std::vector<RuleFiring>& out) {
        if (e.arity() != 2) return;
        const Expr* sum = nullptr;
        bool inv_pi = false;
        for (const auto& k : e.kids()) {
            if (k.kind() == NodeKind::Add) sum = &k;
            else if (k.kind() == NodeKind::Pow && k.kid(1).is_rational_value(-1) &&
                     k.kid(0).is_const(ConstKind::Pi))
                inv_pi = true;
        }
        if (!sum || !inv_pi) return;
        std::optional<AlgebraicNumber> alpha;
        std::optional<AlgebraicNumber> beta;
        for (const auto& k : sum->kids()) {
            if (k.kind() == NodeKind::Ln && !beta) {
                auto b = alg_value(k.kid(0));
                if (!b || b->is_zero()) return;
                beta = *b;
                continue;
            }
            auto a = alg_value(k);
            if (!a) return;
            alpha = alpha ? field_op(FieldOpKind::Add, *alpha, &*a, kb_.config_.caps) : *a;
        }
        if (!alpha || !beta || alpha->is_zero()) return;
        RuleFiring f;
        f.rule_id = "R-ALNB-PI";
        f.verdict = Verdict::transcendental();
        f.evidence["alpha_minpoly"] = minpoly_json(*alpha);
        f.evidence["beta_minpoly"] = minpoly_json(*beta);
        f.premises.push_back(cert_of(*sum));
        out.push_back(std::move(f));
    }

    // exp(b0) * prod a_k^(b_k), everything algebraic and nonzero.
    void rule_baker_prod(const Expr& e, std::vector<RuleFiring>& out) {
        std::optional<AlgebraicNumber> b0;
        int pow_terms = 0;
        std::vector<CertPtr> premises;
        for (const auto& k : e.kids()) {
            if (k.kind() == NodeKind::Exp) {
                if (b0) return;  // a single exponential factor
                auto w = alg_value(k.kid(0));
                if (!w || w->is_zero()) return;
                b0 = *w;
                premises.push_back(cert_of(k));
                continue;
            }
            if (k.kind() == NodeKind::Pow) {
                auto u = alg_value(k.kid(0));
                auto v = alg_value(k.kid(1));
                if (!u || !v || u->is_zero() || v->is_zero()) return;
                ++pow_terms;
                premises.push_back(cert_of(k));
                continue;
            }
            auto a = alg_value(k);  // plain algebraic factor = a^1
            if (!a || a->is_zero()) return;
            premises.push_back(cert_of(k));
        }
        if (!b0) return;
        RuleFiring f;
        f.rule_id = "R-BAKER-PROD";
        f.verdict = Verdict::transcendental();
        f.evidence["beta0_minpoly"] = minpoly_json(*b0);
        f.evidence["power_factors"] = pow_terms;
        f.premises = std::move(premises);
        out.push_back(std::move(f));
    }

    // prod a_k^(b_k) with 1, b_1, ..., b_n linearly independent over Q.
    void rule_baker_prod2(const Expr& e, std::vector<RuleFiring>& out) {
        std::vector<AlgebraicNumber> exponents;
        std::vector<CertPtr> premises;
        for (const auto& k : e.kids()) {
            if (k.kind() != NodeKind::Pow) return;
            auto u = alg_value(k.kid(0));
            auto v = alg_value(k.kid(1));
            if (!u || !v || u->is_zero() || u->is_one()) return;
            exponents.push_back(*v);
            premises.push_back(cert_of(k));
        }
        if (exponents.size() < 2) return;
        if (q_linear_independent_with_one(exponents, kb_.config_.caps) != Trilean::True) return;
        RuleFiring f;
        f.rule_id = "R-BAKER-PROD2";
        f.verdict = Verdict::transcendental();
        Json ev = Json::array();
        for (const auto& v : exponents) ev.push_back(minpoly_json(v));
        f.evidence["exponent_minpolys"] = std::move(ev);
        f.evidence["independence"] = "exact tower coordinates";
        f.premises = std::move(premises);
        out.push_back(std::move(f));
    }

    // alpha*t + beta/t with a shared transcendental t.
    void rule_invt_add(const Expr& e, std::vector<RuleFiring>& out) {
        if (e.arity() != 2) return;
        struct Part {
            AlgebraicNumber coeff;
            Expr core;
            bool inverted;
        };
        auto split = [&](const Expr& k) -> std::optional<Part> {
            Expr body = k;
            AlgebraicNumber coeff = from_rational(1, 1);
            if (k.kind() == NodeKind::Mul) {
                std::optional<Expr> non_alg;
                for (const auto& g : k.kids()) {
                    if (auto a = alg_value(g)) {
                        coeff = field_op(FieldOpKind::Mul, coeff, &*a, kb_.config_.caps);
                        continue;
                    }
                    if (non_alg) return std::nullopt;
                    non_alg = g;
                }
                if (!non_alg) return std::nullopt;
                body = *non_alg;
            }
            if (body.kind() == NodeKind::Pow && body.kid(1).is_rational_value(-1))
                return Part{coeff, body.kid(0), true};
            return Part{coeff, body, false};
        };
        auto p1 = split(e.kid(0));
        auto p2 = split(e.kid(1));
        if (!p1 || !p2) return;
        if (p1->inverted == p2->inverted) return;
        const Part& direct = p1->inverted ? *p2 : *p1;
        const Part& inverted = p1->inverted ? *p1 : *p2;
        if (direct.core != inverted.core) return;
        if (!is_trans(direct.core)) return;
        if (direct.coeff.is_zero() && inverted.coeff.is_zero()) return;
        RuleFiring f;
        f.rule_id = "R-INVT";
        f.verdict = Verdict::transcendental();
        f.evidence["alpha_minpoly"] = minpoly_json(direct.coeff);
        f.evidence["beta_minpoly"] = minpoly_json(inverted.coeff);
        f.evidence["t"] = render_compact(direct.core);
        f.premises.push_back(cert_of(direct.core));
        out.push_back(std::move(f));
    }

    // t * (alpha - t) with transcendental t.
    void rule_invt_mul(const Expr& e, std::vector<RuleFiring>& out) {
        if (e.arity() != 2) return;
        for (int which = 0; which < 2; ++which) {
            const Expr& t = e.kid(static_cast<std::size_t>(which));
            const Expr& other = e.kid(static_cast<std::size_t>(1 - which));
            if (other.kind() != NodeKind::Add || !is_trans(t)) continue;
            std::optional<AlgebraicNumber> alpha;
            bool saw_minus_t = false;
            bool ok = true;
            for (const auto& k : other.kids()) {
                if (!saw_minus_t && k.kind() == NodeKind::Mul && k.arity() == 2 &&
                    k.kid(0).is_rational_value(-1) && k.kid(1) == t) {
                    saw_minus_t = true;
                    continue;
                }
                auto a = alg_value(k);
                if (!a) {
                    ok = false;
                    break;
                }
                alpha = alpha ? field_op(FieldOpKind::Add, *alpha, &*a, kb_.config_.caps) : *a;
            }
            if (!ok || !saw_minus_t || !alpha) continue;
            RuleFiring f;
            f.rule_id = "R-INVT";
            f.verdict = Verdict::transcendental();
            f.evidence["alpha_minpoly"] = minpoly_json(*alpha);
            f.evidence["t"] = render_compact(t);
            f.evidence["form"] = "t*(alpha - t)";
            f.premises.push_back(cert_of(t));
            out.push_back(std::move(f));
            return;
        }
    }

    // Disjunctive recordings at 2-child sums/products.
    void rule_sumprod_quad(const Expr& e, std::vector<RuleFiring>& out) {
        if (e.arity() != 2) return;
        const Expr& u = e.kid(0);
        const Expr& v = e.kid(1);
        Expr partner = e.kind() == NodeKind::Add ? canonicalize(Expr::mul({u, v}))
                                                 : canonicalize(Expr::add({u, v}));
        std::vector<Expr> members{e, partner};
        std::sort(members.begin(), members.end());
        std::vector<std::string> renders;
        for (const auto& m : members) renders.push_back(render_compact(m));
        if (is_trans(u) && is_trans(v)) {
            RuleFiring f;
            f.rule_id = "R-SUMPROD";
            f.disj = DisjunctiveConclusion{renders, 1, DisjClass::Trans};
            f.disj_members = members;
            f.premises.push_back(cert_of(u));
            f.premises.push_back(cert_of(v));
            out.push_back(std::move(f));
            return;  // subsumes the weaker irrationality fact
        }
        for (int which = 0; which < 2; ++which) {
            const Expr& cand = e.kid(static_cast<std::size_t>(which));
            bool qualifies = is_trans(cand);
            if (!qualifies) {
                auto a = alg_value(cand);
                qualifies = a && a->degree() > 2;
            }
            if (!qualifies) continue;
            RuleFiring f;
            f.rule_id = "R-QUAD";
            f.disj = DisjunctiveConclusion{renders, 1, DisjClass::Irrational};
            f.disj_members = members;
            f.evidence["non_quadratic_member"] = render_compact(cand);
            f.premises.push_back(cert_of(cand));
            out.push_back(std::move(f));
            return;
        }
    }

    void rule_lw_trig(const Expr& e, std::vector<RuleFiring>& out) {
        bool applicable = false;
        if (e.kind() == NodeKind::Trig)
            applicable = e.trig_kind() == TrigKind::Sin || e.trig_kind() == TrigKind::Cos;
        if (e.kind() == NodeKind::Hyp)
            applicable = e.hyp_kind() == HypKind::Sinh || e.hyp_kind() == HypKind::Cosh;
        if (!applicable) return;
        auto u = alg_value(e.kid(0));
        if (!u || u->is_zero()) return;
        RuleFiring f;
        f.rule_id = "R-LW-TRIG";
        f.verdict = Verdict::transcendental();
        f.evidence["arg_minpoly"] = minpoly_json(*u);
        f.premises.push_back(cert_of(e.kid(0)));
        out.push_back(std::move(f));
    }

    // trig(alpha * pi).
    void rule_trigpi(const Expr& e, std::vector<RuleFiring>& out) {
        auto alpha = coeff_times_pi(e.kid(0));
        if (!alpha) return;
        TrigKind kind = e.trig_kind();
        if (auto r = alpha->as_rational()) {
            // Definedness at the poles.
            Rational two_r = *r * 2;
            bool undefined = false;
            if (kind == TrigKind::Tan || kind == TrigKind::Sec)
                undefined = is_integer(two_r) && !is_integer(*r);
            if (kind == TrigKind::Cot || kind == TrigKind::Csc) undefined = is_integer(*r);
            if (undefined) return;
            RuleFiring f;
            f.rule_id = "R-TRIGPI";
            f.verdict = Verdict::of(nature::kAlgebraic);
            f.evidence["alpha"] = r->get_str();
            f.evidence["branch"] = "rational_multiple";
            f.premises.push_back(cert_of(e.kid(0)));
            out.push_back(std::move(f));
            return;
        }
        if (!alpha->is_real()) return;
        RuleFiring f;
        f.rule_id = "R-TRIGPI";
        f.alt_anchor = true;
        f.verdict = Verdict::transcendental();
        f.evidence["alpha_minpoly"] = minpoly_json(*alpha);
        f.evidence["branch"] = "real_algebraic_irrational_multiple";
        f.premises.push_back(cert_of(e.kid(0)));
        out.push_back(std::move(f));
    }

    // cos/sin/tan(beta * ln(alpha)).
    void rule_trig_ln(const Expr& e, std::vector<RuleFiring>& out) {
        TrigKind kind = e.trig_kind();
        if (kind != TrigKind::Sin && kind != TrigKind::Cos && kind != TrigKind::Tan) return;
        auto ct = decompose_coeff_inner(e.kid(0), NodeKind::Ln);
        if (!ct) return;
        auto a = alg_value(ct->inner_arg);
        if (!a || a->is_zero() || a->is_one()) return;
        if (ct->beta.is_zero()) return;
        AlgebraicNumber i = imaginary_unit();
        AlgebraicNumber ib = field_op(FieldOpKind::Mul, i, &ct->beta, kb_.config_.caps);
        if (ib.as_rational()) return;
        RuleFiring f;
        f.rule_id = kind == TrigKind::Tan ? "R-TAN-LN" : "R-COS-LN";
        f.verdict = Verdict::transcendental();
        f.evidence["alpha_minpoly"] = minpoly_json(*a);
        f.evidence["beta_minpoly"] = minpoly_json(ct->beta);
        f.evidence["i_beta_minpoly"] = minpoly_json(ib);
        f.premises.push_back(cert_of(e.kid(0)));
        out.push_back(std::move(f));
    }

    // cosh/sinh/tanh(r * ln(t)) with rational r != 0 and transcendental t.
    void rule_hyp_ln(const Expr& e, std::vector<RuleFiring>& out) {
        const Expr& arg = e.kid(0);
        Rational r(1);
        const Expr* ln_node = nullptr;
        if (arg.kind() == NodeKind::Ln) {
            ln_node = &arg;
        } else if (arg.kind() == NodeKind::Mul && arg.arity() == 2 && arg.kid(0).is_rational() &&
                   arg.kid(1).kind() == NodeKind::Ln) {
            r = arg.kid(0).rat();
            ln_node = &arg.kid(1);
        }
        if (!ln_node || r == 0) return;
        const Expr& t = ln_node->kid(0);
        if (!is_trans(t)) return;
        RuleFiring f;
        f.rule_id = e.hyp_kind() == HypKind::Tanh ? "R-TANH" : "R-COSH";
        f.verdict = Verdict::transcendental();
        f.evidence["r"] = r.get_str();
        f.evidence["t"] = render_compact(t);
        if (e.hyp_kind() != HypKind::Tanh)
            f.evidence["independence_note"] = "1, cosh(r ln t), sinh(r ln t) are linearly independent over A";
        f.premises.push_back(cert_of(t));
        out.push_back(std::move(f));
    }

    std::optional<CoeffInner> decompose_coeff_inner(const Expr& arg, NodeKind inner) {
        return coeff_times(arg, inner);
    }

    // ---- Theorem 3 across a classified set ----------------------------------

    void apply_two_of_three(const std::vector<Expr>& es) {
        Expr e_const = Expr::constant(ConstKind::E);
        Expr inv_e = canonicalize(Expr::exp(Expr::integer(-1)));
        for (const auto& m : es) {
            if (m.kind() != NodeKind::Ln) continue;
            const Expr& t = m.kid(0);
            if (!is_trans(t)) continue;
            if (t == inv_e) continue;  // the t != 1/e guard, structural form
            Expr sum = canonicalize(Expr::add({t, e_const}));
            Expr prod = canonicalize(Expr::mul({t, e_const}));
            bool have_sum = false, have_prod = false;
            for (const auto& x : es) {
                if (x == sum) have_sum = true;
                if (x == prod) have_prod = true;
            }
            if (!have_sum || !have_prod) continue;
            std::vector<Expr> members{sum, prod, m};
            std::sort(members.begin(), members.end());
            std::vector<std::string> renders;
            for (const auto& x : members) renders.push_back(render_compact(x));
            DisjunctiveFact df;
            df.members = members;
            df.at_least = 2;
            df.cls = DisjClass::Trans;
            Certificate c;
            c.rule_id = "R-1OF3";
            c.disjunctive = DisjunctiveConclusion{renders, 2, DisjClass::Trans};
            c.evidence["t"] = render_compact(t);
            c.evidence["t_not_inv_e"] = true;
            c.premises.push_back(cert_of(t));
            df.cert = make_cert(std::move(c));
            add_disjunctive(std::move(df));
        }
    }

    // ---- disjunctive propagation to fixpoint ---------------------------------

    void propagate() {
        int max_iters = static_cast<int>(kb_.facts_.size() + kb_.disjunctive_.size()) + 2;
        int iter = 0;
        bool changed = true;
        while (changed) {
            changed = false;
            if (++iter > max_iters) throw Error("propagation failed to reach a fixpoint");
            for (const auto& d : kb_.disjunctive_) {
                unsigned cls_mask = d.cls == DisjClass::Trans ? nature::kTrans : nature::kIrrational;
                int excluded = 0;
                std::vector<const Fact*> open;
                std::vector<CertPtr> excluded_certs;
                for (const auto& m : d.members) {
                    const Fact* f = kb_.find(m);
                    if (f && (f->verdict.natures & cls_mask) == 0) {
                        ++excluded;
                        excluded_certs.push_back(f->cert);
                    } else if (f) {
                        open.push_back(f);
                    }
                }
                int unclassified = static_cast<int>(d.members.size()) - excluded -
                                   static_cast<int>(open.size());
                int remaining = static_cast<int>(d.members.size()) - excluded;
                if (remaining < d.at_least)
                    throw ContradictionError("disjunctive fact has too few live members");
                if (remaining != d.at_least || unclassified > 0) continue;
                for (const Fact* f : open) {
                    Verdict refined = intersect(f->verdict, Verdict::of(cls_mask));
                    if (refined == f->verdict) continue;
                    Certificate c;
                    c.rule_id = "DISJ-PROP";
                    c.subject = render_compact(f->subject);
                    c.verdict = refined;
                    c.premises.push_back(d.cert);
                    for (const auto& ec : excluded_certs) c.premises.push_back(ec);
                    Fact& mut = kb_.facts_.at(f->subject);
                    if (!mut.verdict.refines_to(refined))
                        throw ContradictionError("propagation attempted a non-monotone update");
                    mut.verdict = refined;
                    mut.cert = make_cert(std::move(c));
                    changed = true;
                }
            }
        }
        kb_.last_iterations_ = iter;
    }

    KnowledgeBase& kb_;
    std::map<Expr, std::vector<RuleFiring>> firings_;
};

}  // namespace detail

// ---- public operations ------------------------------------------------------

inline const Fact& classify(const Expr& e, KnowledgeBase& kb) {
    detail::Classifier c(kb);
    return c.classify(e);
}

struct SetClassification {
    std::vector<Fact> facts;
    std::vector<DisjunctiveFact> disjunctive;
};

inline SetClassification classify_set(const std::vector<Expr>& es, KnowledgeBase& kb) {
    detail::Classifier c(kb);
    auto r = c.classify_set(es);
    return {std::move(r.facts), std::move(r.disjunctive)};
}

// Test-only: runs on a copy with injected facts; the primary KB is untouched.
inline SetClassification classify_set_hypothetical(const std::vector<Expr>& es,
                                                   const KnowledgeBase& kb,
                                                   const std::vector<std::pair<Expr, Verdict>>& hyps) {
    KnowledgeBase copy = kb;
    detail::Classifier c(copy);
    for (const auto& e : es) c.classify(e);
    for (const auto& [e, v] : hyps) c.inject_hypothesis(e, v);
    auto r = c.classify_set(es);
    return {std::move(r.facts), std::move(r.disjunctive)};
}

inline CertPtr explain(const Expr& e, const KnowledgeBase& kb) {
    const Fact* f = kb.find(e);
    if (!f) throw NotFoundError("expression was never classified: " + render_compact(e));
    if (f->verdict.is_exactly(nature::kAll) && !f->verdict.nonzero) {
        // Trivial verdict: surface a related disjunctive fact when present.
        for (const auto& d : kb.disjunctive()) {
            for (const auto& m : d.members)
                if (m == e) return d.cert;
        }
    }
    return f->cert;
}

}  // namespace arithmos
