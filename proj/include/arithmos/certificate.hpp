// certificate.hpp - replayable derivation trees. Certificates reference
// subexpressions by canonical rendering (self-contained after
// serialization) and embed the exact guard evidence each rule consumed.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "arithmos/catalog.hpp"
#include "arithmos/expr.hpp"
#include "arithmos/render.hpp"
#include "arithmos/verdict.hpp"

namespace arithmos {

using Json = nlohmann::ordered_json;

enum class DisjClass { Trans, Irrational };

inline const char* disj_class_name(DisjClass c) {
    return c == DisjClass::Trans ? "TRANS" : "IRRATIONAL";
}

struct DisjunctiveConclusion {
    std::vector<std::string> members;  // canonical renderings
    int at_least = 1;
    DisjClass cls = DisjClass::Trans;

    bool operator==(const DisjunctiveConclusion& o) const {
        return members == o.members && at_least == o.at_least && cls == o.cls;
    }
};

struct Certificate;
using CertPtr = std::shared_ptr<const Certificate>;

struct Certificate {
    std::string rule_id;
    bool alt_anchor = false;  // some rules cite a branch-specific quote
    std::string subject;      // canonical rendering of the subject expression
    std::optional<Verdict> verdict;                 // verdict conclusions
    std::optional<Rational> exact_value;            // recorded for exact rational verdicts
    std::optional<DisjunctiveConclusion> disjunctive;  // disjunctive conclusions
    Json evidence = Json::object();
    std::vector<CertPtr> premises;

    std::string anchor() const { return anchor_of(rule_id, alt_anchor); }
};

inline CertPtr make_cert(Certificate c) { return std::make_shared<const Certificate>(std::move(c)); }

// ---- JSON (stable field names, deterministic order) ----------------------

inline Json certificate_to_json(const Certificate& c) {
    Json j = Json::object();
    if (c.disjunctive) {
        j["members"] = c.disjunctive->members;
        j["at_least"] = c.disjunctive->at_least;
        j["class"] = disj_class_name(c.disjunctive->cls);
    } else {
        j["subject"] = c.subject;
        Json v = Json::object();
        v["natures"] = nature_names(c.verdict ? c.verdict->natures : nature::kAll);
        v["nonzero"] = (c.verdict && c.verdict->nonzero) ? "YES" : "UNKNOWN";
        j["verdict"] = v;
        if (c.exact_value) j["value"] = c.exact_value->get_str();
    }
    j["rule"] = c.rule_id;
    j["anchor"] = c.anchor();
    j["evidence"] = c.evidence;
    Json prem = Json::array();
    for (const auto& p : c.premises) prem.push_back(certificate_to_json(*p));
    j["premises"] = std::move(prem);
    return j;
}

inline Certificate certificate_from_json(const Json& j) {
    Certificate c;
    c.rule_id = j.at("rule").get<std::string>();
    const RuleInfo* info = find_rule(c.rule_id);
    if (!info) throw NotFoundError("certificate rule not in catalog: " + c.rule_id);
    std::string anch = j.at("anchor").get<std::string>();
    if (anch == anchor_of(*info, true) && info->alt_quote) c.alt_anchor = true;
    else if (anch != anchor_of(*info, false)) throw Error("certificate anchor does not match catalog");
    if (j.contains("members")) {
        DisjunctiveConclusion d;
        d.members = j.at("members").get<std::vector<std::string>>();
        d.at_least = j.at("at_least").get<int>();
        std::string cls = j.at("class").get<std::string>();
        d.cls = cls == "TRANS" ? DisjClass::Trans : DisjClass::Irrational;
        c.disjunctive = std::move(d);
    } else {
        c.subject = j.at("subject").get<std::string>();
        Verdict v;
        v.natures = natures_from_names(j.at("verdict").at("natures").get<std::vector<std::string>>());
        v.nonzero = j.at("verdict").at("nonzero").get<std::string>() == "YES";
        v.normalize();
        c.verdict = v;
        if (j.contains("value")) {
            Rational q(j.at("value").get<std::string>());
            q.canonicalize();
            c.exact_value = q;
        }
    }
    c.evidence = j.at("evidence");
    for (const auto& pj : j.at("premises")) c.premises.push_back(make_cert(certificate_from_json(pj)));
    return c;
}

// ---- TEXT -----------------------------------------------------------------

namespace detail {

inline std::string cert_phrase(const Certificate& c) {
    if (c.disjunctive) {
        std::string s = "at least " + std::to_string(c.disjunctive->at_least) + " of {";
        for (std::size_t i = 0; i < c.disjunctive->members.size(); ++i) {
            if (i) s += ", ";
            s += c.disjunctive->members[i];
        }
        s += c.disjunctive->cls == DisjClass::Trans ? "} transcendental" : "} irrational";
        return s;
    }
    std::string s = verdict_phrase(c.verdict.value_or(Verdict::unknown()));
    if (c.exact_value) s += " (= " + c.exact_value->get_str() + ")";
    return s;
}

inline void render_text_rec(const Certificate& c, int depth, std::string& out) {
    for (const auto& p : c.premises) render_text_rec(*p, depth + 1, out);
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    const RuleInfo* info = find_rule(c.rule_id);
    std::string name = info ? info->name : "?";
    if (!c.subject.empty()) out += c.subject + " — ";
    out += c.rule_id + " (" + name + "): " + cert_phrase(c);
    out += "\n";
}

}  // namespace detail

enum class CertFormat { Text, JsonFormat };

inline std::string render_certificate(const Certificate& c, CertFormat fmt) {
    if (fmt == CertFormat::JsonFormat) return certificate_to_json(c).dump();
    std::string out;
    detail::render_text_rec(c, 0, out);
    return out;
}

// Structural equality, used by the round-trip property.
inline bool certificates_equal(const Certificate& a, const Certificate& b) {
    if (a.rule_id != b.rule_id || a.subject != b.subject || a.alt_anchor != b.alt_anchor) return false;
    if (a.verdict.has_value() != b.verdict.has_value()) return false;
    if (a.verdict && !(*a.verdict == *b.verdict)) return false;
    if (a.exact_value.has_value() != b.exact_value.has_value()) return false;
    if (a.exact_value && *a.exact_value != *b.exact_value) return false;
    if (a.disjunctive.has_value() != b.disjunctive.has_value()) return false;
    if (a.disjunctive && !(*a.disjunctive == *b.disjunctive)) return false;
    if (a.evidence != b.evidence) return false;
    if (a.premises.size() != b.premises.size()) return false;
    for (std::size_t i = 0; i < a.premises.size(); ++i)
        if (!certificates_equal(*a.premises[i], *b.premises[i])) return false;
    return true;
}

}  // namespace arithmos
