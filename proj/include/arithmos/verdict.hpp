// verdict.hpp - the three-class verdict lattice: nonempty subsets of
// {RAT, ALGIRR, TRANS} plus a nonzero flag. Refinement only shrinks the
// nature set and only promotes nonzero UNKNOWN -> YES.
#pragma once

#include <string>
#include <vector>

#include "arithmos/errors.hpp"

namespace arithmos {

namespace nature {
constexpr unsigned kRat = 1;
constexpr unsigned kAlgIrr = 2;
constexpr unsigned kTrans = 4;
constexpr unsigned kAll = kRat | kAlgIrr | kTrans;
constexpr unsigned kAlgebraic = kRat | kAlgIrr;
constexpr unsigned kIrrational = kAlgIrr | kTrans;
constexpr unsigned kRatOrTrans = kRat | kTrans;
}  // namespace nature

struct Verdict {
    unsigned natures = nature::kAll;
    bool nonzero = false;

    static Verdict unknown() { return {}; }
    static Verdict of(unsigned mask, bool nz = false) {
        Verdict v{mask, nz};
        v.normalize();
        return v;
    }
    static Verdict transcendental() { return of(nature::kTrans); }

    bool is_exactly(unsigned mask) const { return natures == mask; }
    bool may_be(unsigned mask) const { return (natures & mask) != 0; }
    bool excludes(unsigned mask) const { return (natures & mask) == 0; }

    void normalize() {
        if (natures == 0) throw ContradictionError("verdict natures became empty");
        if (natures == nature::kTrans) nonzero = true;  // transcendental numbers are nonzero
    }

    // True when `next` is a sound refinement of *this.
    bool refines_to(const Verdict& next) const {
        if ((next.natures & ~natures) != 0) return false;
        if (nonzero && !next.nonzero) return false;
        return true;
    }

    friend Verdict intersect(const Verdict& a, const Verdict& b) {
        Verdict v{a.natures & b.natures, a.nonzero || b.nonzero};
        v.normalize();
        return v;
    }

    bool operator==(const Verdict& o) const { return natures == o.natures && nonzero == o.nonzero; }
};

inline std::vector<std::string> nature_names(unsigned mask) {
    std::vector<std::string> out;
    if (mask & nature::kRat) out.emplace_back("RAT");
    if (mask & nature::kAlgIrr) out.emplace_back("ALGIRR");
    if (mask & nature::kTrans) out.emplace_back("TRANS");
    return out;
}

inline unsigned natures_from_names(const std::vector<std::string>& names) {
    unsigned mask = 0;
    for (const auto& n : names) {
        if (n == "RAT") mask |= nature::kRat;
        else if (n == "ALGIRR") mask |= nature::kAlgIrr;
        else if (n == "TRANS") mask |= nature::kTrans;
        else throw Error("unknown nature name: " + n);
    }
    return mask;
}

// Human phrase for CLI and TEXT certificates.
inline std::string verdict_phrase(const Verdict& v) {
    std::string base;
    switch (v.natures) {
        case nature::kRat: base = "rational"; break;
        case nature::kAlgIrr: base = "algebraic irrational"; break;
        case nature::kTrans: base = "transcendental"; break;
        case nature::kAlgebraic: base = "algebraic (rational or algebraic-irrational)"; break;
        case nature::kRatOrTrans: base = "rational or transcendental"; break;
        case nature::kIrrational: base = "irrational (algebraic-irrational or transcendental)"; break;
        default: base = "unknown (rational, algebraic-irrational, or transcendental)"; break;
    }
    if (v.nonzero && v.natures != nature::kTrans) base += ", nonzero";
    return base;
}

}  // namespace arithmos
