#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fabercone/cone.hpp"
#include "fabercone/divisor.hpp"

namespace fabercone {

// Exact covector over ClassBasis::of(sig) in the b-convention coordinates
// (a, b_irr, c_1.., b_{i,S}..).  Pairing with a divisor is the dot product
// with its bvec().
struct LinearFunctional {
    ModuliSig sig;
    QVec covector;
    std::optional<StratumCurve> provenance;
    std::string label;

    Rat eval(const DivisorClass& d) const;
    std::string str() const;
};

// The intersection functional of a one-dimensional stratum, in inequality
// form (normalized by a positive scalar where convenient for cone use).
LinearFunctional stratum_functional(const StratumCurve& x);

// Canonical strata with numerically identical ones merged; deterministic
// (type, legs) order, first representative kept.
std::vector<StratumCurve> enumerate_strata(const ModuliSig& sig);

struct MergedStratum {
    StratumCurve representative;
    std::vector<StratumCurve> merged;  // parameter tuples folded into it
};
std::vector<MergedStratum> enumerate_strata_merged(const ModuliSig& sig);

struct FNefReport {
    ModuliSig sig;
    bool verdict = false;
    std::vector<std::pair<StratumCurve, Rat>> violated;
    std::vector<StratumCurve> tight;
    int tight_rank = 0;
    int ambient_dim = 0;
};

// Evaluates every stratum functional against the divisor; the verdict is
// F-nefness, tight strata pair to exactly zero.
FNefReport is_f_nef(const DivisorClass& d, int threads = 1);

struct Criterion61Report {
    bool nef = false;    // the certificate fires
    bool f_nef = false;
    std::vector<int> offending_levels;  // i with 0 < b_i < b_irr
    bool char_zero_hypothesis = true;
};

// Sufficient nefness test for unmarked spaces: F-nef plus each b_i either
// zero or at least b_irr.
Criterion61Report nef_criterion_61(const DivisorClass& d);

struct Criterion35Report {
    bool effective = false;  // all three inequality families hold
    bool strict = false;     // all hold strictly (the bigness clause)
    bool ineq_a = false;     // a >= 0
    bool ineq_birr = false;  // g a >= (8g+4) b_irr
    bool ineq_bi = false;    // 2g a >= (8g+4) b_i for every level
    bool char_zero_hypothesis = true;
};

Criterion35Report effective_criterion_35(const DivisorClass& d);

struct FlagDivisorReport {
    bool conditions_met = false;    // a > 12 b_irr - (g+n-1) and 2 b_irr > ((n+g)/2)^2
    bool zero_on_t6 = false;        // vanishes on every type-6 stratum
    bool positive_on_rest = false;  // strictly positive on every other stratum
    std::vector<std::pair<StratumCurve, Rat>> values;
};

FlagDivisorReport verify_flag_divisor(int g, int n, const Rat& a, const Rat& birr);

// The F-nef cone as an inequality cone over the b-convention coordinates
// (a, b_irr, c_1.., b_{i,S}..): one primitive row per merged stratum
// functional.
ConeH faber_cone_h(const ModuliSig& sig);

}  // namespace fabercone
