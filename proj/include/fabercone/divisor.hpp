#pragma once

#include <map>
#include <vector>

#include "fabercone/combinat.hpp"
#include "fabercone/rational.hpp"

namespace fabercone {

// A formal divisor class, stored with the natural sign: the map holds the
// coefficient of each class itself, so "11 lambda - delta" carries -1 on
// delta_irr and on each delta_i.  Only nonzero coefficients are kept and
// keys are always canonical.
struct DivisorClass {
    ModuliSig sig;
    std::map<ClassIndex, Rat> coeffs;

    DivisorClass() = default;
    explicit DivisorClass(ModuliSig s) : sig(s) { sig.validate(); }

    Rat coeff(const ClassIndex& idx) const;
    void set(const ClassIndex& idx, Rat value);
    void add(const ClassIndex& idx, const Rat& value);

    // Coordinates over ClassBasis::of(sig) in the b-convention:
    // (a, b_irr, c_1..c_n, b_{i,S}...) where b-values negate the stored
    // boundary and delta_irr coefficients.
    QVec bvec() const;
    static DivisorClass from_bvec(const ModuliSig& sig, const QVec& v);

    bool operator==(const DivisorClass& o) const { return sig == o.sig && coeffs == o.coeffs; }

    std::string str() const;
};

// b_{i,I} of a divisor, with the conventions: a singleton (0,{k}) reads the
// psi coefficient; otherwise the pair is canonicalized and read off the
// boundary coefficient with flipped sign; coefficients of divisors that do
// not exist read as zero.
Rat lookup_b(const DivisorClass& d, int i, std::uint32_t marks);

// (8g+4) lambda - g delta_irr - 2g (delta_1 + ... + delta_[g/2]) on an
// unmarked space; g >= 2.
DivisorClass ch_gamma(int g);

// a lambda + sum (g+n-1) psi_i - birr delta_irr
//   - sum (g+n-s) s delta_{i,S}  with s = i+|S|, over existing boundaries.
DivisorClass flag_divisor(int g, int n, const Rat& a, const Rat& birr);

// Forget the marks: a lambda - b_irr delta_irr - sum b_i delta_i with
// b_i = max over S of b_{i,S}; g >= 2.
DivisorClass coarsen_to_unmarked(const DivisorClass& d);

// Permutations of {1..n} as 1-based image vectors.
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);
Permutation compose(const Permutation& f, const Permutation& g);  // f after g

inline constexpr size_t kDefaultGroupLimit = 1000000;

// Closure of the generated subgroup, sorted; throws GroupTooLarge past the
// limit.
std::vector<Permutation> group_closure(int n, const std::vector<Permutation>& generators,
                                       size_t limit = kDefaultGroupLimit);

DivisorClass apply_permutation(const DivisorClass& d, const Permutation& perm);

// Group average over the generated subgroup.
DivisorClass symmetrize(const DivisorClass& d, const std::vector<Permutation>& generators,
                        size_t limit = kDefaultGroupLimit);

// Relation rows for genus-1 spaces with n <= 6 marks: classes that are
// numerically trivial, shipped as data and validated on first use (each row
// must vanish against every stratum functional and the rows must be
// linearly independent).  Throws if validation fails.
const std::vector<DivisorClass>& g1_relation_table(int n);

// Rewrites a genus-1 divisor so that the lambda and psi coefficients all
// vanish, using the validated relation table.
DivisorClass normalize_g1(const DivisorClass& d);

}  // namespace fabercone
