#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fabercone/errors.hpp"

namespace fabercone {

// Mark subsets live in bitmasks: bit k-1 stands for mark k.
inline int popcount(std::uint32_t mask) { return std::popcount(mask); }

std::string mark_set_str(std::uint32_t mask);
std::vector<int> mark_set_elements(std::uint32_t mask);
std::uint32_t mark_set_from_elements(const std::vector<int>& marks, int n);

struct ModuliSig {
    int g = 0;
    int n = 0;

    friend auto operator<=>(const ModuliSig&, const ModuliSig&) = default;

    bool stable() const { return 2 * g - 2 + n > 0; }
    bool has_one_strata() const { return 3 * g - 3 + n >= 1; }
    std::uint32_t full_mask() const { return n == 0 ? 0u : (std::uint32_t(1) << n) - 1; }

    void validate() const;             // stability only
    void validate_for_strata() const;  // stability and 3g-3+n >= 1
};

enum class ClassKind : std::uint8_t { Lambda = 0, DeltaIrr = 1, Psi = 2, Boundary = 3 };

// Canonical index of a divisor-class coordinate on moduli of stable
// pointed curves: lambda, delta_irr, psi_k, or a boundary class delta_{i,S}
// stored with i <= g-i (set bitmask breaking the tie at i = g/2).
struct ClassIndex {
    ClassKind kind = ClassKind::Lambda;
    int i = 0;                 // Psi: mark index; Boundary: genus part
    std::uint32_t marks = 0;   // Boundary only

    friend auto operator<=>(const ClassIndex&, const ClassIndex&) = default;

    static ClassIndex lambda() { return {ClassKind::Lambda, 0, 0}; }
    static ClassIndex delta_irr() { return {ClassKind::DeltaIrr, 0, 0}; }
    static ClassIndex psi(int mark) { return {ClassKind::Psi, mark, 0}; }
    static ClassIndex boundary(int i, std::uint32_t marks) { return {ClassKind::Boundary, i, marks}; }

    std::string str() const;
};

bool class_exists(const ModuliSig& sig, const ClassIndex& idx);

// Existence of the boundary divisor delta_{i,S}; symmetric in
// (i,S) <-> (g-i,S^c).
bool boundary_exists(const ModuliSig& sig, int i, std::uint32_t marks);

// Canonical representative of the unordered pair {(i,S),(g-i,S^c)}.
std::pair<int, std::uint32_t> canonical_boundary_pair(const ModuliSig& sig, int i, std::uint32_t marks);

// Canonical boundary index; throws NonexistentClass when the divisor does
// not exist for this signature.
ClassIndex canonical_index(const ModuliSig& sig, int i, std::uint32_t marks);

// The ordered coordinate system for divisor classes on a given space:
// lambda, delta_irr (g >= 1), psi_1..psi_n, then canonical boundaries by
// (genus part, set bitmask).
struct ClassBasis {
    ModuliSig sig;
    std::vector<ClassIndex> indices;
    std::map<ClassIndex, int> position;

    static const ClassBasis& of(const ModuliSig& sig);  // cached per signature

    int dim() const { return static_cast<int>(indices.size()); }
    int pos(const ClassIndex& idx) const;
    std::string coord_name(int column) const;
};

// One leg of a stratum: genus plus carried marks.
struct Leg {
    int genus = 0;
    std::uint32_t marks = 0;

    friend auto operator<=>(const Leg&, const Leg&) = default;
};

// A one-dimensional boundary stratum, one of the six numerical types.
// Types 1 and 2 carry no legs, 3 and 4 one leg, 5 two, 6 four; legs are
// kept sorted by (genus, bitmask).
struct StratumCurve {
    ModuliSig sig;
    int type = 1;
    std::vector<Leg> legs;

    friend bool operator==(const StratumCurve&, const StratumCurve&) = default;

    std::string str() const;
};

bool stratum_less(const StratumCurve& a, const StratumCurve& b);

// All parameter-canonical strata admitted for the signature, ordered by
// (type, legs), before merging numerically equal ones.
std::vector<StratumCurve> enumerate_strata_raw(const ModuliSig& sig);

// Image of a stratum under a relabeling of the marks.
StratumCurve relabel(const StratumCurve& x, const std::vector<int>& perm);

}  // namespace fabercone
