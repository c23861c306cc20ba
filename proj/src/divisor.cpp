#include "fabercone/divisor.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fabercone {

Rat DivisorClass::coeff(const ClassIndex& idx) const {
    auto it = coeffs.find(idx);
    return it == coeffs.end() ? Rat(0) : it->second;
}

void DivisorClass::set(const ClassIndex& idx, Rat value) {
    ClassIndex key = idx;
    if (idx.kind == ClassKind::Boundary) {
        key = canonical_index(sig, idx.i, idx.marks);
    } else if (!class_exists(sig, idx)) {
        throw NonexistentClass("class does not exist for signature: " + idx.str());
    }
    if (value == 0)
        coeffs.erase(key);
    else
        coeffs[key] = std::move(value);
}

void DivisorClass::add(const ClassIndex& idx, const Rat& value) {
    if (value == 0) return;
    ClassIndex key = idx;
    if (idx.kind == ClassKind::Boundary) {
        key = canonical_index(sig, idx.i, idx.marks);
    } else if (!class_exists(sig, idx)) {
        throw NonexistentClass("class does not exist for signature: " + idx.str());
    }
    auto it = coeffs.find(key);
    if (it == coeffs.end()) {
        coeffs.emplace(key, value);
    } else {
        it->second += value;
        if (it->second == 0) coeffs.erase(it);
    }
}

QVec DivisorClass::bvec() const {
    const ClassBasis& basis = ClassBasis::of(sig);
    QVec v(basis.dim(), Rat(0));
    for (const auto& [idx, c] : coeffs) {
        const int p = basis.pos(idx);
        const bool flip = idx.kind == ClassKind::DeltaIrr || idx.kind == ClassKind::Boundary;
        v[p] = flip ? Rat(-c) : c;
    }
    return v;
}

DivisorClass DivisorClass::from_bvec(const ModuliSig& sig, const QVec& v) {
    const ClassBasis& basis = ClassBasis::of(sig);
    if (static_cast<int>(v.size()) != basis.dim()) throw DimensionMismatch("bvec size mismatch");
    DivisorClass d(sig);
    for (int p = 0; p < basis.dim(); ++p) {
        if (v[p] == 0) continue;
        const ClassIndex& idx = basis.indices[p];
        const bool flip = idx.kind == ClassKind::DeltaIrr || idx.kind == ClassKind::Boundary;
        d.set(idx, flip ? Rat(-v[p]) : v[p]);
    }
    return d;
}

std::string DivisorClass::str() const {
    if (coeffs.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [idx, c] : coeffs) {
        if (!first) os << " + ";
        os << rat_str(c) << "*" << idx.str();
        first = false;
    }
    return os.str();
}

Rat lookup_b(const DivisorClass& d, int i, std::uint32_t marks) {
    const ModuliSig& sig = d.sig;
    if (i < 0 || i > sig.g || (marks & ~sig.full_mask()) != 0)
        throw NonexistentClass("lookup_b argument out of range");
    if (i == 0 && popcount(marks) == 1) {
        const int mark = mark_set_elements(marks)[0];
        return d.coeff(ClassIndex::psi(mark));
    }
    if (!boundary_exists(sig, i, marks)) return Rat(0);
    const auto [ci, cmarks] = canonical_boundary_pair(sig, i, marks);
    return -d.coeff(ClassIndex::boundary(ci, cmarks));
}

DivisorClass ch_gamma(int g) {
    if (g < 2) throw InvalidSignature("ch_gamma needs g >= 2");
    DivisorClass d(ModuliSig{g, 0});
    d.set(ClassIndex::lambda(), Rat(8 * g + 4));
    d.set(ClassIndex::delta_irr(), Rat(-g));
    for (int i = 1; 2 * i <= g; ++i) d.set(ClassIndex::boundary(i, 0), Rat(-2 * g));
    return d;
}

DivisorClass flag_divisor(int g, int n, const Rat& a, const Rat& birr) {
    const ModuliSig sig{g, n};
    sig.validate();
    DivisorClass d(sig);
    d.set(ClassIndex::lambda(), a);
    if (g >= 1) d.set(ClassIndex::delta_irr(), -birr);
    for (int k = 1; k <= n; ++k) d.set(ClassIndex::psi(k), Rat(g + n - 1));
    const ClassBasis& basis = ClassBasis::of(sig);
    for (const ClassIndex& idx : basis.indices) {
        if (idx.kind != ClassKind::Boundary) continue;
        const int s = idx.i + popcount(idx.marks);
        d.set(idx, Rat(-(g + n - s) * s));
    }
    return d;
}

DivisorClass coarsen_to_unmarked(const DivisorClass& d) {
    if (d.sig.g < 2) throw InvalidSignature("coarsening needs g >= 2");
    DivisorClass out(ModuliSig{d.sig.g, 0});
    out.set(ClassIndex::lambda(), d.coeff(ClassIndex::lambda()));
    out.set(ClassIndex::delta_irr(), d.coeff(ClassIndex::delta_irr()));
    for (int i = 1; 2 * i <= d.sig.g; ++i) {
        Rat best = lookup_b(d, i, 0);
        for (std::uint32_t S = 1; S <= d.sig.full_mask(); ++S) {
            const Rat v = lookup_b(d, i, S);
            if (v > best) best = v;
        }
        out.set(ClassIndex::boundary(i, 0), -best);
    }
    return out;
}

Permutation identity_permutation(int n) {
    Permutation p(n);
    for (int k = 0; k < n; ++k) p[k] = k + 1;
    return p;
}

Permutation compose(const Permutation& f, const Permutation& g) {
    Permutation h(g.size());
    for (size_t k = 0; k < g.size(); ++k) h[k] = f[g[k] - 1];
    return h;
}

std::vector<Permutation> group_closure(int n, const std::vector<Permutation>& generators, size_t limit) {
    for (const auto& p : generators) {
        if (static_cast<int>(p.size()) != n) throw InvalidPartition("permutation size mismatch");
        std::vector<bool> seen(n, false);
        for (int v : p) {
            if (v < 1 || v > n || seen[v - 1]) throw InvalidPartition("not a permutation");
            seen[v - 1] = true;
        }
    }
    std::set<Permutation> closure{identity_permutation(n)};
    std::vector<Permutation> frontier{identity_permutation(n)};
    while (!frontier.empty()) {
        std::vector<Permutation> next;
        for (const auto& p : frontier)
            for (const auto& gen : generators) {
                Permutation q = compose(gen, p);
                if (closure.insert(q).second) {
                    if (closure.size() > limit) throw GroupTooLarge("group closure exceeds limit");
                    next.push_back(std::move(q));
                }
            }
        frontier = std::move(next);
    }
    return {closure.begin(), closure.end()};
}

DivisorClass apply_permutation(const DivisorClass& d, const Permutation& perm) {
    if (static_cast<int>(perm.size()) != d.sig.n) throw InvalidPartition("permutation size mismatch");
    DivisorClass out(d.sig);
    for (const auto& [idx, c] : d.coeffs) {
        switch (idx.kind) {
            case ClassKind::Lambda:
            case ClassKind::DeltaIrr:
                out.add(idx, c);
                break;
            case ClassKind::Psi:
                out.add(ClassIndex::psi(perm[idx.i - 1]), c);
                break;
            case ClassKind::Boundary: {
                std::uint32_t m = 0;
                for (int mark : mark_set_elements(idx.marks)) m |= std::uint32_t(1) << (perm[mark - 1] - 1);
                out.add(ClassIndex::boundary(idx.i, m), c);
                break;
            }
        }
    }
    return out;
}

DivisorClass symmetrize(const DivisorClass& d, const std::vector<Permutation>& generators, size_t limit) {
    const auto group = group_closure(d.sig.n, generators, limit);
    DivisorClass acc(d.sig);
    for (const auto& p : group) {
        const DivisorClass img = apply_permutation(d, p);
        for (const auto& [idx, c] : img.coeffs) acc.add(idx, c);
    }
    const Rat w(1, static_cast<unsigned long>(group.size()));
    DivisorClass out(d.sig);
    for (const auto& [idx, c] : acc.coeffs) out.set(idx, c * w);
    return out;
}

DivisorClass normalize_g1(const DivisorClass& d) {
    if (d.sig.g != 1) throw InvalidSignature("normal form applies to genus 1 only");
    const auto& table = g1_relation_table(d.sig.n);
    // Row 0 kills lambda, row k kills psi_k.
    DivisorClass out = d;
    const Rat a = out.coeff(ClassIndex::lambda());
    if (a != 0)
        for (const auto& [idx, c] : table[0].coeffs) out.add(idx, -a * c);
    for (int k = 1; k <= d.sig.n; ++k) {
        const Rat ck = out.coeff(ClassIndex::psi(k));
        if (ck == 0) continue;
        if (static_cast<size_t>(k) >= table.size())
            throw InvalidSignature("no validated boundary expression for psi on this space");
        for (const auto& [idx, c] : table[k].coeffs) out.add(idx, -ck * c);
    }
    return out;
}

}  // namespace fabercone
