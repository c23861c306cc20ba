#include "fabercone/combinat.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>

namespace fabercone {

std::string mark_set_str(std::uint32_t mask) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (int k = 0; mask != 0; ++k, mask >>= 1) {
        if (mask & 1u) {
            if (!first) os << ",";
            os << (k + 1);
            first = false;
        }
    }
    os << "}";
    return os.str();
}

std::vector<int> mark_set_elements(std::uint32_t mask) {
    std::vector<int> out;
    for (int k = 0; mask != 0; ++k, mask >>= 1)
        if (mask & 1u) out.push_back(k + 1);
    return out;
}

std::uint32_t mark_set_from_elements(const std::vector<int>& marks, int n) {
    std::uint32_t mask = 0;
    for (int m : marks) {
        if (m < 1 || m > n) throw ParseError("mark out of range: " + std::to_string(m));
        mask |= std::uint32_t(1) << (m - 1);
    }
    return mask;
}

void ModuliSig::validate() const {
    if (g < 0 || n < 0 || n > 30 || !stable())
        throw InvalidSignature("invalid signature g=" + std::to_string(g) + " n=" + std::to_string(n));
}

void ModuliSig::validate_for_strata() const {
    validate();
    if (!has_one_strata())
        throw InvalidSignature("no one-dimensional strata for g=" + std::to_string(g) +
                               " n=" + std::to_string(n));
}

std::string ClassIndex::str() const {
    switch (kind) {
        case ClassKind::Lambda: return "lambda";
        case ClassKind::DeltaIrr: return "delta_irr";
        case ClassKind::Psi: return "psi_" + std::to_string(i);
        case ClassKind::Boundary: return "delta_" + std::to_string(i) + "," + mark_set_str(marks);
    }
    return "?";
}

bool boundary_exists(const ModuliSig& sig, int i, std::uint32_t marks) {
    if (i < 0 || i > sig.g) return false;
    if ((marks & ~sig.full_mask()) != 0) return false;
    const int s = popcount(marks);
    const int sc = sig.n - s;
    if (sig.g == 0) return s >= 2 && sc >= 2;
    if (i == 0) return s >= 2;
    if (i == sig.g) return sc >= 2;
    return true;  // 1 <= i <= g-1
}

std::pair<int, std::uint32_t> canonical_boundary_pair(const ModuliSig& sig, int i, std::uint32_t marks) {
    const int ci = sig.g - i;
    const std::uint32_t cmarks = sig.full_mask() & ~marks;
    if (i > ci || (i == ci && marks > cmarks)) return {ci, cmarks};
    return {i, marks};
}

bool class_exists(const ModuliSig& sig, const ClassIndex& idx) {
    switch (idx.kind) {
        case ClassKind::Lambda: return true;
        case ClassKind::DeltaIrr: return sig.g >= 1;
        case ClassKind::Psi: return idx.i >= 1 && idx.i <= sig.n;
        case ClassKind::Boundary: return boundary_exists(sig, idx.i, idx.marks);
    }
    return false;
}

ClassIndex canonical_index(const ModuliSig& sig, int i, std::uint32_t marks) {
    sig.validate();
    if (i < 0 || i > sig.g) throw NonexistentClass("genus part out of range");
    if ((marks & ~sig.full_mask()) != 0) throw NonexistentClass("marks out of range");
    if (!boundary_exists(sig, i, marks))
        throw NonexistentClass("boundary divisor does not exist: delta_" + std::to_string(i) + "," +
                               mark_set_str(marks));
    const auto [ci, cmarks] = canonical_boundary_pair(sig, i, marks);
    return ClassIndex::boundary(ci, cmarks);
}

const ClassBasis& ClassBasis::of(const ModuliSig& sig) {
    static std::map<ModuliSig, ClassBasis> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(sig);
    if (it != cache.end()) return it->second;

    sig.validate();
    ClassBasis basis;
    basis.sig = sig;
    basis.indices.push_back(ClassIndex::lambda());
    if (sig.g >= 1) basis.indices.push_back(ClassIndex::delta_irr());
    for (int k = 1; k <= sig.n; ++k) basis.indices.push_back(ClassIndex::psi(k));
    for (int i = 0; 2 * i <= sig.g; ++i) {
        for (std::uint32_t S = 0; S <= sig.full_mask(); ++S) {
            if (!boundary_exists(sig, i, S)) continue;
            const auto [ci, cS] = canonical_boundary_pair(sig, i, S);
            if (ci != i || cS != S) continue;
            basis.indices.push_back(ClassIndex::boundary(i, S));
        }
    }
    for (size_t p = 0; p < basis.indices.size(); ++p) basis.position[basis.indices[p]] = static_cast<int>(p);
    return cache.emplace(sig, std::move(basis)).first->second;
}

int ClassBasis::pos(const ClassIndex& idx) const {
    auto it = position.find(idx);
    if (it == position.end()) throw NonexistentClass("index not in basis: " + idx.str());
    return it->second;
}

std::string ClassBasis::coord_name(int column) const {
    const ClassIndex& idx = indices.at(column);
    switch (idx.kind) {
        case ClassKind::Lambda: return "a";
        case ClassKind::DeltaIrr: return "birr";
        case ClassKind::Psi: return "c" + std::to_string(idx.i);
        case ClassKind::Boundary: {
            std::string s = "b[" + std::to_string(idx.i) + "|";
            const auto marks = mark_set_elements(idx.marks);
            for (size_t k = 0; k < marks.size(); ++k) {
                if (k) s += ",";
                s += std::to_string(marks[k]);
            }
            return s + "]";
        }
    }
    return "?";
}

std::string StratumCurve::str() const {
    std::ostringstream os;
    os << "T" << type;
    if (!legs.empty()) {
        os << "[";
        for (size_t k = 0; k < legs.size(); ++k) {
            if (k) os << ",";
            os << "(" << legs[k].genus << "," << mark_set_str(legs[k].marks) << ")";
        }
        os << "]";
    }
    return os.str();
}

bool stratum_less(const StratumCurve& a, const StratumCurve& b) {
    if (a.type != b.type) return a.type < b.type;
    return a.legs < b.legs;
}

namespace {

void push_sorted(std::set<std::vector<Leg>>& seen, std::vector<StratumCurve>& out, const ModuliSig& sig,
                 int type, std::vector<Leg> legs) {
    std::sort(legs.begin(), legs.end());
    if (!seen.insert(legs).second) return;
    out.push_back(StratumCurve{sig, type, std::move(legs)});
}

// All subsets of `universe` (as submasks), ascending.
std::vector<std::uint32_t> submasks(std::uint32_t universe) {
    std::vector<std::uint32_t> out;
    std::uint32_t s = 0;
    while (true) {
        out.push_back(s);
        if (s == universe) break;
        s = (s - universe) & universe;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<StratumCurve> enumerate_strata_raw(const ModuliSig& sig) {
    sig.validate_for_strata();
    const int g = sig.g;
    const std::uint32_t N = sig.full_mask();

    std::vector<StratumCurve> out;

    if (g >= 1) out.push_back(StratumCurve{sig, 1, {}});
    if (g >= 3) out.push_back(StratumCurve{sig, 2, {}});

    if (g >= 2) {
        for (int i = 0; i <= g - 2; ++i)
            for (std::uint32_t I : submasks(N)) {
                if (i + popcount(I) > 0) out.push_back(StratumCurve{sig, 3, {Leg{i, I}}});
            }
        for (int i = 0; i <= g - 2; ++i)
            for (std::uint32_t I : submasks(N)) out.push_back(StratumCurve{sig, 4, {Leg{i, I}}});
    }

    if (g >= 1) {
        std::set<std::vector<Leg>> seen;
        std::vector<StratumCurve> t5;
        for (int i = 0; i <= g - 1; ++i)
            for (std::uint32_t I : submasks(N)) {
                if (i + popcount(I) == 0) continue;
                for (int j = 0; i + j <= g - 1; ++j)
                    for (std::uint32_t J : submasks(N & ~I)) {
                        if (j + popcount(J) == 0) continue;
                        push_sorted(seen, t5, sig, 5, {Leg{i, I}, Leg{j, J}});
                    }
            }
        out.insert(out.end(), t5.begin(), t5.end());
    }

    {
        std::set<std::vector<Leg>> seen;
        std::vector<StratumCurve> t6;
        for (std::uint32_t I : submasks(N))
            for (std::uint32_t J : submasks(N & ~I))
                for (std::uint32_t K : submasks(N & ~(I | J))) {
                    const std::uint32_t L = N & ~(I | J | K);
                    for (int i = 0; i <= g; ++i)
                        for (int j = 0; i + j <= g; ++j)
                            for (int k = 0; i + j + k <= g; ++k) {
                                const int l = g - i - j - k;
                                if (i + popcount(I) == 0 || j + popcount(J) == 0 || k + popcount(K) == 0 ||
                                    l + popcount(L) == 0)
                                    continue;
                                push_sorted(seen, t6, sig, 6,
                                            {Leg{i, I}, Leg{j, J}, Leg{k, K}, Leg{l, L}});
                            }
                }
        out.insert(out.end(), t6.begin(), t6.end());
    }

    std::sort(out.begin(), out.end(), stratum_less);
    return out;
}

StratumCurve relabel(const StratumCurve& x, const std::vector<int>& perm) {
    StratumCurve y = x;
    for (auto& leg : y.legs) {
        std::uint32_t m = 0;
        for (int mark : mark_set_elements(leg.marks)) m |= std::uint32_t(1) << (perm[mark - 1] - 1);
        leg.marks = m;
    }
    std::sort(y.legs.begin(), y.legs.end());
    return y;
}

}  // namespace fabercone
