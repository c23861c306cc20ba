#include "fabercone/intersection.hpp"

#include <map>
#include <sstream>

#include "fabercone/linalg.hpp"
#include "fabercone/parallel.hpp"

namespace fabercone {

Rat LinearFunctional::eval(const DivisorClass& d) const {
    if (d.sig != sig) throw DimensionMismatch("functional/divisor signature mismatch");
    return dot(covector, d.bvec());
}

std::string LinearFunctional::str() const {
    const ClassBasis& basis = ClassBasis::of(sig);
    std::ostringstream os;
    bool first = true;
    for (int p = 0; p < basis.dim(); ++p) {
        const Rat& c = covector[p];
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        const Rat mag = abs(c);
        if (mag != 1) os << rat_str(mag) << "*";
        os << basis.coord_name(p);
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

namespace {

// Adds coeff * b_{i,I} to the covector, resolving the singleton psi
// convention and reading missing divisors as zero.
void add_b(QVec& cov, const ClassBasis& basis, int i, std::uint32_t marks, int coeff) {
    const ModuliSig& sig = basis.sig;
    if (i == 0 && popcount(marks) == 1) {
        const int mark = mark_set_elements(marks)[0];
        cov[basis.pos(ClassIndex::psi(mark))] += coeff;
        return;
    }
    if (!boundary_exists(sig, i, marks)) return;
    const auto [ci, cmarks] = canonical_boundary_pair(sig, i, marks);
    cov[basis.pos(ClassIndex::boundary(ci, cmarks))] += coeff;
}

}  // namespace

LinearFunctional stratum_functional(const StratumCurve& x) {
    const ClassBasis& basis = ClassBasis::of(x.sig);
    QVec cov(basis.dim(), Rat(0));
    switch (x.type) {
        case 1:
            cov[basis.pos(ClassIndex::lambda())] += 1;
            cov[basis.pos(ClassIndex::delta_irr())] += -12;
            add_b(cov, basis, 1, 0, 1);
            break;
        case 2:
            cov[basis.pos(ClassIndex::delta_irr())] += 1;
            break;
        case 3:
            add_b(cov, basis, x.legs[0].genus, x.legs[0].marks, 1);
            break;
        case 4:
            cov[basis.pos(ClassIndex::delta_irr())] += 2;
            add_b(cov, basis, x.legs[0].genus + 1, x.legs[0].marks, -1);
            break;
        case 5:
            add_b(cov, basis, x.legs[0].genus, x.legs[0].marks, 1);
            add_b(cov, basis, x.legs[1].genus, x.legs[1].marks, 1);
            add_b(cov, basis, x.legs[0].genus + x.legs[1].genus, x.legs[0].marks | x.legs[1].marks, -1);
            break;
        case 6:
            for (int k = 0; k < 4; ++k) add_b(cov, basis, x.legs[k].genus, x.legs[k].marks, 1);
            for (int k = 1; k < 4; ++k)
                add_b(cov, basis, x.legs[0].genus + x.legs[k].genus, x.legs[0].marks | x.legs[k].marks, -1);
            break;
        default:
            throw DimensionMismatch("unknown stratum type");
    }
    return LinearFunctional{x.sig, std::move(cov), x, x.str()};
}

namespace {

struct QVecLess {
    bool operator()(const QVec& a, const QVec& b) const {
        for (size_t k = 0; k < a.size(); ++k) {
            const int c = cmp(a[k], b[k]);
            if (c != 0) return c < 0;
        }
        return false;
    }
};

}  // namespace

std::vector<MergedStratum> enumerate_strata_merged(const ModuliSig& sig) {
    const auto raw = enumerate_strata_raw(sig);
    std::vector<MergedStratum> out;
    std::map<QVec, size_t, QVecLess> seen;
    for (const auto& x : raw) {
        QVec cov = stratum_functional(x).covector;
        auto [it, inserted] = seen.emplace(std::move(cov), out.size());
        if (inserted)
            out.push_back(MergedStratum{x, {}});
        else
            out[it->second].merged.push_back(x);
    }
    return out;
}

std::vector<StratumCurve> enumerate_strata(const ModuliSig& sig) {
    std::vector<StratumCurve> out;
    for (auto& m : enumerate_strata_merged(sig)) out.push_back(std::move(m.representative));
    return out;
}

FNefReport is_f_nef(const DivisorClass& d, int threads) {
    const auto strata = enumerate_strata(d.sig);
    const QVec bv = d.bvec();

    std::vector<Rat> values(strata.size());
    std::vector<QVec> covectors(strata.size());
    parallel_for(strata.size(), threads, [&](size_t k) {
        covectors[k] = stratum_functional(strata[k]).covector;
        values[k] = dot(covectors[k], bv);
    });

    FNefReport rep;
    rep.sig = d.sig;
    rep.ambient_dim = ClassBasis::of(d.sig).dim();
    QMat tight_mat(rep.ambient_dim);
    for (size_t k = 0; k < strata.size(); ++k) {
        const int s = sgn(values[k]);
        if (s < 0) rep.violated.emplace_back(strata[k], values[k]);
        if (s == 0) {
            rep.tight.push_back(strata[k]);
            tight_mat.add_row(covectors[k]);
        }
    }
    rep.verdict = rep.violated.empty();
    rep.tight_rank = static_cast<int>(rank(tight_mat));
    return rep;
}

Criterion61Report nef_criterion_61(const DivisorClass& d) {
    if (d.sig.n != 0 || d.sig.g < 2) throw InvalidSignature("criterion needs n = 0 and g >= 2");
    Criterion61Report rep;
    rep.f_nef = is_f_nef(d).verdict;
    const Rat b_irr = -d.coeff(ClassIndex::delta_irr());
    for (int i = 1; 2 * i <= d.sig.g; ++i) {
        const Rat bi = lookup_b(d, i, 0);
        if (bi != 0 && bi < b_irr) rep.offending_levels.push_back(i);
    }
    rep.nef = rep.f_nef && rep.offending_levels.empty();
    return rep;
}

Criterion35Report effective_criterion_35(const DivisorClass& d) {
    if (d.sig.n != 0 || d.sig.g < 2) throw InvalidSignature("criterion needs n = 0 and g >= 2");
    const int g = d.sig.g;
    const Rat a = d.coeff(ClassIndex::lambda());
    const Rat b_irr = -d.coeff(ClassIndex::delta_irr());
    const Rat scale(8 * g + 4);

    Criterion35Report rep;
    rep.ineq_a = a >= 0;
    rep.ineq_birr = Rat(g) * a >= scale * b_irr;
    bool strict = a > 0 && Rat(g) * a > scale * b_irr;
    rep.ineq_bi = true;
    for (int i = 1; 2 * i <= g; ++i) {
        const Rat bi = lookup_b(d, i, 0);
        if (Rat(2 * g) * a < scale * bi) rep.ineq_bi = false;
        if (Rat(2 * g) * a <= scale * bi) strict = false;
    }
    rep.effective = rep.ineq_a && rep.ineq_birr && rep.ineq_bi;
    rep.strict = rep.effective && strict;
    return rep;
}

ConeH faber_cone_h(const ModuliSig& sig) {
    sig.validate_for_strata();
    ConeH cone;
    cone.dim = ClassBasis::of(sig).dim();
    for (const auto& x : enumerate_strata(sig)) cone.rows.push_back(primitive(stratum_functional(x).covector));
    cone.canonicalize();
    return cone;
}

FlagDivisorReport verify_flag_divisor(int g, int n, const Rat& a, const Rat& birr) {
    const ModuliSig sig{g, n};
    sig.validate_for_strata();
    const DivisorClass d = flag_divisor(g, n, a, birr);
    const QVec bv = d.bvec();

    FlagDivisorReport rep;
    const Rat gn(g + n);
    rep.conditions_met = (a > Rat(12) * birr - Rat(g + n - 1)) && (Rat(2) * birr > gn * gn / 4);
    rep.zero_on_t6 = true;
    rep.positive_on_rest = true;
    for (const auto& x : enumerate_strata(sig)) {
        const Rat v = dot(stratum_functional(x).covector, bv);
        rep.values.emplace_back(x, v);
        if (x.type == 6) {
            if (v != 0) rep.zero_on_t6 = false;
        } else {
            if (v <= 0) rep.positive_on_rest = false;
        }
    }
    return rep;
}

}  // namespace fabercone
