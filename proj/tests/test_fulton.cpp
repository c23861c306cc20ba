#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fabercone/fulton.hpp"
#include "fabercone/intersection.hpp"
#include "fabercone/json_io.hpp"
#include "fabercone/linalg.hpp"

using namespace fabercone;

namespace {

// Stirling numbers of the second kind by the standard recurrence.
long long stirling2(int n, int k) {
    if (n == 0 && k == 0) return 1;
    if (n == 0 || k == 0) return 0;
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1);
}

std::uint32_t mask_of(std::initializer_list<int> marks) {
    std::uint32_t m = 0;
    for (int k : marks) m |= std::uint32_t(1) << (k - 1);
    return m;
}

}  // namespace

TEST_CASE("relation space dimensions") {
    CHECK(build_V(4).dim() == 1);
    CHECK(build_V(5).dim() == 5);
    CHECK(build_V(6).dim() == 16);
    CHECK_THROWS_AS(build_V(3), InvalidN);

    // coordinate counts 2^(n-1) - n - 1
    CHECK(build_V(4).raw_dim() == 3);
    CHECK(build_V(5).raw_dim() == 10);
    CHECK(build_V(6).raw_dim() == 25);
}

TEST_CASE("inequality counts match the Stirling recurrence") {
    for (int n = 4; n <= 7; ++n) {
        const ConeH cone = build_N(n);
        CHECK(static_cast<long long>(cone.rows.size()) == stirling2(n, 4));
    }
}

TEST_CASE("generator counts") {
    CHECK(build_E(4).rays.size() == 1);  // the three coordinates are identified
    CHECK(build_E(5).rays.size() == 10);
    CHECK(build_E(6).rays.size() == 25);
}

TEST_CASE("relation rows annihilate the type-6 functionals") {
    for (int n = 4; n <= 6; ++n) {
        const RelationSpace space = build_V(n);
        const ModuliSig sig{0, n};
        const auto strata = enumerate_strata(sig);
        for (const auto& rel : space.relations) {
            // translate the relation row into a divisor supported on the
            // boundary and pair it with every stratum
            DivisorClass d(sig);
            for (size_t c = 0; c < space.coords.size(); ++c)
                if (rel[c] != 0) d.add(ClassIndex::boundary(0, space.coords[c]), rel[c]);
            for (const auto& x : strata) CHECK(stratum_functional(x).eval(d) == 0);
        }
    }
}

TEST_CASE("the containment question for small n") {
    {
        const FultonResult res = fulton_question(4);
        CHECK(res.answer);
        CHECK(res.rays_of_n.rays.size() == 1);
        CHECK(res.cone_n.rows.size() == 1);
        CHECK((res.cone_n.rows[0] == ZVec{1}));
        CHECK((res.rays_of_n.rays[0] == ZVec{1}));
    }
    {
        const FultonResult res = fulton_question(5);
        CHECK(res.answer);
        CHECK(res.rays_of_n.rays.size() == 10);
        for (size_t k = 0; k < res.per_ray.size(); ++k) {
            CHECK(res.per_ray[k].kind == Certificate::Kind::Member);
            CHECK(verify_certificate(res.per_ray[k], to_qvec(res.rays_of_n.rays[k]), res.cone_e));
        }
    }
}

TEST_CASE("dual containment route agrees for small n") {
    for (int n = 4; n <= 5; ++n) {
        const RelationSpace space = build_V(n);
        CHECK(cone_contained_dual(build_N(space), build_E(space)));
    }
}

TEST_CASE("kappa expansion") {
    {
        const RelationSpace space = build_V(4);
        const QVec raw = kappa_raw(space);
        for (const auto& x : raw) CHECK(x == Rat(1, 3));
    }
    {
        const RelationSpace space = build_V(5);
        const QVec raw = kappa_raw(space);
        for (const auto& x : raw) CHECK(x == Rat(1, 2));
    }
    {
        const RelationSpace space = build_V(6);
        const QVec raw = kappa_raw(space);
        for (size_t c = 0; c < space.coords.size(); ++c) {
            // class size is complement-invariant: min(|T|, n-|T|)
            const int t = std::min(popcount(space.coords[c]), 6 - popcount(space.coords[c]));
            CHECK(raw[c] == (t == 2 ? Rat(3, 5) : Rat(4, 5)));
        }
    }
    // kappa is an effective boundary combination for n = 4,5,6
    for (int n = 4; n <= 6; ++n) {
        const RelationSpace space = build_V(n);
        const Certificate cert = membership(space.project(kappa_raw(space)), build_E(space));
        CHECK(cert.kind == Certificate::Kind::Member);
    }
}

TEST_CASE("corrected kappa classes stay effective") {
    {
        BlockPartition p{5, {mask_of({1, 2}), mask_of({3, 4, 5})}};
        const Certificate cert = lemma44_check(5, p, {{mask_of({1, 2}), Rat(-1)}});
        CHECK(cert.kind == Certificate::Kind::Member);
    }
    {
        BlockPartition p{4, {mask_of({1, 2}), mask_of({3, 4})}};
        const Certificate cert = lemma44_check(4, p, {{mask_of({1, 2}), Rat(-1)}});
        CHECK(cert.kind == Certificate::Kind::Member);
    }
    {
        BlockPartition p{6, {mask_of({1, 2, 3}), mask_of({4, 5, 6})}};
        const Certificate cert = lemma44_check(6, p, {{mask_of({1, 2, 3}), Rat(-1)}});
        CHECK(cert.kind == Certificate::Kind::Member);
    }
    {
        BlockPartition bad{5, {mask_of({1, 2}), mask_of({3, 4})}};
        CHECK_THROWS_AS(lemma44_check(5, bad, {}), InvalidPartition);
        BlockPartition small{5, {mask_of({1}), mask_of({2, 3, 4, 5})}};
        CHECK_THROWS_AS(lemma44_check(5, small, {}), InvalidPartition);
        BlockPartition ok{5, {mask_of({1, 2}), mask_of({3, 4, 5})}};
        CHECK_THROWS_AS(lemma44_check(5, ok, {{mask_of({1, 3}), Rat(-1)}}), InvalidPartition);
    }
}

TEST_CASE("block partitions expose admissible classes") {
    BlockPartition p{6, {mask_of({1, 2}), mask_of({3, 4}), mask_of({5, 6})}};
    const auto classes = p.admissible_classes();
    // a union of two blocks is the complement of the remaining block, so
    // the six unions fold into three classes
    CHECK(classes.size() == 3);
}

TEST_CASE("symmetric invariant subspace of the relation quotient") {
    // Average the full symmetric group action on the quotient; the image
    // dimension counts the size-classes of the coordinates.
    for (int n : {5, 6}) {
        const RelationSpace space = build_V(n);
        const std::vector<Permutation> gens = [&] {
            Permutation swap01 = identity_permutation(n);
            std::swap(swap01[0], swap01[1]);
            Permutation cyc(n);
            for (int k = 0; k < n - 1; ++k) cyc[k] = k + 2;
            cyc[n - 1] = 1;
            return std::vector<Permutation>{swap01, cyc};
        }();
        const auto group = group_closure(n, gens);
        REQUIRE(group.size() > 1);

        const InvariantSubspace inv = symmetrize_space(space, gens);
        const size_t invariant_dim = inv.dim;
        // the basis vectors are pointwise fixed by each generator
        for (const auto& v : inv.basis) {
            for (const auto& gen : gens) {
                QVec moved_raw(space.coords.size(), Rat(0));
                for (int j = 0; j < space.dim(); ++j) {
                    if (v[j] == 0) continue;
                    std::uint32_t image = 0;
                    for (int mark : mark_set_elements(space.coords[space.quotient_basis[j]]))
                        image |= std::uint32_t(1) << (gen[mark - 1] - 1);
                    moved_raw[space.pos(image)] += v[j];
                }
                CHECK(space.project(moved_raw) == v);
            }
        }
        // orbit count of the coordinate classes: distinct min(|T|, n-|T|)
        std::set<int> size_classes;
        for (std::uint32_t T : space.coords)
            size_classes.insert(std::min(popcount(T), n - popcount(T)));
        CHECK(invariant_dim == size_classes.size());
        if (n == 6) CHECK(invariant_dim == 2);
    }
}

TEST_CASE("certificate files re-verify and hash deterministically") {
    const FultonResult res = fulton_question(4);
    const Json file = fulton_ray_file(res, 0);
    CHECK(file["kind"] == "fulton-ray-membership");
    const std::string h1 = file["transcript_hash"].get<std::string>();
    CHECK(h1 == fulton_transcript_hash(4, 0, res.rays_of_n.rays[0], res.per_ray[0]));

    const Certificate parsed = certificate_from_json(file["certificate"]);
    Certificate padded = parsed;
    padded.ray_coefficients.resize(res.cone_e.rays.size(), Rat(0));
    padded.lin_coefficients.resize(res.cone_e.lineality.size(), Rat(0));
    CHECK(verify_certificate(padded, to_qvec(res.rays_of_n.rays[0]), res.cone_e));
}
