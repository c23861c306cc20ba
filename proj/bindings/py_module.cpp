#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fabercone/cache.hpp"
#include "fabercone/fm_oracle.hpp"
#include "fabercone/fulton.hpp"
#include "fabercone/intersection.hpp"
#include "fabercone/json_io.hpp"

namespace py = pybind11;
using namespace fabercone;

namespace {

// The module speaks JSON strings; the python package turns them into dicts.

std::string py_strata(int g, int n) {
    Json out = Json::array();
    for (const auto& m : enumerate_strata_merged(ModuliSig{g, n})) {
        Json item;
        item["stratum"] = stratum_to_json(m.representative);
        item["functional"] = functional_to_json(stratum_functional(m.representative));
        Json folded = Json::array();
        for (const auto& x : m.merged) folded.push_back(stratum_to_json(x));
        item["merged"] = folded;
        out.push_back(std::move(item));
    }
    return out.dump();
}

std::string py_canonical_index(int g, int n, int i, const std::vector<int>& marks) {
    const ModuliSig sig{g, n};
    const ClassIndex idx = canonical_index(sig, i, mark_set_from_elements(marks, n));
    Json out;
    out["i"] = idx.i;
    out["S"] = mark_set_elements(idx.marks);
    return out.dump();
}

std::string py_is_f_nef(const std::string& divisor_json, int threads) {
    return fnef_report_to_json(is_f_nef(parse_divisor(divisor_json), threads)).dump();
}

std::string py_lookup_b(const std::string& divisor_json, int i, const std::vector<int>& marks) {
    const DivisorClass d = parse_divisor(divisor_json);
    return rat_str(lookup_b(d, i, mark_set_from_elements(marks, d.sig.n)));
}

std::string py_ch_gamma(int g) { return divisor_to_json(ch_gamma(g)).dump(); }

std::string py_flag_divisor(int g, int n, const std::string& a, const std::string& birr) {
    return divisor_to_json(flag_divisor(g, n, parse_rational(a), parse_rational(birr))).dump();
}

std::string py_verify_flag_divisor(int g, int n, const std::string& a, const std::string& birr) {
    return flag_report_to_json(verify_flag_divisor(g, n, parse_rational(a), parse_rational(birr))).dump();
}

std::string py_coarsen(const std::string& divisor_json) {
    return divisor_to_json(coarsen_to_unmarked(parse_divisor(divisor_json))).dump();
}

std::string py_normalize_g1(const std::string& divisor_json) {
    return divisor_to_json(normalize_g1(parse_divisor(divisor_json))).dump();
}

std::string py_symmetrize(const std::string& divisor_json, const std::vector<std::vector<int>>& gens) {
    return divisor_to_json(symmetrize(parse_divisor(divisor_json), gens)).dump();
}

std::string py_nef_criterion_61(const std::string& divisor_json) {
    const Criterion61Report rep = nef_criterion_61(parse_divisor(divisor_json));
    Json out;
    out["nef"] = rep.nef;
    out["f_nef"] = rep.f_nef;
    out["offending_levels"] = rep.offending_levels;
    out["char_zero_hypothesis"] = rep.char_zero_hypothesis;
    return out.dump();
}

std::string py_effective_criterion_35(const std::string& divisor_json) {
    const Criterion35Report rep = effective_criterion_35(parse_divisor(divisor_json));
    Json out;
    out["effective"] = rep.effective;
    out["strict"] = rep.strict;
    out["char_zero_hypothesis"] = rep.char_zero_hypothesis;
    return out.dump();
}

std::string py_faber_cone(int g, int n) { return cone_h_to_json(faber_cone_h(ModuliSig{g, n})).dump(); }

std::string py_faber_cone_rays(int g, int n, int threads) {
    DDOptions opts;
    opts.threads = threads;
    return cone_v_to_json(extremal_rays(faber_cone_h(ModuliSig{g, n}), opts)).dump();
}

std::string py_extremal_rays(const std::string& cone_json, int threads) {
    DDOptions opts;
    opts.threads = threads;
    return cone_v_to_json(extremal_rays(cone_h_from_json(Json::parse(cone_json)), opts)).dump();
}

std::string py_facets(const std::string& cone_json) {
    return cone_h_to_json(facets(cone_v_from_json(Json::parse(cone_json)))).dump();
}

std::string py_membership(const std::vector<std::string>& target, const std::string& cone_json) {
    QVec t;
    for (const auto& x : target) t.push_back(parse_rational(x));
    return certificate_to_json(membership(t, cone_v_from_json(Json::parse(cone_json)))).dump();
}

std::string py_fulton(int n, int threads, double budget_seconds, size_t max_rays) {
    FultonOptions opts;
    opts.threads = threads;
    opts.max_rays = max_rays;
    if (budget_seconds > 0)
        opts.deadline = std::chrono::steady_clock::now() +
                        std::chrono::milliseconds(static_cast<long long>(budget_seconds * 1000));
    const FultonResult res = fulton_question(n, opts);
    Json out;
    out["n"] = n;
    out["answer"] = res.answer;
    out["dim"] = res.space.dim();
    out["inequalities"] = static_cast<int>(res.cone_n.rows.size());
    out["extremal_rays"] = cone_v_to_json(res.rays_of_n)["rays"];
    Json certs = Json::array();
    for (const auto& c : res.per_ray) certs.push_back(certificate_to_json(c));
    out["certificates"] = certs;
    return out.dump();
}

std::string py_relation_space(int n) {
    const RelationSpace space = build_V(n);
    Json out;
    out["n"] = n;
    out["dim"] = space.dim();
    out["coordinates"] = static_cast<int>(space.coords.size());
    out["relation_rows"] = static_cast<int>(space.relations.size());
    return out.dump();
}

std::string py_kappa(int n) {
    const RelationSpace space = build_V(n);
    const QVec raw = kappa_raw(space);
    Json coeffs = Json::object();
    for (size_t c = 0; c < space.coords.size(); ++c) {
        const auto marks = mark_set_elements(space.coords[c]);
        std::string key;
        for (size_t k = 0; k < marks.size(); ++k) {
            if (k) key += ",";
            key += std::to_string(marks[k]);
        }
        coeffs[key] = rat_str(raw[c]);
    }
    Json out;
    out["n"] = n;
    out["coefficients"] = coeffs;
    return out.dump();
}

std::string py_symmetrize_space(int n, const std::vector<std::vector<int>>& generators) {
    const RelationSpace space = build_V(n);
    const InvariantSubspace inv = symmetrize_space(space, generators);
    Json out;
    out["n"] = n;
    out["dim"] = inv.dim;
    Json basis = Json::array();
    for (const auto& v : inv.basis) {
        Json row = Json::array();
        for (const auto& x : v) row.push_back(rat_str(x));
        basis.push_back(std::move(row));
    }
    out["basis"] = basis;
    return out.dump();
}

std::string py_lemma44(int n, const std::vector<std::vector<int>>& blocks,
                       const std::map<std::string, std::string>& e) {
    BlockPartition partition;
    partition.n = n;
    for (const auto& block : blocks) partition.blocks.push_back(mark_set_from_elements(block, n));
    std::map<std::uint32_t, Rat> corrections;
    for (const auto& [marks_text, value] : e) {
        std::vector<int> marks;
        std::stringstream ss(marks_text);
        std::string item;
        while (std::getline(ss, item, ',')) marks.push_back(std::stoi(item));
        corrections[mark_set_from_elements(marks, n)] = parse_rational(value);
    }
    return certificate_to_json(lemma44_check(n, partition, corrections)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact-rational Faber cone computations for moduli of stable pointed curves";

    py::register_exception<InvalidSignature>(m, "InvalidSignature", PyExc_ValueError);
    py::register_exception<NonexistentClass>(m, "NonexistentClass", PyExc_ValueError);
    py::register_exception<InvalidN>(m, "InvalidN", PyExc_ValueError);
    py::register_exception<InvalidPartition>(m, "InvalidPartition", PyExc_ValueError);
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ResourceLimit>(m, "ResourceLimitError", PyExc_RuntimeError);

    m.def("strata_json", &py_strata, py::arg("g"), py::arg("n"));
    m.def("canonical_index_json", &py_canonical_index, py::arg("g"), py::arg("n"), py::arg("i"),
          py::arg("marks"));
    m.def("is_f_nef_json", &py_is_f_nef, py::arg("divisor_json"), py::arg("threads") = 1);
    m.def("lookup_b", &py_lookup_b, py::arg("divisor_json"), py::arg("i"), py::arg("marks"));
    m.def("ch_gamma_json", &py_ch_gamma, py::arg("g"));
    m.def("flag_divisor_json", &py_flag_divisor, py::arg("g"), py::arg("n"), py::arg("a"), py::arg("birr"));
    m.def("verify_flag_divisor_json", &py_verify_flag_divisor, py::arg("g"), py::arg("n"), py::arg("a"),
          py::arg("birr"));
    m.def("coarsen_to_unmarked_json", &py_coarsen, py::arg("divisor_json"));
    m.def("normalize_g1_json", &py_normalize_g1, py::arg("divisor_json"));
    m.def("symmetrize_json", &py_symmetrize, py::arg("divisor_json"), py::arg("generators"));
    m.def("nef_criterion_61_json", &py_nef_criterion_61, py::arg("divisor_json"));
    m.def("effective_criterion_35_json", &py_effective_criterion_35, py::arg("divisor_json"));
    m.def("faber_cone_json", &py_faber_cone, py::arg("g"), py::arg("n"));
    m.def("faber_cone_rays_json", &py_faber_cone_rays, py::arg("g"), py::arg("n"), py::arg("threads") = 1);
    m.def("extremal_rays_json", &py_extremal_rays, py::arg("cone_h_json"), py::arg("threads") = 1);
    m.def("facets_json", &py_facets, py::arg("cone_v_json"));
    m.def("membership_json", &py_membership, py::arg("target"), py::arg("cone_v_json"));
    m.def("fulton_json", &py_fulton, py::arg("n"), py::arg("threads") = 1,
          py::arg("budget_seconds") = 0.0, py::arg("max_rays") = size_t(0));
    m.def("relation_space_json", &py_relation_space, py::arg("n"));
    m.def("kappa_json", &py_kappa, py::arg("n"));
    m.def("lemma44_json", &py_lemma44, py::arg("n"), py::arg("blocks"), py::arg("e"));
    m.def("symmetrize_space_json", &py_symmetrize_space, py::arg("n"), py::arg("generators"));
}
