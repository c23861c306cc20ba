#include "fabercone/json_io.hpp"

#include <algorithm>
#include <sstream>

namespace fabercone {

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string boundary_key(const ClassIndex& idx) {
    std::string key = std::to_string(idx.i) + "|";
    const auto marks = mark_set_elements(idx.marks);
    for (size_t k = 0; k < marks.size(); ++k) {
        if (k) key += ",";
        key += std::to_string(marks[k]);
    }
    return key;
}

namespace {

std::pair<int, std::uint32_t> parse_boundary_key(const ModuliSig& sig, const std::string& key) {
    const auto bar = key.find('|');
    if (bar == std::string::npos) throw ParseError("boundary key needs 'i|marks': " + key);
    int i = 0;
    try {
        size_t used = 0;
        i = std::stoi(key.substr(0, bar), &used);
        if (used != bar) throw std::invalid_argument(key);
    } catch (const std::exception&) {
        throw ParseError("malformed boundary genus part: " + key);
    }
    std::uint32_t marks = 0;
    std::string rest = key.substr(bar + 1);
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw ParseError("malformed boundary mark list: " + key);
        int m = 0;
        try {
            m = std::stoi(item);
        } catch (const std::exception&) {
            throw ParseError("malformed boundary mark: " + key);
        }
        if (m < 1 || m > sig.n) throw ParseError("mark out of range in key: " + key);
        const std::uint32_t bit = std::uint32_t(1) << (m - 1);
        if (marks & bit) throw ParseError("repeated mark in key: " + key);
        marks |= bit;
    }
    return {i, marks};
}

}  // namespace

Json divisor_to_json(const DivisorClass& d) {
    Json j;
    j["g"] = d.sig.g;
    j["n"] = d.sig.n;
    j["lambda"] = rat_str(d.coeff(ClassIndex::lambda()));
    j["delta_irr"] = rat_str(d.sig.g >= 1 ? d.coeff(ClassIndex::delta_irr()) : Rat(0));
    Json psi = Json::object();
    for (int k = 1; k <= d.sig.n; ++k) {
        const Rat c = d.coeff(ClassIndex::psi(k));
        if (c != 0) psi[std::to_string(k)] = rat_str(c);
    }
    j["psi"] = psi;
    Json boundary = Json::object();
    for (const auto& [idx, c] : d.coeffs)
        if (idx.kind == ClassKind::Boundary) boundary[boundary_key(idx)] = rat_str(c);
    j["boundary"] = boundary;
    return j;
}

DivisorClass divisor_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("divisor must be a JSON object");
    for (const auto& [key, val] : j.items()) {
        (void)val;
        if (key != "g" && key != "n" && key != "lambda" && key != "delta_irr" && key != "psi" &&
            key != "boundary")
            throw ParseError("unknown divisor field: " + key);
    }
    if (!j.contains("g") || !j.contains("n") || !j["g"].is_number_integer() || !j["n"].is_number_integer())
        throw ParseError("divisor needs integer fields g and n");
    const ModuliSig sig{j["g"].get<int>(), j["n"].get<int>()};
    sig.validate();
    DivisorClass d(sig);
    if (j.contains("lambda")) d.set(ClassIndex::lambda(), parse_rational(j["lambda"].get<std::string>()));
    if (j.contains("delta_irr")) {
        const Rat c = parse_rational(j["delta_irr"].get<std::string>());
        if (sig.g == 0) {
            if (c != 0) throw ParseError("delta_irr does not exist in genus 0");
        } else {
            d.set(ClassIndex::delta_irr(), c);
        }
    }
    if (j.contains("psi")) {
        if (!j["psi"].is_object()) throw ParseError("psi must be an object");
        for (const auto& [key, val] : j["psi"].items()) {
            int k = 0;
            try {
                k = std::stoi(key);
            } catch (const std::exception&) {
                throw ParseError("malformed psi key: " + key);
            }
            if (k < 1 || k > sig.n) throw ParseError("psi index out of range: " + key);
            d.set(ClassIndex::psi(k), parse_rational(val.get<std::string>()));
        }
    }
    if (j.contains("boundary")) {
        if (!j["boundary"].is_object()) throw ParseError("boundary must be an object");
        for (const auto& [key, val] : j["boundary"].items()) {
            const auto [i, marks] = parse_boundary_key(sig, key);
            ClassIndex idx;
            try {
                idx = canonical_index(sig, i, marks);
            } catch (const NonexistentClass& e) {
                throw ParseError(std::string("boundary key ") + key + ": " + e.what());
            }
            if (d.coeffs.contains(idx))
                throw ParseError("duplicate boundary class after canonicalization: " + key);
            d.set(idx, parse_rational(val.get<std::string>()));
        }
    }
    return d;
}

DivisorClass parse_divisor(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return divisor_from_json(j);
}

Json stratum_to_json(const StratumCurve& x) {
    Json j;
    j["type"] = x.type;
    Json legs = Json::array();
    for (const auto& leg : x.legs) {
        Json l;
        l["i"] = leg.genus;
        l["S"] = mark_set_elements(leg.marks);
        legs.push_back(std::move(l));
    }
    j["legs"] = legs;
    return j;
}

Json functional_to_json(const LinearFunctional& f) {
    const ClassBasis& basis = ClassBasis::of(f.sig);
    Json j = Json::object();
    for (int p = 0; p < basis.dim(); ++p)
        if (f.covector[p] != 0) j[basis.coord_name(p)] = rat_str(f.covector[p]);
    return j;
}

Json fnef_report_to_json(const FNefReport& rep) {
    Json j;
    j["verdict"] = rep.verdict;
    Json violated = Json::array();
    for (const auto& [x, v] : rep.violated) {
        Json item;
        item["stratum"] = stratum_to_json(x);
        item["value"] = rat_str(v);
        violated.push_back(std::move(item));
    }
    j["violated"] = violated;
    Json tight = Json::array();
    for (const auto& x : rep.tight) tight.push_back(stratum_to_json(x));
    j["tight"] = tight;
    j["tight_rank"] = rep.tight_rank;
    return j;
}

Json matrix_to_json(int dim, const std::vector<ZVec>& rows) {
    Json j;
    j["dim"] = dim;
    Json rr = Json::array();
    for (const auto& row : rows) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(x.get_str());
        rr.push_back(std::move(r));
    }
    j["rows"] = rr;
    return j;
}

Json matrix_to_json(int dim, const std::vector<QVec>& rows) {
    Json j;
    j["dim"] = dim;
    Json rr = Json::array();
    for (const auto& row : rows) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(rat_str(x));
        rr.push_back(std::move(r));
    }
    j["rows"] = rr;
    return j;
}

std::pair<int, std::vector<QVec>> matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("rows") || !j["dim"].is_number_integer() ||
        !j["rows"].is_array())
        throw ParseError("matrix needs integer 'dim' and array 'rows'");
    const int dim = j["dim"].get<int>();
    if (dim <= 0) throw ParseError("matrix dimension must be positive");
    std::vector<QVec> rows;
    for (const auto& r : j["rows"]) {
        if (!r.is_array() || static_cast<int>(r.size()) != dim)
            throw ParseError("matrix row width mismatch");
        QVec row;
        for (const auto& x : r) row.push_back(parse_rational(x.get<std::string>()));
        rows.push_back(std::move(row));
    }
    return {dim, std::move(rows)};
}

Json cone_v_to_json(const ConeV& cone) {
    Json j;
    j["dim"] = cone.dim;
    j["rays"] = matrix_to_json(cone.dim, cone.rays)["rows"];
    j["lineality"] = matrix_to_json(cone.dim, cone.lineality)["rows"];
    return j;
}

ConeV cone_v_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim")) throw ParseError("cone needs a 'dim' field");
    ConeV cone;
    cone.dim = j["dim"].get<int>();
    Json m;
    m["dim"] = cone.dim;
    m["rows"] = j.value("rays", Json::array());
    for (const auto& r : matrix_from_json(m).second) cone.rays.push_back(to_zvec(r));
    m["rows"] = j.value("lineality", Json::array());
    for (const auto& r : matrix_from_json(m).second) cone.lineality.push_back(to_zvec(r));
    return cone;
}

Json cone_h_to_json(const ConeH& cone) {
    Json j;
    j["dim"] = cone.dim;
    j["rows"] = matrix_to_json(cone.dim, cone.rows)["rows"];
    j["lineality"] = matrix_to_json(cone.dim, cone.lineality)["rows"];
    return j;
}

ConeH cone_h_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim")) throw ParseError("cone needs a 'dim' field");
    ConeH cone;
    cone.dim = j["dim"].get<int>();
    Json m;
    m["dim"] = cone.dim;
    m["rows"] = j.value("rows", Json::array());
    for (const auto& r : matrix_from_json(m).second) cone.rows.push_back(to_zvec(r));
    m["rows"] = j.value("lineality", Json::array());
    for (const auto& r : matrix_from_json(m).second) cone.lineality.push_back(to_zvec(r));
    return cone;
}

Json certificate_to_json(const Certificate& cert) {
    Json j;
    if (cert.kind == Certificate::Kind::Member) {
        j["type"] = "member";
        Json coeffs = Json::object();
        for (size_t k = 0; k < cert.ray_coefficients.size(); ++k)
            if (cert.ray_coefficients[k] != 0) coeffs[std::to_string(k)] = rat_str(cert.ray_coefficients[k]);
        j["coefficients"] = coeffs;
        Json lin = Json::object();
        for (size_t k = 0; k < cert.lin_coefficients.size(); ++k)
            if (cert.lin_coefficients[k] != 0) lin[std::to_string(k)] = rat_str(cert.lin_coefficients[k]);
        j["lineality_coefficients"] = lin;
    } else {
        j["type"] = "separated";
        Json f = Json::array();
        for (const auto& x : cert.functional) f.push_back(rat_str(x));
        j["functional"] = f;
        j["value_on_target"] = rat_str(cert.value_on_target);
    }
    return j;
}

namespace {

void fill_sparse(QVec& dense, const Json& obj, const char* what) {
    if (!obj.is_object()) throw ParseError(std::string(what) + " must be an object");
    for (const auto& [key, val] : obj.items()) {
        size_t k = 0;
        try {
            k = std::stoul(key);
        } catch (const std::exception&) {
            throw ParseError(std::string("malformed index in ") + what + ": " + key);
        }
        if (k >= dense.size()) throw ParseError(std::string("index out of range in ") + what + ": " + key);
        dense[k] = parse_rational(val.get<std::string>());
    }
}

}  // namespace

Certificate certificate_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("type")) throw ParseError("certificate needs a 'type' field");
    Certificate cert;
    const std::string type = j["type"].get<std::string>();
    if (type == "member") {
        cert.kind = Certificate::Kind::Member;
        // Sizes are resolved by the caller against the cone; store sparse
        // entries at their stated indices.
        size_t max_ray = 0, max_lin = 0;
        if (j.contains("coefficients"))
            for (const auto& [key, val] : j["coefficients"].items()) {
                (void)val;
                max_ray = std::max(max_ray, std::stoul(key) + 1);
            }
        if (j.contains("lineality_coefficients"))
            for (const auto& [key, val] : j["lineality_coefficients"].items()) {
                (void)val;
                max_lin = std::max(max_lin, std::stoul(key) + 1);
            }
        cert.ray_coefficients.assign(max_ray, Rat(0));
        cert.lin_coefficients.assign(max_lin, Rat(0));
        if (j.contains("coefficients")) fill_sparse(cert.ray_coefficients, j["coefficients"], "coefficients");
        if (j.contains("lineality_coefficients"))
            fill_sparse(cert.lin_coefficients, j["lineality_coefficients"], "lineality_coefficients");
    } else if (type == "separated") {
        cert.kind = Certificate::Kind::Separated;
        if (!j.contains("functional") || !j["functional"].is_array())
            throw ParseError("separated certificate needs a functional array");
        for (const auto& x : j["functional"]) cert.functional.push_back(parse_rational(x.get<std::string>()));
        if (j.contains("value_on_target"))
            cert.value_on_target = parse_rational(j["value_on_target"].get<std::string>());
    } else {
        throw ParseError("unknown certificate type: " + type);
    }
    return cert;
}

std::string fulton_transcript_hash(int n, size_t ray_index, const ZVec& ray, const Certificate& cert) {
    std::string transcript = "fulton;n=" + std::to_string(n) + ";ray_index=" + std::to_string(ray_index) +
                             ";ray=" + vec_str(ray) + ";cert=" + certificate_to_json(cert).dump() +
                             ";verified=1";
    return fnv1a64_hex(transcript);
}

Json fulton_ray_file(const FultonResult& result, size_t ray_index) {
    const ZVec& ray = result.rays_of_n.rays[ray_index];
    const Certificate& cert = result.per_ray[ray_index];
    Json j;
    j["version"] = 1;
    j["kind"] = "fulton-ray-membership";
    j["n"] = result.n;
    j["ray_index"] = ray_index;
    Json r = Json::array();
    for (const auto& x : ray) r.push_back(x.get_str());
    j["ray"] = r;
    j["certificate"] = certificate_to_json(cert);
    j["transcript_hash"] = fulton_transcript_hash(result.n, ray_index, ray, cert);
    return j;
}

Json flag_report_to_json(const FlagDivisorReport& rep) {
    Json j;
    j["conditions_met"] = rep.conditions_met;
    j["zero_on_T6"] = rep.zero_on_t6;
    j["positive_on_rest"] = rep.positive_on_rest;
    Json values = Json::array();
    for (const auto& [x, v] : rep.values) {
        Json item;
        item["stratum"] = stratum_to_json(x);
        item["value"] = rat_str(v);
        values.push_back(std::move(item));
    }
    j["values"] = values;
    return j;
}

}  // namespace fabercone
