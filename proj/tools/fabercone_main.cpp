#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fabercone/cache.hpp"
#include "fabercone/fm_oracle.hpp"
#include "fabercone/fulton.hpp"
#include "fabercone/intersection.hpp"
#include "fabercone/json_io.hpp"

using namespace fabercone;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write file: " + path.string());
    out << content;
}

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

std::optional<std::chrono::steady_clock::time_point> deadline_from_budget(double seconds) {
    if (seconds <= 0) return std::nullopt;
    return std::chrono::steady_clock::now() +
           std::chrono::milliseconds(static_cast<long long>(seconds * 1000));
}

int cmd_strata(int g, int n, bool json, bool verbose) {
    const ModuliSig sig{g, n};
    const auto merged = enumerate_strata_merged(sig);
    if (json) {
        Json out = Json::array();
        for (const auto& m : merged) {
            Json item;
            item["stratum"] = stratum_to_json(m.representative);
            item["functional"] = functional_to_json(stratum_functional(m.representative));
            if (verbose && !m.merged.empty()) {
                Json folded = Json::array();
                for (const auto& x : m.merged) folded.push_back(stratum_to_json(x));
                item["merged"] = folded;
            }
            out.push_back(std::move(item));
        }
        std::cout << dump_json(out);
    } else {
        for (const auto& m : merged) {
            std::cout << m.representative.str() << "  ->  "
                      << stratum_functional(m.representative).str() << "\n";
            if (verbose)
                for (const auto& x : m.merged) std::cout << "    merged: " << x.str() << "\n";
        }
        std::cout << merged.size() << " strata\n";
    }
    return kExitOk;
}

int cmd_fnef(const std::string& file, bool report, int threads) {
    const DivisorClass d = parse_divisor(read_input(file));
    const FNefReport rep = is_f_nef(d, threads);
    if (report) {
        std::cout << dump_json(fnef_report_to_json(rep));
    } else {
        std::cout << (rep.verdict ? "F-nef: yes" : "F-nef: no") << "\n";
        for (const auto& [x, v] : rep.violated)
            std::cout << "violated " << x.str() << " value " << rat_str(v) << "\n";
        std::cout << "tight " << rep.tight.size() << ", tight_rank " << rep.tight_rank << "\n";
    }
    return rep.verdict ? kExitOk : kExitNegative;
}

int cmd_faber_cone(int g, int n, bool rays, bool no_cache, int threads, double budget, bool json) {
    const ModuliSig sig{g, n};
    const ConeH cone = faber_cone_h(sig);
    if (!rays) {
        if (json) {
            std::cout << dump_json(cone_h_to_json(cone));
        } else {
            const ClassBasis& basis = ClassBasis::of(sig);
            std::cout << "dim " << cone.dim << " (";
            for (int p = 0; p < basis.dim(); ++p) std::cout << (p ? "," : "") << basis.coord_name(p);
            std::cout << "), " << cone.rows.size() << " inequalities\n";
            for (const auto& row : cone.rows) std::cout << vec_str(row) << "\n";
        }
        return kExitOk;
    }

    const ConeCache cache = ConeCache::standard();
    const std::string key = cone_cache_key(g, n, "faber_rays", cone);
    std::optional<ConeV> result;
    if (!no_cache) result = cache.load(key, cone);
    if (!result) {
        DDOptions opts;
        opts.threads = threads;
        opts.deadline = deadline_from_budget(budget);
        result = extremal_rays(cone, opts);
        if (!no_cache) cache.store(key, *result);
    }
    if (json) {
        std::cout << dump_json(cone_v_to_json(*result));
    } else {
        std::cout << result->rays.size() << " extremal rays";
        if (!result->lineality.empty()) std::cout << ", lineality dim " << result->lineality.size();
        std::cout << "\n";
        for (const auto& r : result->rays) std::cout << vec_str(r) << "\n";
    }
    return kExitOk;
}

int cmd_fulton(int n, const std::string& cert_dir, double budget, int threads, size_t max_rays) {
    FultonOptions opts;
    opts.threads = threads;
    opts.deadline = deadline_from_budget(budget);
    opts.max_rays = max_rays;
    // Partial progress lands next to the certificates, or in the cache
    // directory when no certificate directory was requested.
    const std::filesystem::path partial_dir =
        cert_dir.empty() ? ConeCache::standard().dir : std::filesystem::path(cert_dir);
    opts.checkpoint = [&, partial_dir](size_t rows_done, size_t rows_total,
                                       const std::vector<ZVec>& rays) {
        Json j;
        j["kind"] = "fulton-partial";
        j["n"] = n;
        j["rows_done"] = rows_done;
        j["rows_total"] = rows_total;
        Json rr = Json::array();
        for (const auto& r : rays) {
            Json row = Json::array();
            for (const auto& x : r) row.push_back(x.get_str());
            rr.push_back(std::move(row));
        }
        j["partial_rays"] = rr;
        std::error_code ec;
        std::filesystem::create_directories(partial_dir, ec);
        write_file(partial_dir / ("fulton_partial_n" + std::to_string(n) + ".json"), dump_json(j));
    };
    if (!cert_dir.empty()) std::filesystem::create_directories(cert_dir);

    const FultonResult res = fulton_question(n, opts);
    if (!cert_dir.empty()) {
        const int width = std::to_string(res.rays_of_n.rays.size()).size();
        for (size_t k = 0; k < res.rays_of_n.rays.size(); ++k) {
            std::string name = std::to_string(k);
            name.insert(0, width - name.size(), '0');
            write_file(std::filesystem::path(cert_dir) / ("ray_" + name + ".json"),
                       dump_json(fulton_ray_file(res, k)));
        }
    }
    std::cout << (res.answer ? "YES" : "NO") << "\n";
    std::cout << "dim V = " << res.space.dim() << ", " << res.cone_n.rows.size() << " inequalities, "
              << res.rays_of_n.rays.size() << " extremal rays, " << res.cone_e.rays.size()
              << " boundary generators\n";
    if (!cert_dir.empty())
        std::cout << res.rays_of_n.rays.size() << " certificates written to " << cert_dir << "\n";
    return res.answer ? kExitOk : kExitNegative;
}

ConeV cone_from_file(const std::string& path, const std::string& kind, const std::string& lin_path) {
    const Json j = parse_json_text(read_input(path));
    ConeV cone;
    if (j.contains("rays")) {
        cone = cone_v_from_json(j);
    } else {
        const auto [dim, rows] = matrix_from_json(j);
        cone.dim = dim;
        for (const auto& r : rows) cone.rays.push_back(primitive(r));
    }
    if (!lin_path.empty()) {
        const auto [dim, rows] = matrix_from_json(parse_json_text(read_input(lin_path)));
        if (dim != cone.dim) throw ParseError("lineality dimension mismatch");
        for (const auto& r : rows) cone.lineality.push_back(primitive(r));
    }
    if (kind == "ineqs") {
        ConeH h;
        h.dim = cone.dim;
        h.rows = cone.rays;
        h.lineality = cone.lineality;
        return extremal_rays(h);
    }
    return cone;
}

int verify_certificate_file(const std::string& path) {
    const Json j = parse_json_text(read_input(path));
    const std::string kind = j.value("kind", "");
    if (kind == "fulton-ray-membership") {
        const int n = j.at("n").get<int>();
        const FultonOptions opts;
        const RelationSpace space = build_V(n);
        const ConeV e = build_E(space);
        (void)opts;
        QVec ray;
        for (const auto& x : j.at("ray")) ray.push_back(parse_rational(x.get<std::string>()));
        Certificate cert = certificate_from_json(j.at("certificate"));
        cert.ray_coefficients.resize(e.rays.size(), Rat(0));
        cert.lin_coefficients.resize(e.lineality.size(), Rat(0));
        if (!verify_certificate(cert, ray, e)) {
            std::cout << "certificate FAILED re-verification\n";
            return kExitNegative;
        }
        const std::string hash =
            fulton_transcript_hash(n, j.at("ray_index").get<size_t>(), to_zvec(ray), cert);
        if (j.value("transcript_hash", "") != hash) {
            std::cout << "transcript hash mismatch\n";
            return kExitNegative;
        }
        std::cout << "certificate verified\n";
        return kExitOk;
    }
    if (kind == "membership") {
        const ConeV cone = cone_v_from_json(j.at("cone"));
        QVec target;
        for (const auto& x : j.at("target")) target.push_back(parse_rational(x.get<std::string>()));
        Certificate cert = certificate_from_json(j.at("certificate"));
        cert.ray_coefficients.resize(cone.rays.size(), Rat(0));
        cert.lin_coefficients.resize(cone.lineality.size(), Rat(0));
        if (!verify_certificate(cert, target, cone)) {
            std::cout << "certificate FAILED re-verification\n";
            return kExitNegative;
        }
        std::cout << "certificate verified\n";
        return kExitOk;
    }
    throw ParseError("unknown certificate file kind: " + kind);
}

int cmd_membership(const std::string& target_path, const std::string& cone_path,
                   const std::string& cone_kind, const std::string& lin_path,
                   const std::string& out_path, bool cross_check) {
    const Json tj = parse_json_text(read_input(target_path));
    QVec target;
    if (tj.is_array()) {
        for (const auto& x : tj) target.push_back(parse_rational(x.get<std::string>()));
    } else {
        const auto [dim, rows] = matrix_from_json(tj);
        if (rows.size() != 1) throw ParseError("target must be a single vector");
        (void)dim;
        target = rows[0];
    }
    const ConeV cone = cone_from_file(cone_path, cone_kind, lin_path);
    const Certificate cert = membership(target, cone);
    if (cross_check) {
        const FacetMembership fm = membership_via_facets(target, cone);
        if (fm.member != (cert.kind == Certificate::Kind::Member))
            throw CertificateError("cross-check route disagrees with the LP verdict");
    }
    Json out;
    out["kind"] = "membership";
    out["cone"] = cone_v_to_json(cone);
    Json t = Json::array();
    for (const auto& x : target) t.push_back(rat_str(x));
    out["target"] = t;
    out["certificate"] = certificate_to_json(cert);
    const std::string text = dump_json(out);
    std::cout << text;
    if (!out_path.empty()) write_file(out_path, text);
    return cert.kind == Certificate::Kind::Member ? kExitOk : kExitNegative;
}

std::vector<std::uint32_t> parse_partition_blocks(const std::string& text, int n) {
    std::vector<std::uint32_t> blocks;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, '|')) {
        std::uint32_t mask = 0;
        for (char c : item) {
            if (c == ',' || c == ' ') continue;
            if (c < '1' || c > '9') throw ParseError("partition blocks use digits 1..9");
            const int m = c - '0';
            if (m > n) throw ParseError("mark out of range in partition");
            mask |= std::uint32_t(1) << (m - 1);
        }
        if (mask) blocks.push_back(mask);
    }
    return blocks;
}

int cmd_lemma44(int n, const std::string& partition_text, const std::vector<std::string>& e_specs) {
    BlockPartition partition;
    partition.n = n;
    partition.blocks = parse_partition_blocks(partition_text, n);
    std::map<std::uint32_t, Rat> e;
    for (const auto& spec : e_specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos) throw ParseError("correction needs the form MARKS=VALUE");
        std::uint32_t mask = 0;
        for (char c : spec.substr(0, eq)) {
            if (c == ',' || c == ' ') continue;
            if (c < '1' || c > '9') throw ParseError("correction marks use digits 1..9");
            mask |= std::uint32_t(1) << (c - '1');
        }
        e[mask] = parse_rational(spec.substr(eq + 1));
    }
    const Certificate cert = lemma44_check(n, partition, e);
    std::cout << dump_json(certificate_to_json(cert));
    return cert.kind == Certificate::Kind::Member ? kExitOk : kExitNegative;
}

int cmd_flag_divisor(int g, int n, const std::string& a_text, const std::string& b_text, bool verify,
                     bool json) {
    const Rat a = parse_rational(a_text);
    const Rat birr = parse_rational(b_text);
    if (!verify) {
        std::cout << dump_json(divisor_to_json(flag_divisor(g, n, a, birr)));
        return kExitOk;
    }
    const FlagDivisorReport rep = verify_flag_divisor(g, n, a, birr);
    if (json) {
        std::cout << dump_json(flag_report_to_json(rep));
    } else {
        std::cout << "conditions_met: " << (rep.conditions_met ? "yes" : "no") << "\n"
                  << "zero_on_T6: " << (rep.zero_on_t6 ? "yes" : "no") << "\n"
                  << "positive_on_rest: " << (rep.positive_on_rest ? "yes" : "no") << "\n";
    }
    return rep.conditions_met && rep.zero_on_t6 && rep.positive_on_rest ? kExitOk : kExitNegative;
}

int cmd_kappa(int n, bool json) {
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
    if (json) {
        Json out;
        out["n"] = n;
        out["coefficients"] = coeffs;
        std::cout << dump_json(out);
    } else {
        for (const auto& [key, val] : coeffs.items())
            std::cout << "{" << key << "}: " << val.get<std::string>() << "\n";
    }
    return kExitOk;
}

int cmd_relations(int n, bool json) {
    const RelationSpace space = build_V(n);
    if (json) {
        Json out;
        out["n"] = n;
        out["dim"] = space.dim();
        out["coordinates"] = static_cast<int>(space.coords.size());
        out["relation_rows"] = static_cast<int>(space.relations.size());
        Json basis = Json::array();
        for (int b : space.quotient_basis) {
            const auto marks = mark_set_elements(space.coords[b]);
            std::string key;
            for (size_t k = 0; k < marks.size(); ++k) {
                if (k) key += ",";
                key += std::to_string(marks[k]);
            }
            basis.push_back(key);
        }
        out["quotient_basis"] = basis;
        std::cout << dump_json(out);
    } else {
        std::cout << "dim V = " << space.dim() << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-rational Faber cone computations for moduli of stable pointed curves"};
    app.require_subcommand(1);

    int g = 0, n = 0, threads = 1;
    double budget = 0;
    size_t max_rays = 0;
    bool json = false, verbose = false, report = false, rays = false, no_cache = false;
    bool verify = false, cross_check = false;
    std::string file, cert_dir, target_path, cone_path, lin_path, out_path, verify_path;
    std::string cone_kind = "rays", partition_text, a_text = "0", b_text = "0";
    std::vector<std::string> e_specs;

    auto* strata = app.add_subcommand("strata", "List the one-dimensional strata with functionals");
    strata->add_option("-g", g)->required();
    strata->add_option("-n", n)->required();
    strata->add_flag("--json", json);
    strata->add_flag("--verbose", verbose);

    auto* fnef = app.add_subcommand("fnef", "Decide F-nefness of a divisor JSON file");
    fnef->add_option("file", file, "divisor JSON file, '-' for stdin")->required();
    fnef->add_flag("--report", report);
    fnef->add_option("--threads", threads);

    auto* faber = app.add_subcommand("faber-cone", "Inequalities or extremal rays of the F-nef cone");
    faber->add_option("-g", g)->required();
    faber->add_option("-n", n)->required();
    faber->add_flag("--rays", rays);
    faber->add_flag("--no-cache", no_cache);
    faber->add_option("--threads", threads);
    faber->add_option("--budget", budget, "time budget in seconds");
    faber->add_flag("--json", json);

    auto* fulton = app.add_subcommand("fulton", "Boundary-cone containment for genus zero");
    fulton->add_option("-n", n)->required();
    fulton->add_option("--certificates", cert_dir);
    fulton->add_option("--budget", budget, "time budget in seconds");
    fulton->add_option("--threads", threads);
    fulton->add_option("--max-rays", max_rays);

    auto* member = app.add_subcommand("membership", "Cone membership with certificates");
    member->add_option("--target", target_path);
    member->add_option("--cone", cone_path);
    member->add_option("--cone-kind", cone_kind)->check(CLI::IsMember({"rays", "ineqs"}));
    member->add_option("--lineality", lin_path);
    member->add_option("--out", out_path);
    member->add_flag("--cross-check", cross_check);
    member->add_option("--verify", verify_path, "re-verify a certificate file");

    auto* lemma44 = app.add_subcommand("lemma44", "Effectivity check for corrected kappa classes");
    lemma44->add_option("-n", n)->required();
    lemma44->add_option("--partition", partition_text)->required();
    lemma44->add_option("--e", e_specs, "corrections MARKS=VALUE");

    auto* flag = app.add_subcommand("flag-divisor", "Build or verify the flag divisor");
    flag->add_option("-g", g)->required();
    flag->add_option("-n", n)->required();
    flag->add_option("-a", a_text)->required();
    flag->add_option("-b", b_text)->required();
    flag->add_flag("--verify", verify);
    flag->add_flag("--json", json);

    auto* kappa = app.add_subcommand("kappa", "Boundary expansion of the kappa class");
    kappa->add_option("-n", n)->required();
    kappa->add_flag("--json", json);

    auto* relations = app.add_subcommand("relations", "Dimension of the boundary relation space");
    relations->add_option("-n", n)->required();
    relations->add_flag("--json", json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (app.got_subcommand(strata)) return cmd_strata(g, n, json, verbose);
        if (app.got_subcommand(fnef)) return cmd_fnef(file, report, threads);
        if (app.got_subcommand(faber))
            return cmd_faber_cone(g, n, rays, no_cache, threads, budget, json);
        if (app.got_subcommand(fulton)) return cmd_fulton(n, cert_dir, budget, threads, max_rays);
        if (app.got_subcommand(member)) {
            if (!verify_path.empty()) return verify_certificate_file(verify_path);
            if (target_path.empty() || cone_path.empty())
                throw ParseError("membership needs --target and --cone, or --verify FILE");
            return cmd_membership(target_path, cone_path, cone_kind, lin_path, out_path, cross_check);
        }
        if (app.got_subcommand(lemma44)) return cmd_lemma44(n, partition_text, e_specs);
        if (app.got_subcommand(flag)) return cmd_flag_divisor(g, n, a_text, b_text, verify, json);
        if (app.got_subcommand(kappa)) return cmd_kappa(n, json);
        if (app.got_subcommand(relations)) return cmd_relations(n, json);
    } catch (const ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const GroupTooLarge& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
