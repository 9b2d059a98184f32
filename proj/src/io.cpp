#include "flagtrans/io.hpp"

#include "flagtrans/classify.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace flagtrans {

namespace {

void write_canonical(std::ostringstream& os, const Json& j, int indent)
{
    const std::string pad(static_cast<size_t>(indent + 2), ' ');
    const std::string close(static_cast<size_t>(indent), ' ');
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {  // std::map keeps keys sorted
            if (!first) os << ",\n";
            first = false;
            os << pad << Json(it.key()).dump() << ": ";
            write_canonical(os, it.value(), indent + 2);
        }
        os << "\n" << close << "}";
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            os << "[]";
            return;
        }
        // Arrays of scalars stay on one line; matrices read better that way.
        bool scalars = true;
        for (const auto& e : j)
            if (e.is_structured()) scalars = false;
        if (scalars) {
            os << "[";
            for (size_t i = 0; i < j.size(); ++i) {
                if (i) os << ", ";
                write_canonical(os, j[i], indent + 2);
            }
            os << "]";
            return;
        }
        os << "[\n";
        for (size_t i = 0; i < j.size(); ++i) {
            if (i) os << ",\n";
            os << pad;
            write_canonical(os, j[i], indent + 2);
        }
        os << "\n" << close << "]";
        return;
    }
    case Json::value_t::number_float: {
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            os << "null";
            return;
        }
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
        os << buf;
        return;
    }
    default: os << j.dump();
    }
}

Json matrix_columns(const Mat& M)
{
    Json cols = Json::array();
    for (int c = 0; c < M.cols(); ++c) {
        Json col = Json::array();
        for (int r = 0; r < M.rows(); ++r) col.push_back(M(r, c));
        cols.push_back(col);
    }
    return cols;
}

Mat columns_matrix(const Json& cols, int rows)
{
    Mat M(rows, static_cast<int>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c) {
        if (static_cast<int>(cols[c].size()) != rows) throw std::invalid_argument("column length mismatch");
        for (int r = 0; r < rows; ++r) M(r, static_cast<int>(c)) = cols[c][static_cast<size_t>(r)].get<double>();
    }
    return M;
}

int get_int(const Json& params, const char* key)
{
    if (!params.contains(key)) throw std::invalid_argument(std::string("missing parameter '") + key + "'");
    const Json& v = params.at(key);
    if (v.is_number_integer()) return v.get<int>();
    if (v.is_string()) return std::stoi(v.get<std::string>());
    throw std::invalid_argument(std::string("parameter '") + key + "' must be an integer");
}

std::string get_str(const Json& params, const char* key, const std::string& fallback)
{
    if (!params.contains(key)) return fallback;
    const Json& v = params.at(key);
    return v.is_string() ? v.get<std::string>() : v.dump();
}

}  // namespace

std::string canonical_dump(const Json& j)
{
    std::ostringstream os;
    write_canonical(os, j, 0);
    os << "\n";
    return os.str();
}

Json to_json(const BilinearForm& f)
{
    Json j{{"p", f.p}, {"q", f.q}, {"convention", to_string(f.convention)}};
    if (f.convention == FormConvention::Custom) j["matrix"] = matrix_columns(f.matrix);
    return j;
}

BilinearForm form_from_json(const Json& j)
{
    const int p = j.at("p").get<int>(), q = j.at("q").get<int>();
    const std::string conv = j.at("convention").get<std::string>();
    if (conv == "custom") {
        BilinearForm f;
        f.p = p;
        f.q = q;
        f.convention = FormConvention::Custom;
        f.matrix = columns_matrix(j.at("matrix"), p + q);
        if ((f.matrix - f.matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12)
            throw std::invalid_argument("form matrix is not symmetric");
        if (signature(f.matrix) != std::make_pair(p, q)) throw std::invalid_argument("form matrix signature mismatch");
        return f;
    }
    return make_form(p, q, form_convention_from_string(conv));
}

Json to_json(const Subspace& S) { return Json{{"ambient_dim", S.ambient_dim()}, {"columns", matrix_columns(S.basis)}}; }

Subspace subspace_from_json(const Json& j)
{
    const int n = j.at("ambient_dim").get<int>();
    return make_subspace(columns_matrix(j.at("columns"), n));
}

Json to_json(const Flag& F)
{
    Json j;
    j["kind"] = to_string(F.type.kind);
    j["params"] = Json{{"p", F.type.p}, {"q", F.type.q}};
    if (F.type.kind == FlagKind::D) j["params"]["top_sign"] = F.top_sign;
    if (F.type.kind != FlagKind::A) j["form"] = to_json(F.form);
    j["theta"] = F.theta();
    Json subs = Json::object();
    for (const auto& [k, S] : F.subspaces) {
        if (F.type.kind == FlagKind::A && (k == 0 || k == F.type.p)) continue;
        subs[std::to_string(k)] = matrix_columns(S.basis);
    }
    j["subspaces"] = subs;
    return j;
}

Flag flag_from_json(const Json& j)
{
    const FlagKind kind = flag_kind_from_string(j.at("kind").get<std::string>());
    const Json& params = j.at("params");
    std::map<int, Subspace> chain;
    if (kind == FlagKind::A) {
        const int d = params.at("p").get<int>();
        for (auto it = j.at("subspaces").begin(); it != j.at("subspaces").end(); ++it)
            chain[std::stoi(it.key())] = make_subspace(columns_matrix(it.value(), d));
        Flag F = make_flag_A(d, chain);
        validate_flag(F);
        return F;
    }
    const BilinearForm form = form_from_json(j.at("form"));
    for (auto it = j.at("subspaces").begin(); it != j.at("subspaces").end(); ++it)
        chain[std::stoi(it.key())] = make_subspace(columns_matrix(it.value(), form.dim()));
    if (kind == FlagKind::G2) {
        if (!chain.count(1) || !chain.count(2)) throw std::invalid_argument("G2 flag needs subspaces 1 and 2");
        return g2_pointed_photon(chain.at(1), chain.at(2));
    }
    Flag F = make_isotropic_flag(form, chain);
    if (F.type.kind != kind) throw std::invalid_argument("flag kind does not match the form signature");
    if (params.contains("top_sign") && F.top_sign != 0 && params.at("top_sign").get<int>() != F.top_sign)
        throw std::invalid_argument("stored top_sign disagrees with the top plane");
    validate_flag(F);
    return F;
}

Json to_json(const AlgebraElement& x)
{
    Json c = Json::array();
    for (int i = 0; i < x.coords.size(); ++i) c.push_back(x.coords(i));
    return Json{{"tower", x.tower}, {"coords", c}};
}

AlgebraElement algebra_element_from_json(const Json& j)
{
    const CompAlgebra A = build_algebra(j.at("tower").get<std::vector<int>>());
    const auto c = j.at("coords").get<std::vector<double>>();
    return element(A, Eigen::Map<const Vec>(c.data(), static_cast<Eigen::Index>(c.size())));
}

Json to_json(const CliffordRep& rep)
{
    Json gens = Json::array();
    for (int i = 0; i < rep.n; ++i) {
        const Mat G = rep.generator_dense(i);
        Json rows = Json::array();
        for (int r = 0; r < G.rows(); ++r) {
            Json row = Json::array();
            for (int c = 0; c < G.cols(); ++c) row.push_back(static_cast<int>(G(r, c)));
            rows.push_back(row);
        }
        gens.push_back(rows);
    }
    return Json{{"n", rep.n}, {"D", rep.D}, {"generators", gens}};
}

Json to_json(const FamilyDescriptor& d)
{
    return Json{{"construction", d.construction}, {"n", d.n}, {"params", d.params}, {"seed", d.seed}};
}

FamilyDescriptor descriptor_from_json(const Json& j)
{
    FamilyDescriptor d;
    d.construction = j.at("construction").get<std::string>();
    d.n = j.value("n", 0);
    d.params = j.value("params", Json::object());
    d.seed = j.value("seed", std::uint64_t{0});
    return d;
}

Json parse_params(const std::string& s)
{
    Json out = Json::object();
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw std::invalid_argument("bad parameter '" + item + "', want key=value");
        const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        char* end = nullptr;
        const long v = std::strtol(val.c_str(), &end, 10);
        if (!val.empty() && end && *end == '\0') out[key] = v;
        else out[key] = val;
    }
    return out;
}

static LipschitzMap phi_by_name(const std::string& name, int n)
{
    if (name == "contraction") return hemisphere_contraction(n);
    if (name == "identity") return identity_map(n);
    if (name == "constant") return constant_map(-Vec::Unit(n, 0));
    throw std::invalid_argument("unknown phi '" + name + "' (contraction, identity, constant)");
}

SphereFamily resolve(const FamilyDescriptor& d)
{
    const std::string& c = d.construction;
    const Json& P = d.params;
    auto want_n = [&](int n) {
        if (d.n != 0 && d.n != n)
            throw std::invalid_argument(c + ": descriptor n = " + std::to_string(d.n) + " but construction gives " +
                                        std::to_string(n));
    };
    SphereFamily F;
    if (c == "spinor") {
        F = spinor_sphere(d.n, get_int(P, "p"), d.seed);
    } else if (c == "division") {
        F = division_algebra_sphere(division_algebra_from_string(get_str(P, "algebra", "H")), get_int(P, "eps"), d.seed);
    } else if (c == "deformed") {
        F = deformed_sphere(d.n, phi_by_name(get_str(P, "phi", "contraction"), d.n), d.seed);
    } else if (c == "full") {
        F = full_sphere(d.n, get_int(P, "d"), d.seed).family;
    } else if (c == "undeformed_block") {
        F = undeformed_block_sphere(d.n, get_int(P, "d"), d.seed);
    } else if (c == "g2_fiber") {
        F = g2_fiber_sphere(d.seed).family;
    } else if (c == "containing_inner" || c == "containing_outer") {
        auto pair = containing_sphere(d.n, d.seed);
        return c == "containing_inner" ? pair.inner : pair.outer;
    } else if (c == "ein") {
        F = ein_sphere(get_int(P, "p"), get_int(P, "q"));
    } else if (c == "complex_line") {
        F = complex_line_sphere();
    } else if (c == "point") {
        const SphereFamily base = spinor_sphere(d.n, get_int(P, "p"), d.seed);
        F = constant_family(d.n, base.evaluate(Vec::Unit(d.n, 0)));
    } else if (c == "table") {
        const CartanType t = cartan_type_from_string(get_str(P, "type", "A"));
        auto I = table_instance(t, get_int(P, "rank"));
        if (!I) throw std::invalid_argument("table: no sphere instance for this type and rank");
        F = I->build();
    } else if (c == "restrict") {
        F = restrict_family(resolve(descriptor_from_json(P.at("of"))), get_int(P, "m"));
    } else if (c == "embed") {
        F = embed_family(resolve(descriptor_from_json(P.at("of"))), embedding_from_string(get_str(P, "embedding", "")));
    } else if (c == "to_type_A") {
        F = to_type_A(resolve(descriptor_from_json(P.at("of"))));
    } else if (c == "direct_sum") {
        std::vector<SphereFamily> parts;
        for (const auto& part : P.at("parts")) parts.push_back(resolve(descriptor_from_json(part)));
        const std::string comb = get_str(P, "combiner", "isotropic");
        if (comb == "isotropic") F = direct_sum_sphere(parts, Combiner::Isotropic);
        else if (comb == "path") F = direct_sum_sphere(parts, Combiner::Path, parse_flag_path(get_str(P, "path", "")));
        else throw std::invalid_argument("combiner must be isotropic or path");
    } else {
        throw std::invalid_argument("unknown construction '" + c +
                                    "' (spinor, division, deformed, full, undeformed_block, g2_fiber, containing_inner, "
                                    "containing_outer, ein, complex_line, point, table, restrict, embed, to_type_A, "
                                    "direct_sum)");
    }
    want_n(F.n);
    return F;
}

std::string cross_constants_csv()
{
    const RCrossBasis B = r_cross_basis();
    std::ostringstream os;
    os << "i,j,k,c\n";
    for (int i = -3; i <= 3; ++i)
        for (int j = -3; j <= 3; ++j) {
            const double c = B.coeff(i, j);
            if (c == 0.0) continue;
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.12g", c);  // 12 digits: last-bit noise must not reach the golden file
            os << i << "," << j << "," << i + j << "," << buf << "\n";
        }
    return os.str();
}

}  // namespace flagtrans
