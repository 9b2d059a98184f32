#include "flagtrans/classify.hpp"

#include "flagtrans/clifford.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace flagtrans {

std::string to_string(CartanType t)
{
    switch (t) {
    case CartanType::A: return "A";
    case CartanType::B: return "B";
    case CartanType::C: return "C";
    case CartanType::D: return "D";
    case CartanType::G2: return "G2";
    case CartanType::F4: return "F4";
    case CartanType::E6: return "E6";
    case CartanType::E7: return "E7";
    case CartanType::E8: return "E8";
    }
    return "?";
}

CartanType cartan_type_from_string(const std::string& s)
{
    for (auto t : {CartanType::A, CartanType::B, CartanType::C, CartanType::D, CartanType::G2, CartanType::F4,
                   CartanType::E6, CartanType::E7, CartanType::E8})
        if (to_string(t) == s) return t;
    throw std::invalid_argument("unknown Cartan type: " + s);
}

static int exceptional_rank(CartanType t)
{
    switch (t) {
    case CartanType::G2: return 2;
    case CartanType::F4: return 4;
    case CartanType::E6: return 6;
    case CartanType::E7: return 7;
    case CartanType::E8: return 8;
    default: return 0;
    }
}

int dynkin_rank(CartanType t, int r)
{
    switch (t) {
    case CartanType::A:
        if (r < 2) throw std::invalid_argument("type A needs d >= 2");
        return r - 1;
    case CartanType::B:
    case CartanType::C:
        if (r < 1) throw std::invalid_argument("types B and C need rank >= 1");
        return r;
    case CartanType::D:
        if (r < 4) throw std::invalid_argument("type D needs p >= 4");
        return r;
    default: {
        const int e = exceptional_rank(t);
        if (r != 0 && r != e)
            throw std::invalid_argument(to_string(t) + " has rank " + std::to_string(e));
        return e;
    }
    }
}

Theta full_theta(CartanType t, int r)
{
    const int n = dynkin_rank(t, r);
    Theta th;
    if (t == CartanType::D) {
        for (int i = 1; i <= r - 2; ++i) th.nodes.insert(i);
        th.plus = th.minus = true;
    } else {
        for (int i = 1; i <= n; ++i) th.nodes.insert(i);
    }
    return th;
}

Theta parse_theta(const std::string& s, CartanType t, int r)
{
    if (s == "full" || s == "all") return full_theta(t, r);
    Theta th;
    std::string tok;
    std::stringstream ss(s);
    while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
        if (tok.empty()) continue;
        const char last = tok.back();
        if (last == '+' || last == '-') {
            if (t != CartanType::D) throw std::invalid_argument("signed node '" + tok + "' only exists in type D");
            const int v = std::stoi(tok.substr(0, tok.size() - 1));
            if (v != r) throw std::invalid_argument("signed node must be " + std::to_string(r) + "+/-");
            (last == '+' ? th.plus : th.minus) = true;
            continue;
        }
        size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("bad theta token: " + tok);
        th.nodes.insert(v);
    }
    return th;
}

std::string format_theta(const Theta& th, CartanType t, int r)
{
    std::string out;
    for (int v : th.nodes) out += (out.empty() ? "" : ",") + std::to_string(v);
    if (t == CartanType::D) {
        if (th.plus) out += (out.empty() ? "" : ",") + std::to_string(r) + "+";
        if (th.minus) out += (out.empty() ? "" : ",") + std::to_string(r) + "-";
    }
    return out;
}

void check_query(const ClassificationQuery& q)
{
    const int n = dynkin_rank(q.type, q.rank_param);
    const Theta& th = q.theta;
    if (th.empty()) throw std::invalid_argument("theta is empty");
    const int hi = q.type == CartanType::D ? q.rank_param - 2 : n;
    for (int v : th.nodes)
        if (v < 1 || v > hi) throw std::invalid_argument("node " + std::to_string(v) + " out of range 1.." + std::to_string(hi));

    switch (q.type) {
    case CartanType::A: {
        const int d = q.rank_param;
        for (int v : th.nodes)
            if (!th.nodes.count(d - v))
                throw std::invalid_argument("not self-opposite: " + std::to_string(v) + " in theta but " +
                                            std::to_string(d - v) + " is not (involution k -> d-k)");
        break;
    }
    case CartanType::D:
        if (q.rank_param % 2 == 1 && th.plus != th.minus)
            throw std::invalid_argument("not self-opposite: p = " + std::to_string(q.rank_param) +
                                        " is odd, so the involution swaps " + std::to_string(q.rank_param) + "+ and " +
                                        std::to_string(q.rank_param) + "-");
        break;
    case CartanType::E6: {
        const std::pair<int, int> swaps[] = {{1, 6}, {3, 5}};
        for (auto [a, b] : swaps)
            if (th.nodes.count(a) != th.nodes.count(b))
                throw std::invalid_argument("not self-opposite: E6 involution swaps " + std::to_string(a) + " and " +
                                            std::to_string(b));
        break;
    }
    default: break;
    }
}

static int rho_minus_one(int m) { return radon_hurwitz(m) - 1; }

int best_power_sphere(int m)
{
    int best = -1;
    for (int pw = 4; pw <= m; pw *= 2)
        if (m % pw == 0) best = std::max(best, rho_minus_one(pw));
    return best;
}

// A, d = 8k + eps with eps in {-1,...,6}: 4k = n 2^j, j >= 2, with j mod 4 in {2,3} or n odd.
static int type_a_full_sphere(int k4)
{
    int best = -1;
    for (int j = 2, pw = 4; pw <= k4; ++j, pw *= 2) {
        if (k4 % pw != 0) continue;
        const int n = k4 / pw;
        if (j % 4 == 2 || j % 4 == 3 || n % 2 == 1) best = std::max(best, rho_minus_one(pw));
    }
    return best;
}

ClassificationRow classify(const ClassificationQuery& q)
{
    check_query(q);
    ClassificationRow row;
    const Theta& th = q.theta;
    const Theta full = full_theta(q.type, q.rank_param);
    auto circles = [&](const std::string& rule) {
        row.circles_locally_max = true;
        row.rule = rule;
        row.citations.push_back("table:" + to_string(q.type));
    };
    auto sphere = [&](int dim, bool maximal, const std::string& rule, const std::string& cite) {
        row.sphere_dim = dim;
        row.sphere_maximal = maximal && th == full;
        row.rule = rule;
        row.citations.push_back("table:" + to_string(q.type));
        row.citations.push_back(cite);
    };

    switch (q.type) {
    case CartanType::A: {
        const int d = q.rank_param;
        const int r = ((d % 8) + 8) % 8;
        const int eps = r == 7 ? -1 : r;
        const int k = (d - eps) / 8;
        if (eps >= -1 && eps <= 1) {
            sphere(type_a_full_sphere(4 * k), true, "A: d in {-1,0,1} mod 8", "construct:A:spinor-sum");
        } else if (eps == 2 || eps == 6) {
            if (th.nodes.count(d / 2)) {
                circles("A: d in {2,6} mod 8, d/2 in theta");
            } else {
                const int m = eps == 2 ? 4 * k : 4 * k + 4;
                sphere(rho_minus_one(m), false, "A: d in {2,6} mod 8, d/2 not in theta", "construct:A:middle-removed");
            }
        } else {
            if (th == full) circles("A: d in {3,4,5} mod 8, theta full");
            else sphere(2, false, "A: d in {3,4,5} mod 8, theta proper", "construct:A:two-sphere-path-sum");
        }
        break;
    }
    case CartanType::B: {
        const int p = q.rank_param;
        switch (p % 4) {
        case 0: sphere(best_power_sphere(p), true, "B: p = 0 mod 4", "construct:B:block-sum"); break;
        case 3: sphere(best_power_sphere(p + 1), true, "B: p = 3 mod 4", "construct:B:block-sum"); break;
        case 1:
            if (th.nodes.count(p)) circles("B: p = 1 mod 4, p in theta");
            else sphere(rho_minus_one(p - 1), false, "B: p = 1 mod 4, p not in theta", "construct:B:extend");
            break;
        case 2:
            if (th.nodes.count(p)) circles("B: p = 2 mod 4, p in theta");
            else sphere(2, false, "B: p = 2 mod 4, p not in theta", "construct:B:ein-sum");
            break;
        }
        break;
    }
    case CartanType::C: {
        const bool odd = std::any_of(th.nodes.begin(), th.nodes.end(), [](int v) { return v % 2 == 1; });
        if (odd) {
            circles("C: theta meets the odd integers");
            row.citations.push_back("external:symplectic");
        } else {
            sphere(2, false, "C: theta all even", "external:symplectic");
        }
        break;
    }
    case CartanType::D: {
        const int p = q.rank_param;
        switch (p % 4) {
        case 0: sphere(best_power_sphere(p), true, "D: p = 0 mod 4", "construct:D:block-sum"); break;
        case 1: sphere(best_power_sphere(p - 1), true, "D: p = 1 mod 4", "construct:D:from-B"); break;
        case 2:
            if (th.plus || th.minus) circles("D: p = 2 mod 4, theta meets {p+, p-}");
            else sphere(rho_minus_one(p - 2), false, "D: p = 2 mod 4, theta avoids {p+, p-}", "construct:D:extend");
            break;
        case 3: {
            int best = -1;
            for (int pw = 4; pw < p + 1; pw *= 2)
                if ((p + 1) % pw == 0) best = std::max(best, rho_minus_one(pw));
            sphere(best, true, "D: p = 3 mod 4", "construct:D:mixed-block-sum");
            break;
        }
        }
        break;
    }
    case CartanType::E7:
        if (th.nodes.count(7)) circles("E7: 7 in theta");
        else sphere(3, false, "E7: 7 not in theta", "exceptional:E7");
        break;
    case CartanType::E8: sphere(7, true, "E8", "exceptional:E8"); break;
    case CartanType::G2:
    case CartanType::F4:
    case CartanType::E6: sphere(3, true, to_string(q.type), "exceptional:" + to_string(q.type)); break;
    }
    return row;
}

const std::vector<TableLine>& table_lines()
{
    static const std::vector<TableLine> lines = {
        {"A_{n-1}", "n >= 2", "n in {-1,0,1} mod 8", "none"},
        {"A_{n-1}", "n >= 2", "n in {2,6} mod 8", "theta meets {n/2}"},
        {"A_{n-1}", "n >= 2", "n in {3,4,5} mod 8", "theta = Delta"},
        {"B_n", "n >= 1", "n in {1,2} mod 4", "theta meets {n}"},
        {"B_n", "n >= 1", "n in {0,3} mod 4", "none"},
        {"C_n", "n >= 1", "", "theta meets 2N+1"},
        {"D_n", "n >= 4", "n in {0,1,3} mod 4", "none"},
        {"D_n", "n >= 4", "n = 2 mod 4", "theta meets {n+, n-}"},
        {"G2, F4, E6, E8", "", "", "none"},
        {"E7", "", "", "theta meets {7}"},
    };
    return lines;
}

// ---------------------------------------------------------------------------
// Instances

namespace {

SphereFamily D4(std::uint64_t s) { return spinor_sphere(4, 4, s); }
SphereFamily B3(std::uint64_t s) { return spinor_sphere(4, 3, s); }
SphereFamily B4(std::uint64_t s) { return embed_family(D4(s), Embedding::D2n_B2n); }
SphereFamily D8(std::uint64_t s) { return spinor_sphere(8, 8, s); }
SphereFamily B8(std::uint64_t s) { return embed_family(D8(s), Embedding::D2n_B2n); }

SphereFamily iso_sum(std::vector<SphereFamily> parts) { return direct_sum_sphere(parts, Combiner::Isotropic); }

SphereFamily extend(const SphereFamily& F, int a, int b)
{
    return map_family(F, [a, b](const Flag& G) { return extend_ambient(G, a, b); },
                      "extend(" + std::to_string(a) + "," + std::to_string(b) + ")");
}

SphereFamily swapped(const SphereFamily& F)
{
    return map_family(F, [](const Flag& G) { return swap_signature(G); }, "swap");
}

// Path sum of a type A full-flag 2-sphere with the CP^1 in Gr_2(R^4): drops {1, d-1}.
SphereFamily two_sphere_path_sum(const SphereFamily& full_A)
{
    const SphereFamily eta = restrict_family(to_type_A(full_A), 3);
    const int steps = static_cast<int>(eta.theta.size()) + 1;
    FlagPath path;
    path.push_back({0, 1});
    for (int i = 0; i < steps; ++i) path.push_back({1, 0});
    path.push_back({0, 1});
    return direct_sum_sphere({eta, complex_line_sphere()}, Combiner::Path, path);
}

Theta theta_without(Theta th, std::initializer_list<int> drop)
{
    for (int v : drop) th.nodes.erase(v);
    return th;
}

}  // namespace

std::optional<TableInstance> table_instance(CartanType t, int r)
{
    const int lowest = t == CartanType::A ? 2 : t == CartanType::D ? 4 : 1;
    if (r < lowest) return std::nullopt;
    TableInstance I;
    I.query.type = t;
    I.query.rank_param = r;
    const Theta full = full_theta(t, r);
    I.query.theta = full;

    if (t == CartanType::A) {
        switch (r) {
        case 4:
            I.query.theta = theta_without(full, {2});
            I.recipe = "null lines of R^{1,3} as (line, perp)";
            I.build = [] { return to_type_A(ein_sphere(1, 3)); };
            break;
        case 5:
            I.query.theta = theta_without(full, {2, 3});
            I.recipe = "null lines of R^{2,3} via B2 -> A4";
            I.build = [] { return embed_family(ein_sphere(2, 3), Embedding::Bn_A2n); };
            break;
        case 6:
            I.query.theta = theta_without(full, {3});
            I.recipe = "spinor sphere in Iso(R^{2,4}) as (V, V^perp)";
            I.build = [] { return to_type_A(spinor_sphere(4, 2)); };
            break;
        case 7:
            I.recipe = "spinor B3 via Bn -> A2n";
            I.build = [] { return to_type_A(B3(0)); };
            break;
        case 8:
            I.recipe = "spinor D4 via D2n -> A4n-1";
            I.build = [] { return to_type_A(D4(0)); };
            break;
        case 9:
            I.recipe = "spinor D4 -> B4 -> A8";
            I.build = [] { return to_type_A(B4(0)); };
            break;
        case 10:
            I.query.theta = theta_without(full, {5});
            I.recipe = "D4 -> B4 -> D5, then Dn -> A2n minus middle";
            I.build = [] { return embed_family(embed_family(B4(0), Embedding::Bn_Dn1), Embedding::Dn_A2n_minus_mid); };
            break;
        case 11:
            I.query.theta = theta_without(full, {1, 10});
            I.recipe = "equatorial B3 sphere in Flag(R^7) path-summed with CP^1 in Gr_2(R^4)";
            I.build = [] { return two_sphere_path_sum(B3(0)); };
            break;
        case 12:
            I.query.theta = theta_without(full, {1, 11});
            I.recipe = "equatorial D4 sphere in Flag(R^8) path-summed with CP^1 in Gr_2(R^4)";
            I.build = [] { return two_sphere_path_sum(D4(0)); };
            break;
        default: return std::nullopt;
        }
    } else if (t == CartanType::B) {
        switch (r) {
        case 2:
            I.query.theta = theta_without(full, {2});
            I.recipe = "null lines of R^{2,3}";
            I.build = [] { return ein_sphere(2, 3); };
            break;
        case 3:
            I.recipe = "spinor sphere n=4 in R^{3,4}";
            I.build = [] { return B3(0); };
            break;
        case 4:
            I.recipe = "spinor D4 via D2n -> B2n";
            I.build = [] { return B4(0); };
            break;
        case 5:
            I.query.theta = theta_without(full, {5});
            I.recipe = "B4 sphere in R^{4,5} + R^{1,1}";
            I.build = [] { return extend(B4(0), 1, 1); };
            break;
        case 6:
            I.query.theta = theta_without(full, {6});
            I.recipe = "equatorial D4 sphere (+)_iso null lines of R^{2,3}";
            I.build = [] { return iso_sum({restrict_family(D4(0), 3), ein_sphere(2, 3)}); };
            break;
        case 7:
            I.recipe = "spinor sphere n=8 in R^{7,8}";
            I.build = [] { return spinor_sphere(8, 7); };
            break;
        case 8:
            I.recipe = "spinor D8 via D2n -> B2n";
            I.build = [] { return B8(0); };
            break;
        case 9:
            I.query.theta = theta_without(full, {9});
            I.recipe = "B8 sphere in R^{8,9} + R^{1,1}";
            I.build = [] { return extend(B8(0), 1, 1); };
            break;
        case 10:
            I.query.theta = theta_without(full, {10});
            I.recipe = "equatorial D8 sphere (+)_iso null lines of R^{2,3}";
            I.build = [] { return iso_sum({restrict_family(D8(0), 3), ein_sphere(2, 3)}); };
            break;
        case 11:
            I.recipe = "D4 (+) D4 (+) B3 in R^{11,12}";
            I.build = [] { return iso_sum({D4(1), D4(2), B3(3)}); };
            break;
        case 12:
            I.recipe = "D4 (+) D4 (+) B4 in R^{12,13}";
            I.build = [] { return iso_sum({D4(1), D4(2), B4(3)}); };
            break;
        default: return std::nullopt;
        }
    } else if (t == CartanType::D) {
        switch (r) {
        case 4:
            I.recipe = "spinor sphere n=4 in R^{4,4}";
            I.build = [] { return D4(0); };
            break;
        case 5:
            I.recipe = "D4 -> B4 -> D5";
            I.build = [] { return embed_family(B4(0), Embedding::Bn_Dn1); };
            break;
        case 6:
            I.query.theta.plus = I.query.theta.minus = false;
            I.recipe = "D4 sphere in R^{4,4} + R^{2,2}";
            I.build = [] { return extend(D4(0), 2, 2); };
            break;
        case 7:
            I.recipe = "B3 in R^{3,4} (+)_iso sign-swapped B3 in R^{4,3}";
            I.build = [] { return iso_sum({B3(1), swapped(B3(2))}); };
            break;
        case 8:
            I.recipe = "spinor sphere n=8 in R^{8,8}";
            I.build = [] { return D8(0); };
            break;
        case 9:
            I.recipe = "D8 -> B8 -> D9";
            I.build = [] { return embed_family(B8(0), Embedding::Bn_Dn1); };
            break;
        case 10:
            I.query.theta.plus = I.query.theta.minus = false;
            I.recipe = "D8 sphere in R^{8,8} + R^{2,2}";
            I.build = [] { return extend(D8(0), 2, 2); };
            break;
        case 11:
            I.recipe = "D4 (+) B3 (+) sign-swapped B3";
            I.build = [] { return iso_sum({D4(1), B3(2), swapped(B3(3))}); };
            break;
        case 12:
            I.recipe = "D4 (+) D4 (+) D4";
            I.build = [] { return iso_sum({D4(1), D4(2), D4(3)}); };
            break;
        default: return std::nullopt;
        }
    } else {
        return std::nullopt;
    }
    const ClassificationRow row = classify(I.query);
    if (!row.sphere_dim) throw std::logic_error("table_instance: verdict has no sphere for " + to_string(t));
    I.sphere_dim = *row.sphere_dim;
    return I;
}

std::vector<TableInstance> table_instances(int cap)
{
    std::vector<TableInstance> out;
    for (CartanType t : {CartanType::A, CartanType::B, CartanType::D})
        for (int r = 1; r <= cap; ++r)
            if (auto I = table_instance(t, r)) out.push_back(std::move(*I));
    return out;
}

bool theta_matches_family(const ClassificationQuery& q, const SphereFamily& F)
{
    std::set<int> idx(F.theta.begin(), F.theta.end());
    switch (q.type) {
    case CartanType::A:
        return F.target.kind == FlagKind::A && F.target.p == q.rank_param && idx == q.theta.nodes;
    case CartanType::B:
        return F.target.kind == FlagKind::B && F.target.p == q.rank_param && idx == q.theta.nodes;
    case CartanType::D: {
        const int p = q.rank_param;
        if (F.target.kind != FlagKind::D || F.target.p != p) return false;
        std::set<int> low;
        for (int v : idx)
            if (v <= p - 2) low.insert(v);
        if (low != q.theta.nodes) return false;
        // p+ and p- nodes: the (p-1)-plane, or the top plane, is carried.
        const bool top = idx.count(p - 1) || idx.count(p);
        return top == (q.theta.plus || q.theta.minus);
    }
    default: return false;
    }
}

}  // namespace flagtrans
