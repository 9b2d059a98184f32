#pragma once

#include "flagtrans/spheres.hpp"

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace flagtrans {

enum class CartanType { A, B, C, D, G2, F4, E6, E7, E8 };
std::string to_string(CartanType t);
CartanType cartan_type_from_string(const std::string& s);

// Simple-root labels. Type D keeps p+ / p- as flags; everything else is an integer node.
struct Theta {
    std::set<int> nodes;
    bool plus = false;
    bool minus = false;

    bool empty() const { return nodes.empty() && !plus && !minus; }
    bool operator==(const Theta&) const = default;
};

// rank_param: d for type A (the group is SL(d)), p for B/D, n for C, ignored for exceptional types.
struct ClassificationQuery {
    CartanType type = CartanType::A;
    int rank_param = 0;
    Theta theta;
};

int dynkin_rank(CartanType t, int rank_param);
Theta full_theta(CartanType t, int rank_param);
// "full", or comma separated nodes; type D accepts "<p>+" and "<p>-".
Theta parse_theta(const std::string& s, CartanType t, int rank_param);
std::string format_theta(const Theta& th, CartanType t, int rank_param);

// Throws std::invalid_argument on bad rank, out-of-range nodes or a theta that is
// not fixed by the opposition involution.
void check_query(const ClassificationQuery& q);

struct ClassificationRow {
    bool circles_locally_max = false;
    std::optional<int> sphere_dim;   // dimension of a constructible transverse sphere
    bool sphere_maximal = false;     // the construction is maximally transverse in the full flag manifold
    std::string rule;                // which table line / residue clause fired
    std::vector<std::string> citations;
};

ClassificationRow classify(const ClassificationQuery& q);

// The classification table, one entry per line, as plain strings.
struct TableLine {
    std::string type;
    std::string type_range;  // where the family starts, e.g. "n >= 4"
    std::string rank_condition;
    std::string positive_theta;  // theta giving locally maximal circles
};
const std::vector<TableLine>& table_lines();

// Radon-Hurwitz best exponent choice: max over 2^j | m, j >= 2, of rho(2^j) - 1.
int best_power_sphere(int m);

// A concrete A/B/D instance backing a "sphere exists" verdict.
struct TableInstance {
    ClassificationQuery query;
    int sphere_dim = 0;
    std::string recipe;
    std::function<SphereFamily()> build;
};

// One instance per rank parameter up to cap (A: d <= cap, B: p <= cap, D: 4 <= p <= cap),
// skipping ranks where every self-opposite theta has maximal circles.
std::vector<TableInstance> table_instances(int cap);
std::optional<TableInstance> table_instance(CartanType t, int rank_param);

// Does the family's flag index set realize this theta?
bool theta_matches_family(const ClassificationQuery& q, const SphereFamily& F);

}  // namespace flagtrans
