#pragma once

#include "flagtrans/algebra.hpp"
#include "flagtrans/clifford.hpp"
#include "flagtrans/spheres.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>

namespace flagtrans {

using Json = nlohmann::json;

// Sorted keys, two-space indent, doubles as %.17g, trailing newline.
std::string canonical_dump(const Json& j);

Json to_json(const BilinearForm& f);
BilinearForm form_from_json(const Json& j);
Json to_json(const Subspace& S);  // {"ambient_dim", "columns"}, column-major
Subspace subspace_from_json(const Json& j);
Json to_json(const Flag& F);
Flag flag_from_json(const Json& j);
Json to_json(const AlgebraElement& x);
AlgebraElement algebra_element_from_json(const Json& j);
Json to_json(const CliffordRep& rep);  // dense generators, only sensible for small D

// {"construction": tag, "n": int, "params": {...}, "seed": int}
struct FamilyDescriptor {
    std::string construction;
    int n = 0;
    Json params = Json::object();
    std::uint64_t seed = 0;
};

Json to_json(const FamilyDescriptor& d);
FamilyDescriptor descriptor_from_json(const Json& j);
// "n=4,p=4" style; integers stay integers, anything else is a string.
Json parse_params(const std::string& s);

// Throws std::invalid_argument for unknown constructions or bad params.
SphereFamily resolve(const FamilyDescriptor& d);

// Cross-product structure constants c_ijk (x_i cross x_j = sum_k c_ijk x_k) in the graded basis, as CSV.
std::string cross_constants_csv();

}  // namespace flagtrans
