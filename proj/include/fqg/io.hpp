#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "fqg/qgroup.hpp"

namespace fqg {

using json = nlohmann::json;

/// Malformed fixture or value encoding.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rational as "p/q"; other numbers as {"m": conductor, "coeffs": ["p/q", ...]}.
json cyclo_to_json(const CycloNum& x);
/// Accepts both encodings above; throws FormatError.
CycloNum cyclo_from_json(const json& j);

/// {"dim", "labels", "mult": [[i,j,k,c]...], "unit": [[i,c]...], "star": [[i,k,c]...], "m"}
json algebra_to_json(const Algebra& A);
Algebra algebra_from_json(const json& j);

/// Algebra fixture plus "delta": [[k,i,j,c]...] (Delta(b_k) contains c b_i (x) b_j),
/// "counit": [[i,c]...], "antipode": [[k,i,c]...] (S(b_k) contains c b_i),
/// "haar": [[i,c]...] and a "name".
json group_to_json(const QuantumGroup& G);
QuantumGroup group_from_json(const json& j);

QuantumGroup load_group_file(const std::string& path);
void save_group_file(const QuantumGroup& G, const std::string& path);

}  // namespace fqg
