#include "fqg/io.hpp"

#include <fstream>
#include <sstream>

namespace fqg {

json cyclo_to_json(const CycloNum& x) {
  if (x.is_rational()) return x.to_rational().str();
  json coeffs = json::array();
  for (const auto& c : x.coeffs()) coeffs.push_back(c.str());
  return json{{"m", x.conductor()}, {"coeffs", coeffs}};
}

namespace {

// Fixture conductors stay small; the interned power tables grow linearly in m.
constexpr std::uint32_t kFixtureConductorLimit = 1U << 14;

}  // namespace

CycloNum cyclo_from_json(const json& j) {
  try {
    if (j.is_string()) return CycloNum(Rational::parse(j.get<std::string>()));
    if (j.is_number_integer()) return CycloNum(j.get<std::int64_t>());
    if (j.is_object()) {
      const auto m = j.at("m").get<std::uint32_t>();
      if (m == 0 || m > kFixtureConductorLimit) throw FormatError("conductor out of range: " + std::to_string(m));
      std::vector<Rational> coeffs;
      for (const auto& c : j.at("coeffs")) coeffs.push_back(Rational::parse(c.get<std::string>()));
      return CycloNum::from_coeffs(m, coeffs);
    }
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(std::string("bad number encoding: ") + e.what());
  }
  throw FormatError("bad number encoding: " + j.dump());
}

namespace {

Index get_index(const json& j, std::size_t dim, const char* what) {
  if (!j.is_number_integer()) throw FormatError(std::string(what) + ": index must be an integer");
  const auto v = j.get<std::int64_t>();
  if (v < 0 || static_cast<std::size_t>(v) >= dim)
    throw FormatError(std::string(what) + ": index " + std::to_string(v) + " out of range");
  return static_cast<Index>(v);
}

const json& section(const json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("missing section \"") + key + "\"");
  const json& s = j.at(key);
  if (!s.is_array()) throw FormatError(std::string("section \"") + key + "\" must be an array");
  return s;
}

void expect_arity(const json& e, std::size_t n, const char* what) {
  if (!e.is_array() || e.size() != n)
    throw FormatError(std::string(what) + ": entries must have " + std::to_string(n) + " fields");
}

json terms_to_json(Index k, const Terms& t) {
  json out = json::array();
  for (const auto& [i, c] : t) out.push_back(json::array({k, i, cyclo_to_json(c)}));
  return out;
}

}  // namespace

json algebra_to_json(const Algebra& A) {
  json j;
  j["dim"] = A.dim();
  j["labels"] = A.labels();
  j["m"] = A.conductor();
  json mult = json::array();
  A.structure().for_each_constant([&](Index i, Index jj, Index k, const CycloNum& c) {
    mult.push_back(json::array({i, jj, k, cyclo_to_json(c)}));
  });
  j["mult"] = std::move(mult);
  json unit = json::array();
  for (const auto& [i, c] : A.unit()) unit.push_back(json::array({i, cyclo_to_json(c)}));
  j["unit"] = std::move(unit);
  json star = json::array();
  for (Index i = 0; i < A.dim(); ++i)
    for (auto& e : terms_to_json(i, A.star_basis(i))) star.push_back(std::move(e));
  j["star"] = std::move(star);
  return j;
}

Algebra algebra_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("fixture must be a JSON object");
  std::size_t dim = 0;
  std::uint32_t m = 1;
  std::vector<std::string> labels;
  try {
    dim = j.at("dim").get<std::size_t>();
    m = j.at("m").get<std::uint32_t>();
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  } catch (const std::exception& e) {
    throw FormatError(std::string("bad algebra header: ") + e.what());
  }
  if (dim == 0 || dim > 4096) throw FormatError("dimension out of supported range");
  if (m == 0 || m > kFixtureConductorLimit) throw FormatError("conductor out of range");
  if (!labels.empty() && labels.size() != dim) throw FormatError("label count does not match dimension");

  std::vector<Algebra::Constant> constants;
  for (const auto& e : section(j, "mult")) {
    expect_arity(e, 4, "mult");
    constants.push_back({get_index(e[0], dim, "mult"), get_index(e[1], dim, "mult"), get_index(e[2], dim, "mult"),
                         cyclo_from_json(e[3])});
  }
  Terms unit;
  for (const auto& e : section(j, "unit")) {
    expect_arity(e, 2, "unit");
    unit.emplace_back(get_index(e[0], dim, "unit"), cyclo_from_json(e[1]));
  }
  std::vector<Terms> star(dim);
  for (const auto& e : section(j, "star")) {
    expect_arity(e, 3, "star");
    star[get_index(e[0], dim, "star")].emplace_back(get_index(e[1], dim, "star"), cyclo_from_json(e[2]));
  }
  try {
    return Algebra::from_constants(dim, std::move(labels), m, constants, std::move(unit), std::move(star));
  } catch (const std::logic_error& e) {
    throw FormatError(std::string("inconsistent algebra: ") + e.what());
  } catch (const std::overflow_error& e) {
    throw FormatError(std::string("inconsistent algebra: ") + e.what());
  }
}

json group_to_json(const QuantumGroup& G) {
  json j = algebra_to_json(G.algebra());
  const auto d = static_cast<Index>(G.dim());
  j["name"] = G.name();
  json delta = json::array();
  for (Index k = 0; k < d; ++k)
    for (const auto& [t, c] : G.delta_basis(k)) delta.push_back(json::array({k, t / d, t % d, cyclo_to_json(c)}));
  j["delta"] = std::move(delta);
  json counit = json::array();
  json haar = json::array();
  for (Index i = 0; i < d; ++i) {
    if (!G.counit_weights()[i].is_zero()) counit.push_back(json::array({i, cyclo_to_json(G.counit_weights()[i])}));
    if (!G.haar_weights()[i].is_zero()) haar.push_back(json::array({i, cyclo_to_json(G.haar_weights()[i])}));
  }
  j["counit"] = std::move(counit);
  j["haar"] = std::move(haar);
  json antipode = json::array();
  for (Index k = 0; k < d; ++k)
    for (auto& e : terms_to_json(k, G.antipode_columns()[k])) antipode.push_back(std::move(e));
  j["antipode"] = std::move(antipode);
  return j;
}

namespace {

QuantumGroup group_from_json_unchecked(const json& j) {
  const Algebra A = algebra_from_json(j);
  const std::size_t d = A.dim();
  auto cols = std::make_shared<std::vector<Terms>>(d);
  for (const auto& e : section(j, "delta")) {
    expect_arity(e, 4, "delta");
    const Index k = get_index(e[0], d, "delta");
    const Index i = get_index(e[1], d, "delta");
    const Index jj = get_index(e[2], d, "delta");
    (*cols)[k].emplace_back(static_cast<Index>(i * d + jj), cyclo_from_json(e[3]));
  }
  std::vector<CycloNum> counit(d), haar(d);
  for (const auto& e : section(j, "counit")) {
    expect_arity(e, 2, "counit");
    counit[get_index(e[0], d, "counit")] += cyclo_from_json(e[1]);
  }
  for (const auto& e : section(j, "haar")) {
    expect_arity(e, 2, "haar");
    haar[get_index(e[0], d, "haar")] += cyclo_from_json(e[1]);
  }
  std::vector<Terms> antipode(d);
  for (const auto& e : section(j, "antipode")) {
    expect_arity(e, 3, "antipode");
    antipode[get_index(e[0], d, "antipode")].emplace_back(get_index(e[1], d, "antipode"), cyclo_from_json(e[2]));
  }
  for (auto& a : antipode) a = sparse::normalize(std::move(a));
  for (auto& c : *cols) c = sparse::normalize(std::move(c));
  std::string name = "file";
  if (j.contains("name") && j.at("name").is_string()) name = j.at("name").get<std::string>();
  auto fn = [cols](Index k) { return (*cols)[k]; };
  return QuantumGroup(name, Family::kGeneric, 0, A, fn, std::move(counit), std::move(antipode), std::move(haar));
}

}  // namespace

QuantumGroup group_from_json(const json& j) {
  try {
    return group_from_json_unchecked(j);
  } catch (const FormatError&) {
    throw;
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad fixture field: ") + e.what());
  } catch (const std::logic_error& e) {
    throw FormatError(std::string("inconsistent fixture: ") + e.what());
  } catch (const std::overflow_error& e) {
    throw FormatError(std::string("inconsistent fixture: ") + e.what());
  }
}

QuantumGroup load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open fixture file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw FormatError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return group_from_json(j);
}

void save_group_file(const QuantumGroup& G, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << group_to_json(G).dump(1) << "\n";
}

}  // namespace fqg
