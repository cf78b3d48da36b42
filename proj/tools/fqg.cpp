#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>

#include "fqg/io.hpp"
#include "fqg/moments.hpp"
#include "fqg/suites.hpp"

using namespace fqg;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { kHuman, kJson, kCsv };

struct Common {
  std::string group = "kp";
  std::string from_file;
  std::string format = "human";
  std::string out;
};

Format parse_format(const std::string& f) {
  if (f == "human") return Format::kHuman;
  if (f == "json") return Format::kJson;
  if (f == "csv") return Format::kCsv;
  throw UsageError("unknown format: " + f);
}

Index parse_index(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("bad " + what + ": " + s);
  }
  if (pos != s.size() || v < 2 || v > 100000) throw UsageError("bad " + what + ": " + s);
  return static_cast<Index>(v);
}

/// kp | sekine:n | dual-sekine:n | file:path
QuantumGroup load_group(const Common& c) {
  if (!c.from_file.empty()) return load_group_file(c.from_file);
  const std::string& g = c.group;
  if (g == "kp") return build_kp();
  if (g.rfind("sekine:", 0) == 0) return build_sekine(parse_index(g.substr(7), "Sekine parameter"));
  if (g.rfind("dual-sekine:", 0) == 0) return dual(build_sekine(parse_index(g.substr(12), "Sekine parameter")));
  if (g.rfind("file:", 0) == 0) return load_group_file(g.substr(5));
  throw UsageError("unknown group selector: " + g);
}

std::vector<std::int64_t> parse_ints(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    try {
      out.push_back(std::stoll(item, &pos));
    } catch (const std::exception&) {
      throw UsageError("bad integer list: " + s);
    }
    if (pos != item.size()) throw UsageError("bad integer list: " + s);
  }
  return out;
}

/// "fundamental", "X(a,j)" (Kac-Paljutkin), "X(u,v)" (Sekine) or a catalog label.
Corep find_rep(const QuantumGroup& G, const std::string& label) {
  static const std::regex pair(R"(X\((-?\d+),(-?\d+)\))");
  std::smatch m;
  if (G.family() == Family::kKacPaljutkin) {
    if (label == "fundamental" || label == "X") return kp_fundamental(G, 1, 1);
    if (std::regex_match(label, m, pair)) {
      const int a = std::stoi(m[1]), j = std::stoi(m[2]);
      if (a != 1 && a != -1) throw UsageError("sign must be 1 or -1 in " + label);
      return kp_fundamental(G, a, ((j % 8) + 8) % 8);
    }
  }
  if (G.family() == Family::kSekine && std::regex_match(label, m, pair))
    return sekine_two_dim(G, std::stoll(m[1]), std::stoll(m[2]), false);
  if (G.family() == Family::kDualSekine && (label == "fundamental" || label == "Xhat")) return dual_fundamental(G);
  if (G.family() == Family::kGeneric) throw UsageError("representations are not available for fixture groups");
  for (auto& U : irrep_catalog(G).irreps)
    if (U.label == label) return U;
  throw UsageError("unknown representation label: " + label);
}

std::string char_name(const std::string& rep, unsigned power) {
  return "chi(" + rep + (power == 1 ? "" : "^" + std::to_string(power)) + ")";
}

/// chi(U^k), optionally divided by the dimension of U.
AlgElement character(const QuantumGroup& G, const std::string& rep, unsigned power, bool normalized) {
  const Corep U = find_rep(G, rep);
  AlgElement x = corep_trace(corep_power(U, power));
  if (normalized) x *= CycloNum(Rational(1, static_cast<std::int64_t>(U.d)));
  return x;
}

/// Law grammar: "mu0|mu1|mu2|mu4", "arcsine", "dirac:x", "c-arcsine:a", "circle:r",
/// "dual:n,k", "sekine-limit:u,k", or a sum "w@law+w@law" with rational weights.
RefDist parse_law(const std::string& s) {
  if (s.find('+') != std::string::npos || s.find('@') != std::string::npos) {
    std::vector<std::pair<Rational, RefDist>> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, '+')) {
      const auto at = item.find('@');
      if (at == std::string::npos) throw UsageError("mixture terms need weight@law: " + item);
      try {
        parts.emplace_back(Rational::parse(item.substr(0, at)), parse_law(item.substr(at + 1)));
      } catch (const std::invalid_argument&) {
        throw UsageError("bad weight in " + item);
      }
    }
    return RefDist::mixture(std::move(parts));
  }
  auto arg = [&](std::size_t prefix) {
    try {
      return Rational::parse(s.substr(prefix));
    } catch (const std::invalid_argument&) {
      throw UsageError("bad law parameter: " + s);
    }
  };
  if (s == "mu0") return RefDist::kp_law(0);
  if (s == "mu1") return RefDist::kp_law(1);
  if (s == "mu2") return RefDist::kp_law(2);
  if (s == "mu4") return RefDist::kp_law(4);
  if (s == "arcsine") return RefDist::arcsine();
  if (s.rfind("dirac:", 0) == 0) return RefDist::dirac(arg(6));
  if (s.rfind("c-arcsine:", 0) == 0) return RefDist::c_arcsine(arg(10));
  if (s.rfind("circle:", 0) == 0) return RefDist::uniform_circle(arg(7));
  if (s.rfind("dual:", 0) == 0) {
    const auto v = parse_ints(s.substr(5));
    if (v.size() != 2 || v[0] < 1 || v[1] < 1) throw UsageError("dual law needs n,k: " + s);
    return RefDist::dual_normalized(static_cast<Index>(v[0]), static_cast<unsigned>(v[1]));
  }
  if (s.rfind("sekine-limit:", 0) == 0) {
    const auto v = parse_ints(s.substr(13));
    if (v.size() != 2 || v[1] < 1) throw UsageError("sekine-limit needs u,k: " + s);
    const Rational h(1, 2);
    if (v[1] % 2 == 1)
      return v[0] == 0 ? RefDist::mixture({{h, RefDist::dirac(0)}, {h, RefDist::arcsine()}})
                       : RefDist::mixture({{h, RefDist::dirac(0)}, {h, RefDist::c_arcsine(2)}});
    return v[0] == 0 ? RefDist::mixture({{h, RefDist::dirac(2)}, {h, RefDist::arcsine()}})
                     : RefDist::mixture({{h, RefDist::uniform_circle(2)}, {h, RefDist::c_arcsine(2)}});
  }
  throw UsageError("unknown law: " + s);
}

std::string approx(const CycloNum& x) {
  const auto z = x.embed();
  std::ostringstream os;
  os << std::setprecision(10) << z.real();
  if (std::abs(z.imag()) > 1e-12) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

json report_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"status", c.skipped ? "skipped" : c.passed ? "pass" : "fail"},
                      {"detail", c.detail}});
  return {{"subject", r.subject}, {"passed", r.passed()}, {"checks", checks}};
}

std::string report_csv(const std::vector<Report>& reports) {
  std::ostringstream os;
  os << "subject,check,status,detail\n";
  for (const auto& r : reports)
    for (const auto& c : r.checks)
      os << r.subject << ",\"" << c.name << "\"," << (c.skipped ? "skipped" : c.passed ? "pass" : "fail") << ",\""
         << c.detail << "\"\n";
  return os.str();
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file: " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit_json(Output& out, const json& j) { out.os() << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// Verbs

int cmd_verify(const Common& c, const std::string& export_path, bool cancellation) {
  const QuantumGroup G = load_group(c);
  std::vector<Report> reports{verify_hopf(G), verify_haar(G)};
  if (cancellation) reports.push_back(verify_cancellation(G));
  if (!export_path.empty()) save_group_file(G, export_path);
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed();
  Output out(c.out);
  switch (parse_format(c.format)) {
    case Format::kJson: {
      json list = json::array();
      for (const auto& r : reports) list.push_back(report_json(r));
      emit_json(out, {{"group", G.name()}, {"dim", G.dim()}, {"passed", ok}, {"reports", list}});
      break;
    }
    case Format::kCsv:
      out.os() << report_csv(reports);
      break;
    case Format::kHuman:
      out.os() << G.name() << " (dim " << G.dim() << ")\n";
      for (const auto& r : reports) out.os() << r.str();
      out.os() << (ok ? "all checks pass" : "verification FAILED") << "\n";
  }
  return ok ? kOk : kCheckFailed;
}

int cmd_irreps(const Common& c) {
  const QuantumGroup G = load_group(c);
  if (G.family() == Family::kGeneric) throw UsageError("irreducible catalogs need kp, sekine:n or dual-sekine:n");
  const IrrepCatalog cat = irrep_catalog(G);
  const Report r = verify_complete(G, cat);
  Output out(c.out);
  switch (parse_format(c.format)) {
    case Format::kJson:
      emit_json(out, {{"group", G.name()}, {"irreps", catalog_to_json(cat)}, {"report", report_json(r)}});
      break;
    case Format::kCsv:
      out.os() << "label,d,character\n";
      for (const auto& U : cat.irreps) out.os() << U.label << "," << U.d << ",\"" << corep_trace(U).str() << "\"\n";
      break;
    case Format::kHuman: {
      std::size_t sum = 0;
      for (const auto& U : cat.irreps) {
        out.os() << std::left << std::setw(12) << U.label << " d=" << U.d << "  chi = " << corep_trace(U).str() << "\n";
        sum += U.d * U.d;
      }
      out.os() << cat.irreps.size() << " irreducibles, sum of d^2 = " << sum << " (dim " << G.dim() << ")\n"
               << r.str();
    }
  }
  return r.passed() ? kOk : kCheckFailed;
}

int cmd_moments(const Common& c, const std::string& rep, unsigned power, unsigned max_order, bool normalized) {
  const QuantumGroup G = load_group(c);
  const std::string name = (normalized ? "(1/d) " : "") + char_name(rep, power);
  const MomentTable t = star_moments(G, character(G, rep, power, normalized), max_order, name);
  Output out(c.out);
  switch (parse_format(c.format)) {
    case Format::kJson:
      emit_json(out, moment_table_to_json(t));
      break;
    case Format::kCsv:
      out.os() << moment_table_to_csv(t);
      break;
    case Format::kHuman:
      out.os() << G.name() << ": moments of " << name << " up to order " << max_order
               << (t.normal ? " (normal element)" : "") << "\n";
      for (const auto& e : t.entries)
        out.os() << std::left << std::setw(std::max<int>(8, static_cast<int>(max_order) * 2 + 2)) << word_str(e.word)
                 << e.value.str() << "  (~" << approx(e.value) << ")\n";
  }
  return kOk;
}

int cmd_cumulants(const Common& c, const std::string& rep, const std::string& powers) {
  const QuantumGroup G = load_group(c);
  std::vector<AlgElement> els;
  std::vector<std::string> names;
  std::stringstream ss(powers);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const bool star = !item.empty() && item.back() == '*';
    if (star) item.pop_back();
    const auto k = parse_ints(item);
    if (k.size() != 1 || k[0] < 0) throw UsageError("bad power: " + item);
    AlgElement x = character(G, rep, static_cast<unsigned>(k[0]), false);
    els.push_back(star ? x.star() : x);
    names.push_back(char_name(rep, static_cast<unsigned>(k[0])) + (star ? "*" : ""));
  }
  if (els.size() < 2) throw UsageError("--powers needs at least two entries");
  const CycloNum kappa = cumulant(G, els);
  const std::string verdict = kappa.is_zero() ? "independent" : "not independent";
  Output out(c.out);
  switch (parse_format(c.format)) {
    case Format::kJson:
      emit_json(out, {{"group", G.name()}, {"elements", names}, {"cumulant", moment_value_json(kappa)},
                      {"verdict", verdict}});
      break;
    case Format::kCsv:
      out.os() << "elements,cumulant,verdict\n\"";
      for (std::size_t i = 0; i < names.size(); ++i) out.os() << (i ? " " : "") << names[i];
      out.os() << "\",\"" << kappa.str() << "\"," << verdict << "\n";
      break;
    case Format::kHuman:
      out.os() << "cumulant(";
      for (std::size_t i = 0; i < names.size(); ++i) out.os() << (i ? ", " : "") << names[i];
      out.os() << ") = " << kappa.str() << "\n" << verdict << "\n";
  }
  return kOk;
}

int cmd_match(const Common& c, const std::string& rep, unsigned power, unsigned max_order, bool normalized,
              const std::string& law, double tol) {
  const QuantumGroup G = load_group(c);
  const RefDist d = parse_law(law);
  const std::string name = (normalized ? "(1/d) " : "") + char_name(rep, power);
  const MomentTable t = star_moments(G, character(G, rep, power, normalized), max_order, name);
  const MatchReport m = match_distribution(t, d, max_order, tol);
  Output out(c.out);
  switch (parse_format(c.format)) {
    case Format::kJson: {
      json words = json::array();
      for (const auto& w : m.words)
        words.push_back({{"word", word_str(w.word)}, {"value", moment_value_json(w.value)},
                         {"expected", moment_value_json(w.expected)}, {"deviation", w.deviation}, {"ok", w.ok}});
      emit_json(out, {{"group", G.name()}, {"element", m.element}, {"law", m.law}, {"matched", m.matched},
                      {"worst", m.worst}, {"words", words}});
      break;
    }
    case Format::kCsv:
      out.os() << "word,value,expected,deviation,ok\n";
      for (const auto& w : m.words)
        out.os() << word_str(w.word) << ",\"" << w.value.str() << "\",\"" << w.expected.str() << "\"," << w.deviation
                 << "," << (w.ok ? "true" : "false") << "\n";
      break;
    case Format::kHuman:
      for (const auto& w : m.words)
        if (!w.ok)
          out.os() << "word " << word_str(w.word) << ": " << w.value.str() << " vs " << w.expected.str() << "\n";
      out.os() << m.str() << "\n";
  }
  return m.matched ? kOk : kCheckFailed;
}

int cmd_spectrum(const Common& c, const std::string& rep, unsigned power, bool normalized) {
  const QuantumGroup G = load_group(c);
  const Spectrum s = spectrum(character(G, rep, power, normalized));
  Output out(c.out);
  switch (parse_format(c.format)) {
    case Format::kJson: {
      json list = json::array();
      for (const auto& [z, m] : s.merged) list.push_back({{"re", z.real()}, {"im", z.imag()}, {"multiplicity", m}});
      emit_json(out, {{"group", G.name()}, {"element", char_name(rep, power)}, {"normal", s.normal}, {"eigenvalues", list}});
      break;
    }
    case Format::kCsv:
      out.os() << "re,im,multiplicity\n" << std::setprecision(12);
      for (const auto& [z, m] : s.merged) out.os() << z.real() << "," << z.imag() << "," << m << "\n";
      break;
    case Format::kHuman:
      out.os() << "spectrum of " << char_name(rep, power) << " in " << G.name() << "\n" << std::setprecision(10);
      for (const auto& [z, m] : s.merged)
        out.os() << "  " << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i  x" << m << "\n";
  }
  return kOk;
}

int cmd_omega(const Common& c, unsigned max_degree) {
  const QuantumGroup G = load_group(c);
  if (G.family() != Family::kSekine) throw UsageError("omega needs a sekine:n group");
  const OmegaSpace om = omega_space(G);
  const OmegaCheck ch = omega_reproduce(G, om, max_degree);
  const auto spectra = omega_spectra(G);
  bool spectra_ok = true;
  for (const auto& s : spectra) spectra_ok = spectra_ok && s.ok;
  const bool ok = om.idempotents_ok && om.total_mass == Rational(1) && ch.mismatches == 0 && spectra_ok;
  const Rational uniform = omega_uniform_weight(G.param());
  Output out(c.out);
  switch (parse_format(c.format)) {
    case Format::kJson: {
      json pts = json::array();
      for (const auto& p : om.points)
        pts.push_back({{"a", moment_value_json(p.a)}, {"b", p.b}, {"c", moment_value_json(p.c)},
                       {"weight", p.weight.str()}});
      json sp = json::array();
      for (const auto& s : spectra) sp.push_back({{"element", s.element}, {"ok", s.ok}, {"worst", s.worst}});
      emit_json(out, {{"group", G.name()}, {"points", pts}, {"total_mass", om.total_mass.str()},
                      {"idempotents_ok", om.idempotents_ok}, {"monomials", ch.monomials.size()},
                      {"haar_mismatches", ch.mismatches}, {"uniform_weight", uniform.str()},
                      {"uniform_mismatches", ch.uniform_mismatches}, {"spectra", sp}, {"passed", ok}});
      break;
    }
    case Format::kCsv:
      out.os() << "a,b,c,weight\n";
      for (const auto& p : om.points)
        out.os() << "\"" << p.a.str() << "\"," << p.b << ",\"" << p.c.str() << "\"," << p.weight.str() << "\n";
      break;
    case Format::kHuman:
      out.os() << G.name() << ": " << om.points.size() << " points (rho1-, b, chi(X(0,1))), total mass "
               << om.total_mass.str() << "\n";
      for (const auto& p : om.points)
        out.os() << "  (" << approx(p.a) << ", " << p.b << ", " << approx(p.c) << ")  weight " << p.weight.str() << "\n";
      out.os() << "Haar reproduced on " << ch.monomials.size() - ch.mismatches << "/" << ch.monomials.size()
               << " monomials of degree <= " << max_degree << "\n";
      for (const auto& s : spectra) out.os() << "spectrum " << s.element << ": " << (s.ok ? "ok" : "MISMATCH") << "\n";
      out.os() << "uniform b=1 weight " << uniform.str() << " disagrees on " << ch.uniform_mismatches << "/"
               << ch.monomials.size() << " monomials\n";
  }
  return ok ? kOk : kCheckFailed;
}

int cmd_dual(const Common& c, const std::string& export_path) {
  const QuantumGroup G = load_group(c);
  const QuantumGroup D = dual(G);
  std::vector<Report> reports{verify_hopf(D), verify_haar(D)};
  if (!export_path.empty()) save_group_file(D, export_path);
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed();
  Output out(c.out);
  switch (parse_format(c.format)) {
    case Format::kJson: {
      json list = json::array();
      for (const auto& r : reports) list.push_back(report_json(r));
      emit_json(out, {{"group", D.name()}, {"dim", D.dim()}, {"passed", ok}, {"reports", list}});
      break;
    }
    case Format::kCsv:
      out.os() << report_csv(reports);
      break;
    case Format::kHuman:
      out.os() << D.name() << " (dim " << D.dim() << ", cocommutative " << (verify_cocommutative(D) ? "yes" : "no")
               << ")\n";
      for (const auto& r : reports) out.os() << r.str();
  }
  return ok ? kOk : kCheckFailed;
}

int cmd_scan(const Common& c, const std::string& family, const std::string& law, const std::string& ns,
             unsigned max_order) {
  FamilySpec f;
  try {
    f = FamilySpec::parse(family);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::vector<Index> list;
  for (auto v : parse_ints(ns)) {
    if (v < 2) throw UsageError("n values must be >= 2");
    list.push_back(static_cast<Index>(v));
  }
  const RefDist d = law.empty() ? (f.kind == FamilySpec::Kind::kSekineChar ? parse_law("sekine-limit:" + std::to_string(f.u) + "," + std::to_string(f.k))
                                                                          : throw UsageError("dual families need --law"))
                                : parse_law(law);
  const ScanReport rep = asymptotic_scan(f, d, max_order, list);
  Output out(c.out);
  switch (parse_format(c.format)) {
    case Format::kJson: {
      json rows = json::array();
      for (const auto& r : rep.rows)
        rows.push_back({{"n", r.n}, {"word", word_str(r.word)}, {"value", moment_value_json(r.value)},
                        {"limit", moment_value_json(r.limit)}, {"deviation", r.deviation}});
      json first = json::object();
      for (const auto& [w, n] : rep.first_exact) first[word_str(w)] = n ? json(*n) : json(nullptr);
      emit_json(out, {{"family", f.str()}, {"law", rep.law}, {"rows", rows}, {"first_exact", first}});
      break;
    }
    case Format::kCsv:
      out.os() << rep.csv();
      break;
    case Format::kHuman:
      out.os() << f.str() << " vs " << rep.law << "\n";
      for (const auto& r : rep.rows)
        out.os() << "  n=" << std::setw(4) << r.n << "  " << std::left << std::setw(12) << word_str(r.word) << std::right
                 << " deviation " << r.deviation << "\n";
      for (const auto& [w, n] : rep.first_exact)
        out.os() << "word " << word_str(w) << ": " << (n ? "exact from n=" + std::to_string(*n) : "not exact") << "\n";
  }
  return kOk;
}

int cmd_paper_check(const Common& c, const std::vector<std::string>& ids) {
  std::vector<suites::Outcome> all;
  for (const auto& id : ids) {
    std::vector<suites::Outcome> got;
    try {
      got = suites::run_theorem(id);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    all.insert(all.end(), got.begin(), got.end());
  }
  bool ok = true;
  for (const auto& o : all) ok = ok && o.passed;
  Output out(c.out);
  switch (parse_format(c.format)) {
    case Format::kJson: {
      json list = json::array();
      for (const auto& o : all)
        list.push_back({{"criterion", o.criterion}, {"title", o.title}, {"passed", o.passed},
                        {"summary", o.summary}, {"details", o.details}});
      emit_json(out, {{"suites", list}, {"passed", ok}});
      break;
    }
    case Format::kCsv:
      out.os() << "criterion,title,status,summary\n";
      for (const auto& o : all)
        out.os() << o.criterion << ",\"" << o.title << "\"," << (o.passed ? "pass" : "fail") << ",\"" << o.summary
                 << "\"\n";
      break;
    case Format::kHuman:
      for (const auto& o : all) {
        out.os() << suites::format_line(o) << "\n";
        for (const auto& d : o.details) out.os() << "    " << d << "\n";
      }
  }
  return ok ? kOk : kCheckFailed;
}

bool positive_integer(const std::string& s) {
  return !s.empty() && s.size() < 19 && std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }) &&
         std::stoll(s) > 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification workbench for the Kac-Paljutkin and Sekine finite quantum groups"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  Common c;
  std::uint64_t max_conductor = 0;
  auto add_common = [&](CLI::App* sub, bool group = true) {
    if (group) {
      sub->add_option("--group,-g", c.group, "kp | sekine:n | dual-sekine:n | file:path")->capture_default_str();
      sub->add_option("--from-file", c.from_file, "Load the group from a JSON fixture");
    }
    sub->add_option("--format,-f", c.format, "human | json | csv")
        ->check(CLI::IsMember({"human", "json", "csv"}))
        ->capture_default_str();
    sub->add_option("--out,-o", c.out, "Write output to this file");
  };
  app.add_option("--max-conductor", max_conductor, "Override the cyclotomic conductor bound");

  std::string rep = "fundamental", powers, law, family, ns = "11,21,51,101", export_path;
  unsigned power = 1, max_order = 8, max_degree = 8;
  bool normalized = false, cancellation = true;
  double tol = 1e-9;
  std::vector<std::string> ids;

  auto* verify = app.add_subcommand("verify", "Check Hopf and Haar axioms exactly");
  add_common(verify);
  verify->add_option("--export", export_path, "Also write the group as a JSON fixture");
  verify->add_flag("!--no-cancellation", cancellation, "Skip the numerical cancellation ranks");

  auto* irreps = app.add_subcommand("irreps", "List irreducible corepresentations and check completeness");
  add_common(irreps);

  auto add_element = [&](CLI::App* sub) {
    sub->add_option("--rep,-r", rep, "fundamental, X(u,v), X(a,j) or a catalog label")->capture_default_str();
    sub->add_option("--power,-k", power, "Power of the representation")->capture_default_str();
    sub->add_flag("--normalized", normalized, "Divide the character by the representation dimension");
  };
  auto* moments = app.add_subcommand("moments", "Haar *-moments of a character");
  add_common(moments);
  add_element(moments);
  moments->add_option("--max-order", max_order, "Largest word length")->check(CLI::Range(1u, 16u))->capture_default_str();

  auto* cumulants = app.add_subcommand("cumulants", "Joint classical cumulant of character powers");
  add_common(cumulants);
  cumulants->add_option("--rep,-r", rep, "Representation label")->capture_default_str();
  cumulants->add_option("--powers", powers, "Comma-separated powers; suffix * for the adjoint")->required();

  auto* match = app.add_subcommand("match", "Compare a moment table with a reference law");
  add_common(match);
  add_element(match);
  match->add_option("--max-order", max_order, "Largest word length")->check(CLI::Range(1u, 16u))->capture_default_str();
  match->add_option("--law", law, "Reference law, e.g. mu1, sekine-limit:1,2, 1/2@dirac:0+1/2@arcsine")->required();
  match->add_option("--tol", tol, "Tolerance for irrational values")->capture_default_str();

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Eigenvalues of a character");
  add_common(spectrum_cmd);
  add_element(spectrum_cmd);

  auto* omega = app.add_subcommand("omega", "Gelfand points and weights of the Sekine character subalgebra");
  add_common(omega);
  omega->add_option("--max-degree", max_degree, "Largest monomial degree")->check(CLI::Range(1u, 12u))->capture_default_str();

  auto* dualc = app.add_subcommand("dual", "Build and verify the dual quantum group");
  add_common(dualc);
  dualc->add_option("--export", export_path, "Write the dual as a JSON fixture");

  auto* scan = app.add_subcommand("scan", "Moments of an element family across n");
  add_common(scan, false);
  scan->add_option("--family", family, "sekine-char:u,v,k or dual-normalized:k")->required();
  scan->add_option("--law", law, "Limit law (default: the Sekine limit law of the family)");
  scan->add_option("--ns", ns, "Comma-separated n values")->capture_default_str();
  scan->add_option("--max-order", max_order, "Largest word length")->check(CLI::Range(1u, 12u))->capture_default_str();

  auto* paper = app.add_subcommand("paper-check", "Run the acceptance suite behind a theorem id");
  add_common(paper, false);
  std::string id_help = "Theorem ids:";
  for (const auto& id : suites::theorem_ids()) id_help += " " + id;
  paper->add_option("ids", ids, id_help)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  for (const char* var : {"FQG_MAX_CONDUCTOR", "FQG_THREADS"}) {
    const char* v = std::getenv(var);
    if (v && !positive_integer(v)) {
      std::cerr << "error: " << var << " must be a positive integer, got '" << v << "'\n";
      return kUsage;
    }
  }

  try {
    if (max_conductor > 0) CycloField::set_max_conductor(max_conductor);
    if (*verify) return cmd_verify(c, export_path, cancellation);
    if (*irreps) return cmd_irreps(c);
    if (*moments) return cmd_moments(c, rep, power, max_order, normalized);
    if (*cumulants) return cmd_cumulants(c, rep, powers);
    if (*match) return cmd_match(c, rep, power, max_order, normalized, law, tol);
    if (*spectrum_cmd) return cmd_spectrum(c, rep, power, normalized);
    if (*omega) return cmd_omega(c, max_degree);
    if (*dualc) return cmd_dual(c, export_path);
    if (*scan) return cmd_scan(c, family, law, ns, max_order);
    if (*paper) return cmd_paper_check(c, ids);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const FormatError& e) {
    std::cerr << "error: malformed fixture: " << e.what() << "\n";
    return kUsage;
  } catch (const CommutationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
