#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sprimes/contractlab.hpp"
#include "sprimes/generators.hpp"
#include "sprimes/spectrum.hpp"
#include "sprimes/version.hpp"

using namespace sprimes;
using Json = nlohmann::ordered_json;

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Returned by a command when its answer is a mathematical "no".
constexpr int kFalse = 1;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

PartSize part_from_text(const std::string& raw) {
  std::string s = trim(raw);
  if (s == "inf" || s == "∞") return INF;
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size() || v <= 0) throw InputError("");
    return PartSize(static_cast<std::uint32_t>(v));
  } catch (const std::exception&) {
    throw InputError("bad part size '" + s + "'");
  }
}

std::uint32_t positive_from_text(const std::string& raw) {
  std::string s = trim(raw);
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size() || v <= 0) throw InputError("");
    return static_cast<std::uint32_t>(v);
  } catch (const std::exception&) {
    throw InputError("expected a positive integer, got '" + s + "'");
  }
}

std::vector<PartSize> parts_from_list(const std::string& s) {
  std::vector<PartSize> out;
  for (const auto& x : split(s, ',')) out.push_back(part_from_text(x));
  return out;
}

std::vector<std::uint32_t> positives_from_list(const std::string& s) {
  std::vector<std::uint32_t> out;
  for (const auto& x : split(s, ',')) out.push_back(positive_from_text(x));
  return out;
}

// "inf,1:2,1" -> parts (inf,1), weights (2,1); kept in the given order.
WeightedShape shape_arg(const std::string& text) {
  auto halves = split(text, ':');
  if (halves.size() != 2) throw InputError("shape '" + text + "' must look like LAMBDA:E, e.g. inf,1:2,1");
  WeightedShape s{parts_from_list(halves[0]), positives_from_list(halves[1])};
  s.validate();
  return s;
}

Json shape_json(const WeightedShape& s) {
  Json lam = Json::array(), e = Json::array();
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (s.is_inf(a))
      lam.push_back("inf");
    else
      lam.push_back(s.parts[a].value());
    e.push_back(s.weights[a]);
  }
  return Json{{"lambda", lam}, {"e", e}, {"text", s.to_string()}};
}

Json basis_json(const Ideal<Rational>& I, const Budget& budget) {
  Json a = Json::array();
  for (const auto& g : I.grevlex_basis(budget)->elements) a.push_back(g.to_string());
  return a;
}

std::string factored_text(const Factored& f) {
  std::string s;
  for (const auto& [p, k] : f.factors) {
    if (!s.empty()) s += "*";
    s += "(" + p.to_string() + ")";
    if (k != 1) s += "^" + std::to_string(k);
  }
  return s.empty() ? "1" : s;
}

std::string slurp(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

Json read_json_file(const std::string& path) {
  std::string text;
  if (path == "-") {
    text = slurp(std::cin);
  } else {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open " + path);
    text = slurp(f);
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

SPrimeData sprime_from_json(const Json& j, const std::string& where, const Budget& budget) {
  if (!j.is_object() || !j.contains("lambda") || !j.contains("e"))
    throw InputError(where + ": expected an object with \"lambda\", \"e\" and optional \"Z\"");
  std::vector<PartSize> parts;
  std::vector<std::uint32_t> weights;
  for (const auto& x : j.at("lambda")) {
    if (x.is_string())
      parts.push_back(part_from_text(x.get<std::string>()));
    else if (x.is_number_integer() && x.get<long>() > 0)
      parts.push_back(PartSize(x.get<std::uint32_t>()));
    else
      throw InputError(where + ": lambda entries are positive integers or \"inf\"");
  }
  for (const auto& x : j.at("e")) {
    if (!x.is_number_integer() || x.get<long>() <= 0) throw InputError(where + ": weights are positive integers");
    weights.push_back(x.get<std::uint32_t>());
  }
  std::vector<Poly> z;
  if (j.contains("Z")) {
    for (const auto& x : j.at("Z")) {
      if (!x.is_string()) throw InputError(where + ": Z entries are polynomial strings");
      z.push_back(parse(x.get<std::string>()));
    }
  }
  bool irreducible = j.value("irreducible", true);
  try {
    SPrimeData p = make_sprime(parts, weights, z, irreducible, budget);
    for (const auto& w : p.warnings) std::cerr << "warning: " << where << ": " << w << "\n";
    return p;
  } catch (const std::invalid_argument& e) {
    throw InputError(where + ": " + e.what());
  }
}

SPrimeData load_sprime(const std::string& path, const Budget& budget) {
  return sprime_from_json(read_json_file(path), path, budget);
}

Json sprime_json(const SPrimeData& p, const Budget& budget) {
  Json j = shape_json(p.shape);
  j["Z"] = basis_json(p.z_ideal, budget);
  return j;
}

Json report(const std::string& command, const Budget& budget) {
  return Json{{"command", command},
              {"version", kVersion},
              {"budget", {{"max_reductions", budget.max_reductions}, {"max_degree", budget.max_degree}}}};
}

Json generator_json(const Generator& g) {
  return Json{{"poly", g.expand().sign_normalized().to_string()},
              {"factored", factored_text(g.factored)},
              {"source", g.source.to_string()},
              {"kind", g.from_h ? "H" : "G"}};
}

struct Options {
  Budget budget;
  std::string p, q;
  std::vector<std::string> files;
  std::string poly;
  std::string lambda, e;
  std::string target, point;
  std::vector<std::string> targets;
  std::string family;
  std::size_t slot = 0;
  std::uint32_t cap = 20;
  std::uint32_t n = 0;
  std::string qs;
  std::uint32_t characteristic = 0;
  bool verify = false;
};

int cmd_contain(const Options& o, Json& out) {
  auto p = load_sprime(o.p, o.budget), q = load_sprime(o.q, o.budget);
  Containment c = contains_certified(p, q, o.budget);
  out["p"] = sprime_json(p, o.budget);
  out["q"] = sprime_json(q, o.budget);
  out["contains"] = c.holds;
  out["theta"] = basis_json(c.theta.ideal, o.budget);
  out["separator"] = c.separator ? Json(c.separator->to_string()) : Json(nullptr);
  out["warnings"] = c.warnings;
  for (const auto& w : c.warnings) std::cerr << "warning: " << w << "\n";
  return 0;
}

int cmd_theta(const Options& o, Json& out) {
  auto p = load_sprime(o.p, o.budget);
  WeightedShape raw = shape_arg(o.target);
  WeightedShape t = make_shape(raw.parts, raw.weights);
  ThetaResult th = theta(p, t, o.budget);
  out["p"] = sprime_json(p, o.budget);
  out["target"] = shape_json(t);
  out["ideal"] = basis_json(th.ideal, o.budget);
  Json comps = Json::array();
  for (const auto& c : th.components) comps.push_back({{"pair", c.pair.to_string()}, {"ideal", basis_json(c.ideal, o.budget)}});
  out["components"] = comps;
  return 0;
}

int cmd_member(const Options& o, Json& out) {
  auto p = load_sprime(o.p, o.budget);
  std::string text = o.poly;
  if (text.empty() || text == "-") text = trim(slurp(std::cin));
  if (text.empty()) throw InputError("no polynomial given");
  Poly f = parse(text);
  for (const Variable& v : f.variables())
    if (v.family != Family::x) throw InputError("member expects a polynomial in x1, x2, ...; found " + v.name());
  out["p"] = sprime_json(p, o.budget);
  out["poly"] = f.to_string();
  out["member"] = member(f, p, o.budget);
  return 0;
}

int cmd_gens(const Options& o, Json& out) {
  auto p = load_sprime(o.p, o.budget);
  out["p"] = sprime_json(p, o.budget);
  auto gens = full_gens(p, o.budget);
  Json a = Json::array();
  bool all = true;
  std::optional<MembershipOracle> oracle;
  if (o.verify) oracle.emplace(p, o.budget);
  for (const auto& g : gens) {
    Json j = generator_json(g);
    if (oracle) {
      bool ok = oracle->member(g.factored);
      all = all && ok;
      j["member"] = ok;
    }
    a.push_back(j);
  }
  out["generators"] = a;
  if (o.verify) out["all_members"] = all;
  return all ? 0 : kFalse;
}

int cmd_psi0(const Options& o, Json& out) {
  WeightedShape base = make_shape(parts_from_list(o.lambda), positives_from_list(o.e));
  out["shape"] = shape_json(base);
  Json a = Json::array();
  for (const auto& s : psi0(base)) a.push_back(shape_json(s));
  out["psi0"] = a;
  return 0;
}

int cmd_witness(const Options& o, Json& out) {
  auto p = load_sprime(o.p, o.budget), q = load_sprime(o.q, o.budget);
  out["p"] = sprime_json(p, o.budget);
  out["q"] = sprime_json(q, o.budget);
  SPrimeData target = q;
  Witness w;
  try {
    if (!o.point.empty()) {
      std::vector<Rational> y;
      std::vector<Poly> z;
      for (const auto& s : split(o.point, ',')) {
        Poly c = parse(trim(s));
        if (!c.is_constant()) throw InputError("point coordinates must be rational numbers");
        y.push_back(c.constant_term());
        z.push_back(var(tv(static_cast<std::uint32_t>(z.size() + 1))) - c);
      }
      if (y.size() != q.shape.size()) throw InputError("point needs " + std::to_string(q.shape.size()) + " coordinates");
      target = make_sprime(q.shape, z, true, o.budget);
      out["point"] = split(o.point, ',');
      w = build_h(p, q.shape, y, o.budget);
    } else {
      w = build_h(p, q, o.budget);
    }
  } catch (const NoWitness& e) {
    out["witness"] = nullptr;
    out["reason"] = e.what();
    return kFalse;
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  Factored h = w.factored();
  auto [in_p, in_q] = certify(h, p, target, o.budget);
  Json u = Json::array();
  for (const auto& [gp, poly] : w.u_choice) u.push_back({{"pair", gp.to_string()}, {"u", poly.to_string()}});
  out["witness"] = {{"h1", factored_text(w.h1)},
                    {"h2", factored_text(w.h2)},
                    {"h3", factored_text(w.h3)},
                    {"h", factored_text(h)},
                    {"u", u}};
  out["certified"] = {{"in_p", in_p}, {"in_q", in_q}};
  return in_p && !in_q ? 0 : kFalse;
}

int cmd_contract(const Options& o, Json& out) {
  auto q = positives_from_list(o.qs);
  if (o.n != 0 && o.n != q.size()) throw InputError("-n disagrees with the length of -q");
  ContractReport r;
  try {
    r = verify_contract(q, o.characteristic, o.budget);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  out["characteristic"] = r.characteristic;
  out["q"] = r.q;
  out["basis"] = r.basis;
  out["predicted"] = r.predicted;
  out["predicted_in_contraction"] = r.predicted_in_contraction;
  out["contraction_in_predicted"] = r.contraction_in_predicted;
  out["verified"] = r.verified();
  return r.verified() ? 0 : kFalse;
}

int cmd_radical(const Options& o, Json& out) {
  std::vector<SPrimeData> ps;
  for (const auto& f : o.files) ps.push_back(load_sprime(f, o.budget));
  RadicalSIdeal r = make_radical(ps, o.budget);
  Json kept = Json::array();
  for (const auto& p : r.primes) {
    // report the first input index equal to the kept prime
    std::size_t idx = 0;
    for (std::size_t i = 0; i < ps.size(); ++i)
      if (ps[i].shape == p.shape && ideal_equal(ps[i].z_ideal, p.z_ideal)) {
        idx = i;
        break;
      }
    Json j = sprime_json(p, o.budget);
    j["input"] = o.files[idx];
    kept.push_back(j);
  }
  out["primes"] = kept;
  out["includes_zero"] = r.includes_zero;
  return 0;
}

int cmd_slice(const Options& o, Json& out) {
  auto p = load_sprime(o.p, o.budget);
  out["p"] = sprime_json(p, o.budget);
  Json slices = Json::object();
  for (const auto& t : o.targets) {
    WeightedShape s = shape_arg(t);
    slices[s.to_string()] = basis_json(theta_in_labeling(p, s.parts, s.weights, o.budget), o.budget);
  }
  out["slices"] = slices;
  if (!o.family.empty()) {
    WeightedShape fam = shape_arg(o.family);
    Stabilization st;
    try {
      st = d3_stabilize(p, fam, o.slot, o.cap, o.budget);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    Json seq = Json::array();
    for (const auto& I : st.slices) seq.push_back(basis_json(I, o.budget));
    out["stabilization"] = {{"family", fam.to_string()}, {"slot", o.slot}, {"n", st.n}, {"slices", seq}};
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant S-prime ideals: containment, generators and witnesses"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;
  app.add_option("--max-reductions", o.budget.max_reductions, "S-pair reductions allowed per basis")
      ->capture_default_str();
  app.add_option("--max-degree", o.budget.max_degree, "largest degree allowed in a basis")->capture_default_str();

  auto* contain = app.add_subcommand("contain", "decide p ⊆ q");
  contain->add_option("p", o.p, "problem file for p ('-' for stdin)")->required();
  contain->add_option("q", o.q, "problem file for q")->required();

  auto* th = app.add_subcommand("theta", "Θ(Z) for a target shape");
  th->add_option("p", o.p)->required();
  th->add_option("--target", o.target, "target shape LAMBDA:E, e.g. inf:3")->required();

  auto* mem = app.add_subcommand("member", "membership of a polynomial in p");
  mem->add_option("p", o.p)->required();
  mem->add_option("--poly", o.poly, "polynomial in x1, x2, ...; '-' or absent reads stdin");

  auto* gens = app.add_subcommand("gens", "generating set G ∪ H of p");
  gens->add_option("p", o.p)->required();
  gens->add_flag("--verify", o.verify, "check every generator is a member of p");

  auto* ps = app.add_subcommand("psi0", "minimal shapes not below the given one");
  ps->add_option("--lambda", o.lambda, "parts, e.g. inf,inf")->required();
  ps->add_option("--e", o.e, "weights, e.g. 2,2")->required();

  auto* wit = app.add_subcommand("witness", "polynomial in p but not in q");
  wit->add_option("p", o.p)->required();
  wit->add_option("q", o.q)->required();
  wit->add_option("--point", o.point, "use the point y (comma separated) of q's shape instead of q's Z");

  auto* cv = app.add_subcommand("contract-verify", "compare the contraction ideal with its predicted generators");
  cv->add_option("-n", o.n, "number of variables (defaults to the length of -q)");
  cv->add_option("-q", o.qs, "exponents, e.g. 2,2")->required();
  cv->add_option("--char", o.characteristic, "0, 2, 3, 5, 7, 11 or 13")->capture_default_str();

  auto* rad = app.add_subcommand("radical", "antichain of minimal primes among the inputs");
  rad->add_option("files", o.files, "problem files")->required();

  auto* sl = app.add_subcommand("spectrum-slice", "Θ-slices of p over a window of target shapes");
  sl->add_option("p", o.p)->required();
  sl->add_option("--target", o.targets, "target shape LAMBDA:E (repeatable)");
  sl->add_option("--family", o.family, "family template LAMBDA:E with a growing infinite weight-1 part");
  sl->add_option("--slot", o.slot, "0-based index of the growing part")->capture_default_str();
  sl->add_option("--cap", o.cap, "largest n tried")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  Json out = report(name, o.budget);
  int code = 0;
  try {
    if (*contain) code = cmd_contain(o, out);
    else if (*th) code = cmd_theta(o, out);
    else if (*mem) code = cmd_member(o, out);
    else if (*gens) code = cmd_gens(o, out);
    else if (*ps) code = cmd_psi0(o, out);
    else if (*wit) code = cmd_witness(o, out);
    else if (*cv) code = cmd_contract(o, out);
    else if (*rad) code = cmd_radical(o, out);
    else if (*sl) code = cmd_slice(o, out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: budget exhausted: " << e.what() << "\n";
    return 3;
  } catch (const BoundError& e) {
    std::cerr << "error: bound exceeded: " << e.what() << "\n";
    return 3;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cout << out.dump(2) << "\n";
  return code;
}
