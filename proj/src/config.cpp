#include "bwm/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace bwm {

namespace pt = boost::property_tree;

std::string to_string(Suite s) {
  switch (s) {
    case Suite::linear:
      return "linear";
    case Suite::identity:
      return "identity";
    case Suite::conservation:
      return "conservation";
    case Suite::picard:
      return "picard";
    case Suite::scaling:
      return "scaling";
    case Suite::norms:
      return "norms";
  }
  return "linear";
}

Suite suite_from_string(const std::string& s) {
  for (auto v : {Suite::linear, Suite::identity, Suite::conservation, Suite::picard, Suite::scaling, Suite::norms}) {
    if (to_string(v) == s) return v;
  }
  throw InvalidArgument("unknown suite '" + s + "'");
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

double to_double(const std::string& key, const std::string& s) {
  const char* b = s.c_str();
  char* e = nullptr;
  const double v = std::strtod(b, &e);
  if (e == b || *e != '\0') throw InvalidArgument("key '" + key + "': '" + s + "' is not a number");
  return v;
}

long long to_int(const std::string& key, const std::string& s) {
  const char* b = s.c_str();
  char* e = nullptr;
  const long long v = std::strtoll(b, &e, 10);
  if (e == b || *e != '\0') throw InvalidArgument("key '" + key + "': '" + s + "' is not an integer");
  return v;
}

bool to_bool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "on" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "off" || s == "0" || s == "no") return false;
  throw InvalidArgument("key '" + key + "': '" + s + "' is not a boolean");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    out.push_back(cur.substr(b, e - b + 1));
  }
  return out;
}

std::vector<double> to_list(const std::string& key, const std::string& s) {
  std::vector<double> out;
  for (const auto& t : split(s, ',')) out.push_back(to_double(key, t));
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

std::vector<PolynomialTerm> parse_poly(const std::string& s) {
  std::vector<PolynomialTerm> out;
  for (const auto& term : split(s, ';')) {
    const auto parts = split(term, ':');
    if (parts.size() != 3) throw InvalidArgument("perturbation term '" + term + "' must be component:coeff:exponents");
    PolynomialTerm t;
    t.component = static_cast<int>(to_int("poly", parts[0]));
    t.coeff = to_double("poly", parts[1]);
    for (const auto& e : split(parts[2], ',')) t.exponents.push_back(static_cast<int>(to_int("poly", e)));
    out.push_back(std::move(t));
  }
  return out;
}

std::string format_poly(const std::vector<PolynomialTerm>& poly) {
  std::string s;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (i) s += "; ";
    s += std::to_string(poly[i].component) + ":" + format_double(poly[i].coeff) + ":";
    for (std::size_t j = 0; j < poly[i].exponents.size(); ++j) {
      s += (j ? "," : "") + std::to_string(poly[i].exponents[j]);
    }
  }
  return s;
}

// Reads keys from one section and rejects keys nobody consumed.
class Section {
 public:
  Section(const pt::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}
  ~Section() noexcept(false) {
    if (!tree_ || std::uncaught_exceptions() > 0) return;
    for (const auto& kv : *tree_) {
      if (!used_.count(kv.first)) throw InvalidArgument("unknown key '" + kv.first + "' in [" + name_ + "]");
    }
  }
  bool get(const std::string& key, std::string& out) {
    if (!tree_) return false;
    auto it = tree_->find(key);
    if (it == tree_->not_found()) return false;
    used_.insert(key);
    out = it->second.data();
    return true;
  }
  template <class T, class Conv>
  void read(const std::string& key, T& out, Conv conv) {
    std::string s;
    if (get(key, s)) out = static_cast<T>(conv(name_ + "." + key, s));
  }
  void real(const std::string& key, double& out) { read(key, out, to_double); }
  template <class T>
  void integer(const std::string& key, T& out) {
    read(key, out, to_int);
  }
  void boolean(const std::string& key, bool& out) { read(key, out, to_bool); }
  void text(const std::string& key, std::string& out) { get(key, out); }

 private:
  const pt::ptree* tree_;
  std::string name_;
  std::set<std::string> used_;
};

const pt::ptree* child(const pt::ptree& root, const std::string& name) {
  auto it = root.find(name);
  return it == root.not_found() ? nullptr : &it->second;
}

}  // namespace

Experiment parse_experiment(std::istream& in) {
  pt::ptree root;
  try {
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  static const std::set<std::string> known = {"experiment", "grid", "target", "data", "run",
                                              "identity",   "picard", "rescale", "norms"};
  for (const auto& kv : root) {
    if (!known.count(kv.first) && kv.first.rfind("norm.", 0) != 0) {
      throw InvalidArgument("unknown config section [" + kv.first + "]");
    }
    if (kv.second.empty() && !kv.second.data().empty()) {
      throw InvalidArgument("config key '" + kv.first + "' must live inside a section");
    }
  }

  Experiment e;
  RunConfig& r = e.run;
  {
    Section s(child(root, "experiment"), "experiment");
    s.text("name", e.name);
    std::string suite;
    if (s.get("suite", suite)) e.suite = suite_from_string(suite);
    s.integer("seed", e.seed);
    s.text("output", e.output);
  }
  {
    Section s(child(root, "grid"), "grid");
    s.integer("dim", r.dim);
    s.integer("n", r.n);
    s.real("box", r.box);
  }
  {
    Section s(child(root, "target"), "target");
    std::string v;
    if (s.get("kind", v)) r.target.kind = target_kind_from_string(v);
    s.integer("L", r.target.L);
    s.real("epsilon", r.target.epsilon);
    if (s.get("poly", v)) r.target.poly = parse_poly(v);
    s.integer("series_order", r.target.series_order);
    if (s.get("series_base", v)) r.target.series_base = to_list("target.series_base", v);
  }
  {
    Section s(child(root, "data"), "data");
    std::string v;
    if (s.get("profile", v)) r.data.kind = profile_kind_from_string(v);
    s.real("delta", r.data.delta);
    s.real("sharpness", r.data.sharpness);
    s.real("radius", r.data.radius);
    s.integer("mode", r.data.mode);
  }
  {
    Section s(child(root, "run"), "run");
    s.real("dt", r.dt);
    s.real("safety", r.safety);
    s.real("t_final", r.t_final);
    s.integer("record_every", r.record_every);
    s.integer("picard_iterations", r.picard_iterations);
    s.boolean("renormalize", r.renormalize);
    s.boolean("nonlinear", r.nonlinear);
    s.boolean("refinement_check", e.refinement_check);
  }
  {
    Section s(child(root, "identity"), "identity");
    s.text("family", e.identity.family);
    s.integer("stencil_order", e.identity.stencil_order);
    s.integer("samples", e.identity.samples);
    s.real("dt", e.identity.dt);
    s.integer("blocks", e.identity.blocks);
  }
  {
    Section s(child(root, "picard"), "picard");
    std::string v;
    if (s.get("deltas", v)) e.picard_deltas = to_list("picard.deltas", v);
  }
  {
    Section s(child(root, "rescale"), "rescale");
    s.real("lambda", e.rescale_lambda);
  }
  {
    Section s(child(root, "norms"), "norms");
    s.text("input", e.norms.input);
    s.integer("block_steps", e.norms.block_steps);
  }
  for (const auto& kv : root) {
    if (kv.first.rfind("norm.", 0) != 0) continue;
    Section s(&kv.second, kv.first);
    NormSpec spec;
    std::string v;
    if (s.get("family", v)) spec.family = norm_family_from_string(v);
    s.real("s", spec.s);
    s.real("p", spec.p);
    s.real("q", spec.q);
    s.real("b", spec.b);
    s.integer("lambda", spec.lambda);
    if (s.get("e", v)) spec.e = to_list(kv.first + ".e", v);
    validate(spec);
    e.norms.specs.push_back(std::move(spec));
  }
  r.data.seed = e.seed;
  r.validate();
  if (e.identity.blocks < 1) throw InvalidArgument("identity.blocks must be at least 1");
  if (e.norms.block_steps < 8) throw InvalidArgument("norms.block_steps must be at least 8");
  return e;
}

Experiment load_experiment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config '" + path + "'");
  return parse_experiment(in);
}

std::string serialize_experiment(const Experiment& e) {
  const RunConfig& r = e.run;
  std::ostringstream os;
  os << "[experiment]\nname = " << e.name << "\nsuite = " << to_string(e.suite) << "\nseed = " << e.seed
     << "\noutput = " << e.output << "\n\n";
  os << "[grid]\ndim = " << r.dim << "\nn = " << r.n << "\nbox = " << format_double(r.box) << "\n\n";
  os << "[target]\nkind = " << to_string(r.target.kind) << "\nL = " << r.target.L
     << "\nepsilon = " << format_double(r.target.epsilon) << "\n";
  if (!r.target.poly.empty()) os << "poly = " << format_poly(r.target.poly) << "\n";
  os << "series_order = " << r.target.series_order << "\n";
  if (!r.target.series_base.empty()) os << "series_base = " << join(r.target.series_base) << "\n";
  os << "\n[data]\nprofile = " << to_string(r.data.kind) << "\ndelta = " << format_double(r.data.delta)
     << "\nsharpness = " << format_double(r.data.sharpness) << "\nradius = " << format_double(r.data.radius)
     << "\nmode = " << r.data.mode << "\n\n";
  os << "[run]\ndt = " << format_double(r.dt) << "\nsafety = " << format_double(r.safety)
     << "\nt_final = " << format_double(r.t_final) << "\nrecord_every = " << r.record_every
     << "\npicard_iterations = " << r.picard_iterations << "\nrenormalize = " << (r.renormalize ? "true" : "false")
     << "\nnonlinear = " << (r.nonlinear ? "true" : "false")
     << "\nrefinement_check = " << (e.refinement_check ? "true" : "false") << "\n\n";
  os << "[identity]\nfamily = " << e.identity.family << "\nstencil_order = " << e.identity.stencil_order
     << "\nsamples = " << e.identity.samples << "\ndt = " << format_double(e.identity.dt)
     << "\nblocks = " << e.identity.blocks << "\n\n";
  os << "[picard]\ndeltas = " << join(e.picard_deltas) << "\n\n";
  os << "[rescale]\nlambda = " << format_double(e.rescale_lambda) << "\n\n";
  os << "[norms]\n";
  if (!e.norms.input.empty()) os << "input = " << e.norms.input << "\n";
  os << "block_steps = " << e.norms.block_steps << "\n";
  for (std::size_t i = 0; i < e.norms.specs.size(); ++i) {
    const auto& s = e.norms.specs[i];
    os << "\n[norm." << i << "]\nfamily = " << to_string(s.family) << "\ns = " << format_double(s.s)
       << "\np = " << format_double(s.p) << "\nq = " << format_double(s.q) << "\nb = " << format_double(s.b)
       << "\nlambda = " << s.lambda << "\n";
    if (!s.e.empty()) os << "e = " << join(s.e) << "\n";
  }
  return os.str();
}

}  // namespace bwm
