#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "strata/curvelab.hpp"
#include "strata/polysect.hpp"
#include "strata/poset.hpp"
#include "strata/spinalg.hpp"
#include "strata/symgrp.hpp"
#include "strata/triang.hpp"
#include "strata/word.hpp"

using namespace strata;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kNumerical = 2, kInternal = 3 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  int n = 0;
  double ode_tol = 1e-10;
  double ode_max_step = 1.0 / 64;
  double cluster_tol = 1e-7;
  double zero_tol = 1e-10;
  int itinerary_grid = 2048;
  std::string root_precision = "1/1000000000000";
  int curve_samples = 257;
  int csv_samples = 1025;
  std::string grid = "33x33";
  std::string window = "auto";
  int sampling_budget = 1089;
  int sampling_radii = 8;
  int oracle_depth = 2;
  int max_w1 = 6;
  int max_w0 = 12;
  std::uint64_t seed = 1;
  int synth_attempts = 24;
  int threads = 0;
  std::string out_json;
  std::string out_csv;
  std::string out_dot;
};

struct Key {
  std::string name;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

template <class T>
T parse_value(const std::string& key, const std::string& v) {
  std::istringstream is(v);
  T out{};
  if (!(is >> out) || !is.eof()) throw UsageError("bad value for " + key + ": " + v);
  return out;
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(15);
  os << v;
  return os.str();
}

#define INT_KEY(k) {#k, [](const RunConfig& c) { return std::to_string(c.k); }, \
                    [](RunConfig& c, const std::string& v) { c.k = parse_value<decltype(c.k)>(#k, v); }}
#define DBL_KEY(k) {#k, [](const RunConfig& c) { return fmt_double(c.k); }, \
                    [](RunConfig& c, const std::string& v) { c.k = parse_value<double>(#k, v); }}
#define STR_KEY(k) {#k, [](const RunConfig& c) { return c.k; }, [](RunConfig& c, const std::string& v) { c.k = v; }}

const std::vector<Key>& config_keys() {
  static const std::vector<Key> keys = {
      INT_KEY(n),           DBL_KEY(ode_tol),        DBL_KEY(ode_max_step),  DBL_KEY(cluster_tol),
      DBL_KEY(zero_tol),    INT_KEY(itinerary_grid), STR_KEY(root_precision), INT_KEY(curve_samples),
      INT_KEY(csv_samples), STR_KEY(grid),           STR_KEY(window),        INT_KEY(sampling_budget),
      INT_KEY(sampling_radii), INT_KEY(oracle_depth), INT_KEY(max_w1),       INT_KEY(max_w0),
      INT_KEY(seed),        INT_KEY(synth_attempts), INT_KEY(threads),       STR_KEY(out_json),
      STR_KEY(out_csv),     STR_KEY(out_dot),
  };
  return keys;
}

void set_key(RunConfig& c, const std::string& key, const std::string& value) {
  for (const auto& k : config_keys())
    if (k.name == key) return k.set(c, value);
  throw UsageError("unknown config key: " + key);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

void load_config(RunConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::string line;
  for (int no = 1; std::getline(in, line); ++no) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(no) + ": expected key=value");
    set_key(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void dump_config(const RunConfig& c, std::ostream& os) {
  for (const auto& k : config_keys()) os << k.name << "=" << k.get(c) << "\n";
}

// Writes to the path, or to stdout when the path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

ItineraryOptions itinerary_options(const RunConfig& c) {
  ItineraryOptions o;
  o.grid = c.itinerary_grid;
  o.cluster_tol = c.cluster_tol;
  o.zero_tol = c.zero_tol;
  return o;
}

Rational json_rational(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number()) return Rational(j.get<double>());
  throw UsageError("expected a number or a rational string");
}

FamilyKind family_kind(const std::string& s) {
  if (s == "section") return FamilyKind::Section;
  if (s == "betaprime") return FamilyKind::BetaPrime;
  if (s == "matrixu") return FamilyKind::MatrixU;
  throw UsageError("unknown family " + s + " (section, betaprime or matrixu)");
}

std::string bracketed(const std::string& text) {
  return !text.empty() && text.front() == '[' ? text : "[" + text + "]";
}

Permutation parse_letter(const std::string& text, int n) {
  if (text == "e" || text == "[e]") throw IdentityLetter();
  const Word w = parse_word(bracketed(text), n);
  if (w.size() != 1) throw UsageError("expected a single letter, got " + text);
  return w.front();
}

SectionFamily make_family(FamilyKind kind, const std::string& sigma, int n, const std::optional<Rational>& u) {
  if (kind == FamilyKind::Section) return build_section(parse_letter(sigma, n));
  if (parse_letter(sigma, 3) != parse_letter("acb", 3))
    throw UsageError("the perturbed families exist for acb only");
  return build_perturbed_family(kind, u);
}

json exact_json(const ExactItinerary& it) {
  json ev = json::array();
  for (const auto& e : it.events)
    ev.push_back({{"root", {to_string(e.root.lo), to_string(e.root.hi)}},
                  {"approx", e.root.approx()},
                  {"mult", e.mult},
                  {"letter", letter_string(e.letter)}});
  return {{"itinerary", it.to_string()}, {"events", ev}};
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// A SpinF that is numerically ±(single blade) is reported as that Quat element.
std::optional<CliffordEven> nearest_quat(const SpinF& z, double tol = 1e-8) {
  std::optional<CliffordEven> out;
  for (unsigned a = 0; a < z.blade_count(); ++a) {
    const double v = z[a];
    if (std::abs(v) < tol) continue;
    if (out || std::abs(std::abs(v) - 1) > tol) return std::nullopt;
    out = CliffordEven::blade(z.rank(), a, Root2(v > 0 ? 1 : -1));
  }
  return out;
}

int cmd_iti(const RunConfig& cfg, const std::string& path) {
  json spec;
  try {
    spec = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("malformed spec: ") + e.what());
  }
  if (!spec.is_object()) throw UsageError("spec must be a JSON object");
  FrameCurve curve;
  json extra;
  try {
    if (spec.contains("section")) {
      const FamilyKind kind = family_kind(spec.value("family", std::string("section")));
      std::optional<Rational> u;
      if (spec.contains("u")) u = json_rational(spec.at("u"));
      SectionFamily s = make_family(kind, spec.at("section").get<std::string>(), cfg.n, u);
      std::vector<Rational> x;
      for (const auto& v : spec.at("x")) x.push_back(json_rational(v));
      if (static_cast<int>(x.size()) != s.d) throw UsageError("x needs " + std::to_string(s.d) + " coordinates");
      Rational lo = -1, hi = 1;
      if (s.t_domain) std::tie(lo, hi) = *s.t_domain;
      if (spec.contains("domain")) {
        lo = json_rational(spec.at("domain").at(0));
        hi = json_rational(spec.at("domain").at(1));
      }
      if (!(lo < hi)) throw UsageError("empty domain");
      s.t_domain = std::make_pair(lo, hi);
      if (s.has_u() && !u && !s.u) throw UsageError("this family needs a value of u");
      curve = section_frame_curve(s, x, u, to_double(lo), to_double(hi));
      extra["exact"] = exact_json(classify_point(s, x, u, parse_rational(cfg.root_precision)));
    } else {
      const CurvatureSpec cs = CurvatureSpec::from_json(spec);
      IntegrateOptions io;
      io.tol = cfg.ode_tol;
      io.max_step = cfg.ode_max_step;
      curve = integrate(cs, SpinF::scalar(cs.n, 1.0), io);
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed spec: ") + e.what());
  }
  const auto events = itinerary(curve, itinerary_options(cfg));
  json out = curve_to_json(curve, events, cfg.curve_samples);
  const SpinF end = curve.spin(curve.hi());
  out["endpoint"] = to_json(end);
  if (auto q = nearest_quat(end)) out["endpoint_quat"] = to_json(*q);
  for (auto& [k, v] : extra.items()) out[k] = v;
  emit(cfg.out_json, out.dump(1) + "\n");
  if (!cfg.out_csv.empty()) {
    std::ostringstream csv;
    write_minor_csv(csv, curve, cfg.csv_samples);
    emit(cfg.out_csv, csv.str());
  }
  return kOk;
}

std::vector<GridAxis> parse_grid(const std::string& text, int d, const Rational& r) {
  std::vector<int> counts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, 'x');) {
    const int c = parse_value<int>("grid", part);
    if (c < 1) throw UsageError("grid counts must be positive");
    counts.push_back(c);
  }
  if (counts.size() == 1) counts.assign(d, counts.front());
  if (static_cast<int>(counts.size()) != d)
    throw UsageError("grid " + text + " does not match dimension " + std::to_string(d));
  std::vector<GridAxis> axes;
  for (int c : counts) axes.push_back({-r, r, c});
  return axes;
}

int cmd_section(const RunConfig& cfg, const std::string& sigma, const std::string& family,
                const std::optional<std::string>& u_text, bool grid_requested) {
  std::optional<Rational> u;
  if (u_text) u = parse_rational(*u_text);
  const FamilyKind kind = family_kind(family);
  const SectionFamily s = make_family(kind, sigma, cfg.n, u);
  std::ostringstream os;
  os << "section " << letter_string(s.sigma) << " n=" << s.n << " d=" << s.d << "\n";
  const auto m = minors(s);
  for (int j = 0; j < s.n; ++j) os << "m_" << j + 1 << " = " << m[j].to_string(s.names) << "\n";
  for (const auto& line : stratum_loci(s)) os << line << "\n";
  if (!grid_requested) {
    std::cout << os.str();
    return kOk;
  }
  if (s.has_u() && !u && !s.u) throw UsageError("a label map of this family needs --u");
  Rational r = kind == FamilyKind::Section ? Rational(1) : Rational(1, 4);
  if (cfg.window != "auto") r = parse_rational(cfg.window);
  const auto labels =
      stratum_map(s, parse_grid(cfg.grid, s.d, r), u, cfg.threads, parse_rational(cfg.root_precision));
  std::ostringstream csv;
  write_stratum_csv(csv, s, labels, u);
  if (cfg.out_csv.empty()) {
    std::cout << os.str() << "\n" << csv.str();
  } else {
    std::cout << os.str();
    emit(cfg.out_csv, csv.str());
  }
  return kOk;
}

int word_rank(const std::vector<std::string>& texts, int n) {
  if (n > 0) return n;
  for (const auto& t : texts) {
    const Word w = parse_word(t);
    if (!w.empty()) n = std::max(n, w.front().rank());
  }
  return std::max(n, 1);
}

int cmd_poset(const RunConfig& cfg, const std::vector<std::string>& words, const std::string& below,
              const std::string& hasse_path) {
  SamplingOptions so;
  so.budget = cfg.sampling_budget;
  so.radii = cfg.sampling_radii;
  so.threads = cfg.threads;
  PrecOptions po;
  po.max_w1 = cfg.max_w1;
  po.max_w0 = cfg.max_w0;
  if (!below.empty()) {
    if (!words.empty()) throw UsageError("--below takes no word arguments");
    const int n = word_rank({bracketed(below)}, cfg.n);
    const Permutation sigma = parse_letter(below, n);
    SectionOracle oracle(n, so, cfg.oracle_depth);
    std::vector<Word> ws;
    json list = json::array();
    for (const auto& [w, sample] : oracle.observe(sigma).words) {
      ws.push_back(w);
      list.push_back(format_word(w));
    }
    auto leq = [&](const Word& a, const Word& b) { return prec(a, b, n, oracle.as_function(), po).verdict == Verdict::Yes; };
    const std::string dot = hasse(ws, leq);
    json covers = json::array();
    for (const auto& [hi, lo] : hasse_covers(ws, leq)) covers.push_back({format_word(hi), format_word(lo)});
    if (!hasse_path.empty()) emit(hasse_path, dot);
    else if (!cfg.out_dot.empty()) emit(cfg.out_dot, dot);
    emit(cfg.out_json, json{{"letter", letter_string(sigma)}, {"words", list}, {"covers", covers}}.dump(1) + "\n");
    return kOk;
  }
  if (words.size() != 2) throw UsageError("poset needs two words, or --below");
  const int n = word_rank(words, cfg.n);
  const Word w0 = parse_word(words[0], n), w1 = parse_word(words[1], n);
  SectionOracle oracle(n, so, cfg.oracle_depth);
  emit(cfg.out_json, prec(w0, w1, n, oracle.as_function(), po).to_json().dump(1) + "\n");
  return kOk;
}

json permutation_json(const Permutation& s) { return s.images(); }

int cmd_group(const RunConfig& cfg, const std::string& query, const std::string& arg) {
  json out;
  if (query == "rbullet") {
    out = r_bullet(parse_value<int>("rbullet", arg));
  } else if (query == "qword" || query == "btable") {
    const int n = word_rank({arg}, cfg.n);
    const Word w = parse_word(arg, n);
    if (query == "qword") {
      out = to_json(q_of_word(w, n));
    } else {
      const SpinWordTable t = word_table(w, n);
      json half = json::array(), integer = json::array();
      for (const auto& z : t.half) half.push_back(to_json(z));
      for (const auto& z : t.integer) integer.push_back(to_json(z));
      out = {{"word", format_word(w)}, {"n", n}, {"half", half}, {"integer", integer}};
    }
  } else {
    const int n = word_rank({bracketed(arg)}, cfg.n);
    const Permutation s = arg == "e" ? Permutation::identity(n) : parse_letter(arg, n);
    if (query == "mult") out = mult_vector(s);
    else if (query == "inv") out = inversions(s);
    else if (query == "dim") out = dim(s);
    else if (query == "perm") out = permutation_json(s);
    else if (query == "acute") out = to_json(acute(s));
    else if (query == "grave") out = to_json(grave(s));
    else if (query == "hat") out = to_json(hat(s));
    else if (query == "words") {
      out = json::array();
      for (const auto& rw : all_reduced_words(s)) out.push_back(word_letters(rw));
    } else {
      throw UsageError("unknown group query " + query);
    }
  }
  emit(cfg.out_json, out.dump() + "\n");
  return kOk;
}

int cmd_synth(const RunConfig& cfg, const std::string& word_text) {
  const int n = word_rank({word_text}, cfg.n);
  const Word w = parse_word(word_text, n);
  SynthesisOptions so;
  so.seed = cfg.seed;
  so.attempts = cfg.synth_attempts;
  const SynthesizedCurve sc = curve_with_itinerary(w, n, {}, so);
  const auto events = itinerary(sc.curve, itinerary_options(cfg));
  json out = curve_to_json(sc.curve, events, cfg.curve_samples);
  out["times"] = sc.times;
  out["epsilon"] = sc.epsilon;
  out["target"] = to_json(q_of_word(w, n));
  out["endpoint"] = to_json(sc.curve.spin(1.0));
  emit(cfg.out_json, out.dump(1) + "\n");
  if (!cfg.out_csv.empty()) {
    std::ostringstream csv;
    write_minor_csv(csv, sc.curve, cfg.csv_samples);
    emit(cfg.out_csv, csv.str());
  }
  return kOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Itinerary strata of locally convex curves"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  RunConfig cfg;
  std::string config_path;
  std::vector<std::string> sets;
  bool dump = false;
  app.add_option("--config", config_path, "key=value config file");
  app.add_option("--set", sets, "override one config key (key=value), repeatable");
  app.add_flag("--dump-config", dump, "print the effective configuration and exit");
  std::optional<std::uint64_t> seed;
  std::optional<int> threads, n;
  std::optional<std::string> json_out, csv_out;
  app.add_option("--seed", seed, "random seed");
  app.add_option("--threads", threads, "worker threads (0: all cores)");
  app.add_option("-n,--rank", n, "rank n (0: infer from the input)");
  app.add_option("--json", json_out, "write JSON here instead of stdout");
  app.add_option("--csv", csv_out, "write CSV here");

  auto* iti = app.add_subcommand("iti", "itinerary of a curvature spec or of a section curve");
  std::string spec_path;
  iti->add_option("spec", spec_path, "JSON spec file ('-' for stdin)")->required();

  auto* section = app.add_subcommand("section", "section polynomials and label map");
  std::string sigma, family = "section";
  std::optional<std::string> u_text, grid;
  section->add_option("sigma", sigma, "letter, e.g. aba")->required();
  section->add_option("--family", family, "section, betaprime or matrixu");
  section->add_option("--u", u_text, "value of the family parameter");
  section->add_option("--grid", grid, "grid counts, e.g. 100x100");

  auto* poset = app.add_subcommand("poset", "certificate for w0 ⪯ w1, or the Hasse diagram below a letter");
  std::optional<std::string> w0_text, w1_text;
  std::string below, hasse_path;
  poset->add_option("w0", w0_text, "lower word");
  poset->add_option("w1", w1_text, "upper word");
  poset->add_option("--below", below, "letter whose section is sampled");
  poset->add_option("--hasse", hasse_path, "DOT output path");

  auto* group = app.add_subcommand("group", "queries: mult inv dim perm acute grave hat words qword btable rbullet");
  std::string query, arg;
  group->add_option("query", query)->required();
  group->add_option("arg", arg)->required();

  auto* synth = app.add_subcommand("synth", "curve with a prescribed itinerary");
  std::string synth_word;
  synth->add_option("word", synth_word)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  if (!config_path.empty()) load_config(cfg, config_path);
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--set expects key=value");
    set_key(cfg, trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
  }
  if (seed) cfg.seed = *seed;
  if (threads) cfg.threads = *threads;
  if (n) cfg.n = *n;
  if (json_out) cfg.out_json = *json_out;
  if (csv_out) cfg.out_csv = *csv_out;
  if (grid) cfg.grid = *grid;
  if (dump) {
    dump_config(cfg, std::cout);
    return kOk;
  }
  if (*iti) return cmd_iti(cfg, spec_path);
  if (*section) return cmd_section(cfg, sigma, family, u_text, grid.has_value());
  if (*poset) {
    std::vector<std::string> words;
    for (const auto* w : {&w0_text, &w1_text})
      if (*w) words.push_back(**w);
    return cmd_poset(cfg, words, below, hasse_path);
  }
  if (*group) return cmd_group(cfg, query, arg);
  if (*synth) return cmd_synth(cfg, synth_word);
  std::cout << app.help();
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UnresolvedCluster& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  } catch (const PathNotAccessible& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  } catch (const NoRootInInterval& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  } catch (const NotAPartialOrder& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
