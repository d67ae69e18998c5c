#include "strata/poset.hpp"

#include <algorithm>
#include <sstream>

namespace strata {

namespace {

nlohmann::json rationals_json(const std::vector<Rational>& x) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& v : x) a.push_back(to_string(v));
  return a;
}

nlohmann::json sample_json(const Permutation& sigma, const SectionSample& s) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : s.iti.events)
    events.push_back({{"root", {to_string(e.root.lo), to_string(e.root.hi)}},
                      {"mult", e.mult},
                      {"letter", letter_string(e.letter)}});
  nlohmann::json j{{"section", letter_string(sigma)}, {"x", rationals_json(s.x)}, {"itinerary", s.iti.to_string()},
                   {"events", events}};
  if (s.u) j["u"] = to_string(*s.u);
  return j;
}

PrecCertificate make(Verdict v, const Word& w0, const Word& w1, Evidence e) {
  PrecCertificate c;
  c.verdict = v;
  c.w0 = w0;
  c.w1 = w1;
  c.evidence.push_back(std::move(e));
  return c;
}

}  // namespace

WordStats word_stats(const Word& w, int n) {
  WordStats s;
  s.n = n;
  s.mult.assign(n, 0);
  s.hat = CliffordEven::scalar(n, Root2(1));
  for (const auto& sigma : w) {
    if (sigma.rank() != n) throw RankMismatch();
    s.dim += dim(sigma);
    const auto m = mult_vector(sigma);
    for (int j = 0; j < n; ++j) s.mult[j] += m[j];
    s.hat = s.hat * hat(sigma);
  }
  const CliffordEven ae = acute(Permutation::longest(n));
  s.q = ae * s.hat * ae;
  return s;
}

ConditionResult necessary_conditions(const Word& w0, const Word& w1, int n) {
  if (w0.empty() != w1.empty()) return {false, "the empty word is related only to itself", "isolated-empty-word"};
  const WordStats a = word_stats(w0, n), b = word_stats(w1, n);
  for (int j = 0; j < n; ++j)
    if (a.mult[j] > b.mult[j]) {
      std::ostringstream os;
      os << "mult_" << j + 1 << " is " << a.mult[j] << " > " << b.mult[j];
      return {false, os.str(), "mult-violation"};
    }
  if (!(a.hat == b.hat)) return {false, "hats differ", "hat-violation"};
  return {};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "yes";
    case Verdict::No:
      return "no";
    default:
      return "unknown";
  }
}

nlohmann::json PrecCertificate::to_json() const {
  nlohmann::json j{{"verdict", to_string(verdict)}, {"w0", format_word(w0)}, {"w1", format_word(w1)}};
  if (!blocks.empty()) {
    nlohmann::json b = nlohmann::json::array();
    for (const auto& w : blocks) b.push_back(format_word(w));
    j["blocks"] = b;
  }
  nlohmann::json ev = nlohmann::json::array();
  for (const auto& e : evidence) {
    nlohmann::json x{{"kind", e.kind}, {"detail", e.detail}};
    if (!e.data.is_null()) x["data"] = e.data;
    ev.push_back(x);
  }
  j["evidence"] = ev;
  if (!children.empty()) {
    nlohmann::json c = nlohmann::json::array();
    for (const auto& ch : children) c.push_back(ch.to_json());
    j["children"] = c;
  }
  return j;
}

LetterObservation letter_oracle_section(const Permutation& sigma, const SamplingOptions& opt) {
  if (sigma.is_identity()) throw IdentityLetter();
  const SectionFamily s = build_section(sigma);
  LetterObservation obs;
  obs.sigma = sigma;
  int count = 3;
  if (s.d > 0)
    while (true) {
      const int next = 2 * count - 1;
      double total = 1;
      for (int k = 0; k < s.d; ++k) total *= next;
      if (total > opt.budget) break;
      count = next;
    }
  const int radii = s.d == 0 ? 1 : opt.radii;
  for (int k = 1; k <= radii; ++k) {
    const Rational r = Rational(1) / (Integer(1) << k);
    std::vector<GridAxis> axes(s.d, GridAxis{-r, r, count});
    for (auto& g : stratum_map(s, axes, std::nullopt, opt.threads)) {
      ++obs.points;
      Word w = g.iti.word();
      if (!obs.words.count(w)) obs.words.emplace(std::move(w), SectionSample{g.x, g.iti, std::nullopt});
    }
  }
  return obs;
}

PrecCertificate prec(const Word& w0, const Word& w1, int n, const LetterOracle& oracle, const PrecOptions& opt) {
  if (w0 == w1) return make(Verdict::Yes, w0, w1, {"reflexive", "w ⪯ w", {}});
  if (auto nc = necessary_conditions(w0, w1, n); !nc.pass) return make(Verdict::No, w0, w1, {nc.kind, nc.reason, {}});
  const int L0 = static_cast<int>(w0.size()), L1 = static_cast<int>(w1.size());
  if (L0 < L1) return make(Verdict::No, w0, w1, {"length", "fewer letters than blocks", {}});
  if (L1 > opt.max_w1 || L0 > opt.max_w0)
    return make(Verdict::Unknown, w0, w1, {"unknown", "factorization search cap exceeded", {}});

  // Block certificate for w0[i, j) against letter k, computed on demand.
  std::map<std::tuple<int, int, int>, PrecCertificate> memo;
  auto block = [&](int i, int j, int k) -> const PrecCertificate& {
    auto key = std::make_tuple(i, j, k);
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, oracle(Word(w0.begin() + i, w0.begin() + j), w1[k])).first;
    return it->second;
  };
  // yes_from[k][i]: cut position after block k−1 in some all-yes split of w0[0, i) into k blocks.
  // open[k][i]: such a split exists with no refuted block.
  std::vector<std::vector<int>> yes_from(L1 + 1, std::vector<int>(L0 + 1, -1));
  std::vector<std::vector<bool>> open(L1 + 1, std::vector<bool>(L0 + 1, false));
  yes_from[0][0] = 0;
  open[0][0] = true;
  for (int k = 1; k <= L1; ++k)
    for (int i = k; i <= L0 - (L1 - k); ++i)
      for (int p = k - 1; p < i; ++p) {
        if (!open[k - 1][p]) continue;
        const Verdict v = block(p, i, k - 1).verdict;
        if (v != Verdict::No) open[k][i] = true;
        if (v == Verdict::Yes && yes_from[k - 1][p] >= 0 && yes_from[k][i] < 0) yes_from[k][i] = p;
      }

  if (yes_from[L1][L0] >= 0) {
    PrecCertificate c;
    c.verdict = Verdict::Yes;
    c.w0 = w0;
    c.w1 = w1;
    std::vector<int> cuts{L0};
    for (int k = L1, i = L0; k > 0; --k) {
      i = yes_from[k][i];
      cuts.push_back(i);
    }
    std::reverse(cuts.begin(), cuts.end());
    for (int k = 0; k < L1; ++k) {
      c.blocks.emplace_back(w0.begin() + cuts[k], w0.begin() + cuts[k + 1]);
      c.children.push_back(block(cuts[k], cuts[k + 1], k));
    }
    c.evidence.push_back({"factorization", "every block lies below its letter", {}});
    return c;
  }
  if (!open[L1][L0]) {
    nlohmann::json refuted = nlohmann::json::array();
    for (const auto& [key, cert] : memo)
      if (cert.verdict == Verdict::No)
        refuted.push_back({{"block", format_word(cert.w0)},
                           {"letter", letter_string(w1[std::get<2>(key)])},
                           {"reason", cert.evidence.empty() ? "" : cert.evidence.front().detail}});
    return make(Verdict::No, w0, w1, {"factorization", "every factorization has a refuted block", refuted});
  }
  return make(Verdict::Unknown, w0, w1, {"unknown", "some block could not be decided", {}});
}

SectionOracle::SectionOracle(int n, SamplingOptions opt, int depth) : n_(n), opt_(opt), depth_(depth) {}

const LetterObservation& SectionOracle::observe(const Permutation& sigma) {
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = cache_[sigma];
  if (!slot) slot = std::make_unique<LetterObservation>(letter_oracle_section(sigma, opt_));
  return *slot;
}

PrecCertificate SectionOracle::operator()(const Word& block, const Permutation& sigma) {
  return decide(block, sigma, depth_);
}

LetterOracle SectionOracle::as_function() {
  return [this](const Word& b, const Permutation& s) { return (*this)(b, s); };
}

PrecCertificate SectionOracle::decide(const Word& block, const Permutation& sigma, int depth) {
  const Word letter{sigma};
  if (block == letter) return make(Verdict::Yes, block, letter, {"reflexive", "w ⪯ w", {}});
  if (auto nc = necessary_conditions(block, letter, n_); !nc.pass)
    return make(Verdict::No, block, letter, {nc.kind, nc.reason, {}});
  const LetterObservation& obs = observe(sigma);
  if (auto it = obs.words.find(block); it != obs.words.end())
    return make(Verdict::Yes, block, letter,
                {"section-sample", "observed in the section of " + format_word(letter), sample_json(sigma, it->second)});
  if (depth > 0) {
    LetterOracle inner = [this, depth](const Word& b, const Permutation& s) { return decide(b, s, depth - 1); };
    for (const auto& [mid, sample] : obs.words) {
      if (mid == letter || mid.size() > block.size()) continue;
      if (!necessary_conditions(block, mid, n_).pass) continue;
      PrecCertificate below = prec(block, mid, n_, inner);
      if (below.verdict != Verdict::Yes) continue;
      PrecCertificate c = make(Verdict::Yes, block, letter,
                               {"factorization", "below " + format_word(mid) + ", which is observed in the section",
                                {{"via", format_word(mid)}}});
      c.children.push_back(std::move(below));
      c.children.push_back(make(Verdict::Yes, mid, letter,
                                {"section-sample", "observed in the section of " + format_word(letter),
                                 sample_json(sigma, sample)}));
      return c;
    }
  }
  return make(Verdict::Unknown, block, letter, {"unknown", "not observed in the section", {}});
}

namespace {

std::vector<Word> hasse_order(std::vector<Word> words) {
  std::sort(words.begin(), words.end(), [](const Word& a, const Word& b) {
    int da = 0, db = 0;
    for (const auto& s : a) da += dim(s);
    for (const auto& s : b) db += dim(s);
    if (da != db) return da > db;
    return format_word(a) < format_word(b);
  });
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return words;
}

}  // namespace

std::vector<std::pair<Word, Word>> hasse_covers(const std::vector<Word>& input,
                                                const std::function<bool(const Word&, const Word&)>& leq) {
  const std::vector<Word> words = hasse_order(input);
  const size_t N = words.size();
  std::vector<std::vector<bool>> lt(N, std::vector<bool>(N, false));
  for (size_t a = 0; a < N; ++a)
    for (size_t b = 0; b < N; ++b)
      if (a != b) lt[a][b] = leq(words[a], words[b]);
  for (size_t a = 0; a < N; ++a)
    for (size_t b = a + 1; b < N; ++b)
      if (lt[a][b] && lt[b][a])
        throw NotAPartialOrder(format_word(words[a]) + " and " + format_word(words[b]) + " are related both ways");
  std::vector<std::pair<Word, Word>> covers;
  for (size_t hi = 0; hi < N; ++hi)
    for (size_t lo = 0; lo < N; ++lo) {
      if (!lt[lo][hi]) continue;
      bool direct = true;
      for (size_t m = 0; m < N && direct; ++m)
        if (m != lo && m != hi && lt[lo][m] && lt[m][hi]) direct = false;
      if (direct) covers.emplace_back(words[hi], words[lo]);
    }
  return covers;
}

std::string hasse(const std::vector<Word>& input, const std::function<bool(const Word&, const Word&)>& leq) {
  const auto covers = hasse_covers(input, leq);
  std::ostringstream os;
  os << "digraph hasse {\n  rankdir=TB;\n  node [shape=plaintext];\n";
  for (const auto& w : hasse_order(input)) os << "  \"" << format_word(w) << "\";\n";
  for (const auto& [hi, lo] : covers) os << "  \"" << format_word(hi) << "\" -> \"" << format_word(lo) << "\";\n";
  os << "}\n";
  return os.str();
}

bool SplittingReport::consistent() const {
  if (u > 0) return acbac && !cabca;
  if (u < 0) return cabca && !acbac;
  return acbac && cabca;
}

nlohmann::json SplittingReport::to_json() const {
  nlohmann::json j{{"u", to_string(u)},   {"acbac", acbac},        {"cabca", cabca},
                   {"points", points},    {"consistent", consistent()}};
  j["u_values"] = rationals_json(u_values);
  const Permutation acb = parse_word("[acb]", 3).front();
  if (acbac_sample) j["acbac_sample"] = sample_json(acb, *acbac_sample);
  if (cabca_sample) j["cabca_sample"] = sample_json(acb, *cabca_sample);
  return j;
}

SplittingReport hr_splitting_report(const Rational& u, int grid, int threads) {
  const SectionFamily fam = build_perturbed_family(FamilyKind::BetaPrime, std::nullopt);
  const Word acbac = parse_word("acbac", 3), cabca = parse_word("cabca", 3);
  SplittingReport rep;
  rep.u = u;
  rep.u.canonicalize();
  if (u == 0) rep.u_values = {Rational(-1, 10), Rational(0), Rational(1, 10)};
  else rep.u_values = {u};
  const std::vector<GridAxis> axes(2, GridAxis{Rational(-1, 4), Rational(1, 4), grid});
  for (const auto& uv : rep.u_values)
    for (auto& g : stratum_map(fam, axes, uv, threads)) {
      ++rep.points;
      const Word w = g.iti.word();
      if (w == acbac && !rep.acbac) {
        rep.acbac = true;
        rep.acbac_sample = SectionSample{g.x, g.iti, uv};
      }
      if (w == cabca && !rep.cabca) {
        rep.cabca = true;
        rep.cabca_sample = SectionSample{g.x, g.iti, uv};
      }
    }
  return rep;
}

}  // namespace strata
