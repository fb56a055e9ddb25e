#include "raptor/degree.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "raptor/errors.hpp"

namespace raptor {

namespace {

// floor(cdf * 2^64) ladder for inverse-CDF sampling
std::vector<unsigned __int128> grid_thresholds(const std::vector<Rat>& cdf) {
  std::vector<unsigned __int128> thr;
  thr.reserve(cdf.size());
  Int two64 = Int(1) << 64;
  for (const Rat& c : cdf) {
    Int scaled = Int(c.get_num()) * two64 / Int(c.get_den());
    unsigned __int128 v = 0;
    Int hi = scaled >> 64;
    Int lo = scaled - (hi << 64);
    v = (static_cast<unsigned __int128>(hi.get_ui()) << 64) | lo.get_ui();
    thr.push_back(v);
  }
  return thr;
}

uint32_t pick(const std::vector<unsigned __int128>& thr, Rng& rng) {
  uint64_t r = rng.next();
  for (size_t i = 0; i < thr.size(); ++i)
    if (static_cast<unsigned __int128>(r) < thr[i]) return static_cast<uint32_t>(i);
  return static_cast<uint32_t>(thr.size() - 1);
}

void check_total(Rat& total, std::vector<Rat>& probs) {
  Rat diff = total - 1;
  Rat tol = rat(1, 1'000'000'000);
  if (diff > tol || diff < -tol) throw ConfigError("degree distribution does not sum to 1");
  if (total != 1)
    for (Rat& p : probs) p /= total;  // exact renormalization
}

}  // namespace

DegreeDistribution DegreeDistribution::from_terms(std::vector<std::pair<uint32_t, Rat>> terms) {
  if (terms.empty()) throw ConfigError("degree distribution is empty");
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Rat total(0);
  for (size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].first < 1) throw ConfigError("degrees must be >= 1");
    if (i && terms[i].first == terms[i - 1].first) throw ConfigError("duplicate degree");
    if (terms[i].second < 0) throw ConfigError("negative probability");
    total += terms[i].second;
  }
  std::vector<Rat> probs;
  for (auto& [d, p] : terms) probs.push_back(p);
  check_total(total, probs);
  DegreeDistribution dist;
  for (size_t i = 0; i < terms.size(); ++i) dist.terms_.emplace_back(terms[i].first, probs[i]);
  std::vector<Rat> cdf;
  Rat acc(0);
  for (const auto& [d, p] : dist.terms_) {
    acc += p;
    cdf.push_back(acc);
  }
  dist.thresholds_ = grid_thresholds(cdf);
  return dist;
}

uint32_t DegreeDistribution::sample(Rng& rng) const {
  return terms_[pick(thresholds_, rng)].first;
}

BivariateDegreeDistribution BivariateDegreeDistribution::from_terms(std::vector<Term> terms,
                                                                    bool relax_low_degrees) {
  if (terms.empty()) throw ConfigError("bivariate degree distribution is empty");
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return a.j != b.j ? a.j < b.j : a.s < b.s;
  });
  Rat total(0);
  for (size_t i = 0; i < terms.size(); ++i) {
    const Term& t = terms[i];
    if (!relax_low_degrees && (t.j < 1 || t.s < 1))
      throw ConfigError("bivariate distribution requires j >= 1 and s >= 1 (Omega_{0,0}=Omega_{0,1}=Omega_{1,0}=0)");
    if (t.j + t.s == 0) throw ConfigError("Omega_{0,0} must be zero");
    if (t.p < 0) throw ConfigError("negative probability");
    if (i && t.j == terms[i - 1].j && t.s == terms[i - 1].s) throw ConfigError("duplicate degree pair");
    total += t.p;
  }
  std::vector<Rat> probs;
  for (auto& t : terms) probs.push_back(t.p);
  check_total(total, probs);
  BivariateDegreeDistribution dist;
  for (size_t i = 0; i < terms.size(); ++i)
    dist.terms_.push_back({terms[i].j, terms[i].s, probs[i]});
  std::vector<Rat> cdf;
  Rat acc(0);
  for (const Term& t : dist.terms_) {
    acc += t.p;
    cdf.push_back(acc);
  }
  dist.thresholds_ = grid_thresholds(cdf);
  return dist;
}

uint32_t BivariateDegreeDistribution::j_max() const {
  uint32_t m = 0;
  for (const Term& t : terms_) m = std::max(m, t.j);
  return m;
}

uint32_t BivariateDegreeDistribution::s_max() const {
  uint32_t m = 0;
  for (const Term& t : terms_) m = std::max(m, t.s);
  return m;
}

std::pair<uint32_t, uint32_t> BivariateDegreeDistribution::sample(Rng& rng) const {
  const Term& t = terms_[pick(thresholds_, rng)];
  return {t.j, t.s};
}

DegreeDistribution omega_r10() {
  auto c = [](long num) { return rat(num, 10'000); };
  return DegreeDistribution::from_terms({
      {1, c(98)},
      {2, c(4590)},
      {3, c(2110)},
      {4, c(1134)},
      {10, c(1113)},
      {11, c(799)},
      {40, c(156)},
  });
}

BivariateDegreeDistribution omega_rq_bivariate(const DegreeDistribution& base) {
  std::vector<BivariateDegreeDistribution::Term> terms;
  for (const auto& [d, p] : base.terms()) {
    terms.push_back({d, 2, p / 2});
    terms.push_back({d, 3, p / 2});
  }
  return BivariateDegreeDistribution::from_terms(std::move(terms));
}

namespace {

std::vector<std::vector<std::string>> read_rows(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (!toks.empty()) rows.push_back(std::move(toks));
  }
  return rows;
}

}  // namespace

DegreeDistribution parse_degree_file(std::istream& in) {
  std::vector<std::pair<uint32_t, Rat>> terms;
  for (const auto& row : read_rows(in)) {
    if (row.size() != 2) throw ConfigError("degree file rows must be 'degree probability'");
    terms.emplace_back(static_cast<uint32_t>(std::stoul(row[0])), parse_decimal(row[1]));
  }
  return DegreeDistribution::from_terms(std::move(terms));
}

DegreeDistribution load_degree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open degree file: " + path);
  return parse_degree_file(in);
}

BivariateDegreeDistribution parse_bivariate_degree_file(std::istream& in) {
  std::vector<BivariateDegreeDistribution::Term> terms;
  for (const auto& row : read_rows(in)) {
    if (row.size() != 3) throw ConfigError("bivariate degree file rows must be 'j s probability'");
    terms.push_back({static_cast<uint32_t>(std::stoul(row[0])),
                     static_cast<uint32_t>(std::stoul(row[1])), parse_decimal(row[2])});
  }
  return BivariateDegreeDistribution::from_terms(std::move(terms));
}

BivariateDegreeDistribution load_bivariate_degree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open degree file: " + path);
  return parse_bivariate_degree_file(in);
}

}  // namespace raptor
