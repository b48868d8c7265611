#include "spd/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace spd {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

double parse_double(const std::string& s, int line, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ConfigError(line, "key '" + key + "': not a number: '" + s + "'");
  }
}

std::uint64_t parse_uint(const std::string& s, int line, const std::string& key) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw ConfigError(line, "key '" + key + "': not a nonnegative integer: '" + s + "'");
  return v;
}

std::vector<double> parse_list(const std::string& s, int line, const std::string& key) {
  std::vector<double> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(parse_double(tok, line, key));
  if (out.empty()) throw ConfigError(line, "key '" + key + "': empty list");
  return out;
}

// rows separated by ';', entries by whitespace
std::vector<std::vector<double>> parse_rows(const std::string& s, int line,
                                            const std::string& key) {
  std::vector<std::vector<double>> rows;
  for (const auto& part : split(s, ';')) {
    const std::string t = trim(part);
    if (t.empty()) throw ConfigError(line, "key '" + key + "': empty row");
    rows.push_back(parse_list(t, line, key));
  }
  return rows;
}

Matrix reshape_row_major(const std::vector<double>& flat, Index rows, Index cols, int line,
                         const std::string& key) {
  if (static_cast<Index>(flat.size()) != rows * cols)
    throw ConfigError(line, "key '" + key + "': expected " + std::to_string(rows * cols) +
                                " entries, got " + std::to_string(flat.size()));
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = flat[static_cast<std::size_t>(i * cols + j)];
  return m;
}

Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Index>(v.size()));
}

struct RawEntry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, RawEntry>;

const std::map<std::string, std::vector<std::string>> kKnownKeys = {
    {"problem",
     {"generator", "atoms", "probs", "c", "d", "k", "q_atoms", "b_atoms", "l_atoms",
      "c_atoms", "primal_set", "box_lo", "box_hi", "point", "l1_weight"}},
    {"schedule", {"gamma0", "exponent", "offset"}},
    {"run", {"n_iters", "record_every", "seeds", "output"}},
    {"oracle", {"box_halfwidth", "grid_resolution", "gamma_ref"}},
};

class Entries {
 public:
  std::map<std::string, Section> sections;

  const RawEntry* find(const std::string& section, const std::string& key) const {
    const auto s = sections.find(section);
    if (s == sections.end()) return nullptr;
    const auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  }

  const RawEntry& need(const std::string& section, const std::string& key) const {
    const RawEntry* e = find(section, key);
    if (!e)
      throw ConfigError(0, "missing required key '" + key + "' in section [" + section + "]");
    return *e;
  }
};

Entries tokenize(const std::string& text) {
  Entries entries;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(line, "malformed section header: '" + s + "'");
      section = trim(s.substr(1, s.size() - 2));
      if (!kKnownKeys.count(section))
        throw ConfigError(line, "unknown section [" + section + "]");
      entries.sections[section];
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError(line, "expected 'key = value', got: '" + s + "'");
    if (section.empty()) throw ConfigError(line, "key outside of any [section]");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    const auto& known = kKnownKeys.at(section);
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError(line, "unknown key '" + key + "' in section [" + section + "]");
    auto [it, inserted] = entries.sections[section].emplace(key, RawEntry{value, line});
    if (!inserted) throw ConfigError(line, "duplicate key '" + key + "'");
  }
  return entries;
}

void check_probs_entry(const std::vector<double>& probs, int line) {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p > 0.0)) throw ConfigError(line, "every probability must be positive");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw ConfigError(line, "probabilities must sum to 1");
}

void reject_keys(const Entries& e, const std::string& generator,
                 const std::vector<std::string>& keys) {
  for (const auto& key : keys)
    if (const RawEntry* entry = e.find("problem", key))
      throw ConfigError(entry->line,
                        "key '" + key + "' does not apply to generator '" + generator + "'");
}

MarkowitzSpec parse_markowitz(const Entries& e) {
  reject_keys(e, "markowitz",
              {"d", "k", "q_atoms", "b_atoms", "l_atoms", "c_atoms", "primal_set", "box_lo",
               "box_hi", "point", "l1_weight"});
  MarkowitzSpec spec;
  const RawEntry& atoms = e.need("problem", "atoms");
  for (const auto& row : parse_rows(atoms.value, atoms.line, "atoms"))
    spec.atoms.push_back(to_vector(row));
  for (const auto& a : spec.atoms)
    if (a.size() != spec.atoms.front().size())
      throw ConfigError(atoms.line, "atoms rows must share one dimension");
  const RawEntry& probs = e.need("problem", "probs");
  spec.probs = parse_list(probs.value, probs.line, "probs");
  if (spec.probs.size() != spec.atoms.size())
    throw ConfigError(probs.line, "probs length must match the number of atoms");
  check_probs_entry(spec.probs, probs.line);
  const RawEntry& c = e.need("problem", "c");
  spec.c = parse_double(c.value, c.line, "c");
  return spec;
}

ProxFunction parse_primal_set(const Entries& e, Index d) {
  const RawEntry& ps = e.need("problem", "primal_set");
  const std::string& name = ps.value;
  if (name == "free" || name == "zero") return Zero{};
  if (name == "simplex") return IndicatorSimplex{};
  if (name == "box") {
    const RawEntry& lo = e.need("problem", "box_lo");
    const RawEntry& hi = e.need("problem", "box_hi");
    Vector vlo = to_vector(parse_list(lo.value, lo.line, "box_lo"));
    Vector vhi = to_vector(parse_list(hi.value, hi.line, "box_hi"));
    if (vlo.size() != d || vhi.size() != d)
      throw ConfigError(lo.line, "box bounds must have length d");
    if (!(vlo.array() <= vhi.array()).all())
      throw ConfigError(lo.line, "box requires box_lo <= box_hi");
    return IndicatorBox{std::move(vlo), std::move(vhi)};
  }
  if (name == "point") {
    const RawEntry& pt = e.need("problem", "point");
    Vector v = to_vector(parse_list(pt.value, pt.line, "point"));
    if (v.size() != d) throw ConfigError(pt.line, "point must have length d");
    return IndicatorPoint{std::move(v)};
  }
  if (name == "l1") {
    const RawEntry& w = e.need("problem", "l1_weight");
    const double weight = parse_double(w.value, w.line, "l1_weight");
    if (!(weight > 0.0)) throw ConfigError(w.line, "l1_weight must be positive");
    return L1{weight};
  }
  throw ConfigError(ps.line, "unknown primal_set '" + name +
                                 "' (expected free, simplex, box, point, or l1)");
}

ConstrainedQpSpec parse_constrained_qp(const Entries& e) {
  reject_keys(e, "constrained_qp", {"atoms", "c"});
  ConstrainedQpSpec spec;
  const RawEntry& d = e.need("problem", "d");
  const RawEntry& k = e.need("problem", "k");
  spec.d = static_cast<Index>(parse_uint(d.value, d.line, "d"));
  spec.k = static_cast<Index>(parse_uint(k.value, k.line, "k"));
  if (spec.d < 1 || spec.k < 1) throw ConfigError(d.line, "d and k must be >= 1");

  const RawEntry& probs = e.need("problem", "probs");
  spec.probs = parse_list(probs.value, probs.line, "probs");
  check_probs_entry(spec.probs, probs.line);
  const std::size_t M = spec.probs.size();

  auto rows_of = [&](const char* key, std::size_t expect) {
    const RawEntry& entry = e.need("problem", key);
    auto rows = parse_rows(entry.value, entry.line, key);
    if (rows.size() != expect)
      throw ConfigError(entry.line, std::string("key '") + key + "': expected " +
                                        std::to_string(expect) + " atoms, got " +
                                        std::to_string(rows.size()));
    return std::pair{rows, entry.line};
  };

  const auto [q_rows, q_line] = rows_of("q_atoms", M);
  for (const auto& r : q_rows)
    spec.Q_atoms.push_back(reshape_row_major(r, spec.d, spec.d, q_line, "q_atoms"));
  const auto [b_rows, b_line] = rows_of("b_atoms", M);
  for (const auto& r : b_rows) {
    if (static_cast<Index>(r.size()) != spec.d)
      throw ConfigError(b_line, "key 'b_atoms': each atom needs d entries");
    spec.b_atoms.push_back(to_vector(r));
  }
  const auto [l_rows, l_line] = rows_of("l_atoms", M);
  for (const auto& r : l_rows)
    spec.L_atoms.push_back(reshape_row_major(r, spec.k, spec.d, l_line, "l_atoms"));
  const auto [c_rows, c_line] = rows_of("c_atoms", M);
  for (const auto& r : c_rows) {
    if (static_cast<Index>(r.size()) != spec.k)
      throw ConfigError(c_line, "key 'c_atoms': each atom needs k entries");
    spec.c_atoms.push_back(to_vector(r));
  }
  spec.primal_set = parse_primal_set(e, spec.d);
  return spec;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  const Entries e = tokenize(text);
  ExperimentConfig cfg;

  const RawEntry& gen = e.need("problem", "generator");
  if (gen.value == "markowitz")
    cfg.problem = parse_markowitz(e);
  else if (gen.value == "constrained_qp")
    cfg.problem = parse_constrained_qp(e);
  else
    throw ConfigError(gen.line, "unknown generator '" + gen.value +
                                    "' (expected markowitz or constrained_qp)");

  if (const RawEntry* g0 = e.find("schedule", "gamma0"))
    cfg.schedule.gamma0 = parse_double(g0->value, g0->line, "gamma0");
  if (const RawEntry* ex = e.find("schedule", "exponent"))
    cfg.schedule.exponent = parse_double(ex->value, ex->line, "exponent");
  if (const RawEntry* off = e.find("schedule", "offset"))
    cfg.schedule.offset = static_cast<std::int64_t>(parse_uint(off->value, off->line, "offset"));
  if (auto violation = validate_schedule(cfg.schedule)) {
    const RawEntry* any = e.find("schedule", "gamma0");
    if (!any) any = e.find("schedule", "exponent");
    throw ConfigError(any ? any->line : 0, "invalid schedule: " + *violation);
  }

  const RawEntry& iters = e.need("run", "n_iters");
  cfg.n_iters = parse_uint(iters.value, iters.line, "n_iters");
  if (cfg.n_iters < 1) throw ConfigError(iters.line, "n_iters must be >= 1");
  if (const RawEntry* re = e.find("run", "record_every")) {
    cfg.record_every = parse_uint(re->value, re->line, "record_every");
    if (cfg.record_every < 1 || cfg.record_every > cfg.n_iters)
      throw ConfigError(re->line, "record_every must be in [1, n_iters]");
  } else {
    cfg.record_every = std::min<std::size_t>(1000, cfg.n_iters);
  }
  const RawEntry& seeds = e.need("run", "seeds");
  {
    std::istringstream in(seeds.value);
    std::string tok;
    while (in >> tok) cfg.seeds.push_back(parse_uint(tok, seeds.line, "seeds"));
    if (cfg.seeds.empty()) throw ConfigError(seeds.line, "seeds: empty list");
  }
  const RawEntry& output = e.need("run", "output");
  if (output.value.empty()) throw ConfigError(output.line, "output: empty path");
  cfg.output = output.value;

  if (const RawEntry* bh = e.find("oracle", "box_halfwidth")) {
    cfg.oracle.box_halfwidth = parse_double(bh->value, bh->line, "box_halfwidth");
    if (!(cfg.oracle.box_halfwidth > 0.0))
      throw ConfigError(bh->line, "box_halfwidth must be positive");
  }
  if (const RawEntry* gr = e.find("oracle", "grid_resolution")) {
    cfg.oracle.grid_resolution = parse_double(gr->value, gr->line, "grid_resolution");
    if (!(cfg.oracle.grid_resolution > 0.0))
      throw ConfigError(gr->line, "grid_resolution must be positive");
  }
  if (const RawEntry* gref = e.find("oracle", "gamma_ref")) {
    cfg.oracle.gamma_ref = parse_double(gref->value, gref->line, "gamma_ref");
    if (!(cfg.oracle.gamma_ref > 0.0)) throw ConfigError(gref->line, "gamma_ref must be positive");
  }
  return cfg;
}

ProblemPair ExperimentConfig::build() const {
  if (const auto* m = std::get_if<MarkowitzSpec>(&problem))
    return markowitz_problem(m->atoms, m->probs, m->c);
  const auto& q = std::get<ConstrainedQpSpec>(problem);
  return constrained_qp_problem(q.Q_atoms, q.b_atoms, q.L_atoms, q.c_atoms, q.probs,
                                q.primal_set);
}

FiniteDistribution ExperimentConfig::distribution() const {
  if (const auto* m = std::get_if<MarkowitzSpec>(&problem)) return FiniteDistribution(m->probs);
  return FiniteDistribution(std::get<ConstrainedQpSpec>(problem).probs);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace spd
