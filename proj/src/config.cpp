#include "frsr/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "frsr/error.hpp"

namespace frsr {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

double to_double(const std::string& raw, const std::string& where) {
  double v = 0.0;
  const auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
  if (res.ec != std::errc() || res.ptr != raw.data() + raw.size() || raw.empty()) {
    fail(where, "expected a number, got '" + raw + "'");
  }
  return v;
}

std::uint64_t to_u64(const std::string& raw, const std::string& where) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
  if (res.ec != std::errc() || res.ptr != raw.data() + raw.size() || raw.empty()) {
    fail(where, "expected a non-negative integer, got '" + raw + "'");
  }
  return v;
}

// `[a, b]` or a bare scalar
std::vector<std::string> list_items(const std::string& raw) {
  if (raw.size() >= 2 && raw.front() == '[' && raw.back() == ']') {
    std::vector<std::string> items = split(std::string_view(raw).substr(1, raw.size() - 2), ',');
    if (items.size() == 1 && items.front().empty()) items.clear();
    return items;
  }
  return {raw};
}

std::vector<double> to_list(const std::string& raw, const std::string& where) {
  std::vector<double> out;
  for (const std::string& item : list_items(raw)) out.push_back(to_double(item, where));
  if (out.empty()) fail(where, "empty list");
  return out;
}

std::string list_text(const std::vector<double>& v) {
  if (v.size() == 1) return format_double(v.front());
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_double(v[i]);
  return out + "]";
}

bool is_scenario_key(const std::string& key) {
  for (const char* prefix : {"alloc.", "contract.", "dist.", "utility.", "quad."}) {
    if (key.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

struct RawBlock {
  std::string name;
  int line = 0;
  std::map<std::string, std::pair<std::string, int>> keys;  // value, line
};

std::string where(const RawBlock& b, const std::string& key, int line) {
  return "line " + std::to_string(line) + ": [" + b.name + "] " + key;
}

ScenarioBlock build_block(const RawBlock& raw) {
  ScenarioBlock b;
  b.name = raw.name;
  auto get = [&](const std::string& key) -> const std::pair<std::string, int>* {
    auto it = raw.keys.find(key);
    return it == raw.keys.end() ? nullptr : &it->second;
  };
  auto need = [&](const std::string& key) -> const std::pair<std::string, int>& {
    const auto* v = get(key);
    if (!v) {
      throw ConfigError("[" + raw.name + "] (line " + std::to_string(raw.line) +
                        "): missing required field " + key);
    }
    return *v;
  };

  for (const auto& [key, value] : raw.keys) {
    static const std::set<std::string> known{
        "alloc.L",     "alloc.beta",  "contract.D",     "contract.alpha", "dist.kind",
        "dist.atoms",  "dist.r0",     "dist.lo",        "dist.hi",        "dist.a",
        "dist.b",      "dist.mu",     "dist.sigma",     "dist.nodes",     "quad.nodes",
        "utility.family", "utility.param", "utility.domain"};
    if (!known.contains(key)) fail(where(raw, key, value.second), "unknown field");
  }

  if (const auto* v = get("alloc.L")) b.total = to_list(v->first, where(raw, "alloc.L", v->second));
  {
    const auto& v = need("alloc.beta");
    b.beta = to_list(v.first, where(raw, "alloc.beta", v.second));
  }
  {
    const auto& v = need("contract.D");
    b.rate = to_list(v.first, where(raw, "contract.D", v.second));
  }
  if (const auto* v = get("contract.alpha")) {
    b.share = to_list(v->first, where(raw, "contract.alpha", v->second));
  }

  const auto& kind = need("dist.kind");
  b.dist.kind = kind.first;
  auto num = [&](const char* key, double fallback, bool required) {
    const auto* v = required ? &need(key) : get(key);
    return v ? to_double(v->first, where(raw, key, v->second)) : fallback;
  };
  if (b.dist.kind == "degenerate") {
    b.dist.r0 = num("dist.r0", 0.0, true);
    b.dist.lo = b.dist.hi = 0.0;
  } else if (b.dist.kind == "discrete") {
    const auto& v = need("dist.atoms");
    const std::string w = where(raw, "dist.atoms", v.second);
    for (const std::string& item : split(v.first, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) fail(w, "atom '" + item + "' must be value:probability");
      b.dist.atoms.push_back(
          {to_double(trim(item.substr(0, colon)), w), to_double(trim(item.substr(colon + 1)), w)});
    }
    b.dist.lo = b.dist.hi = 0.0;
  } else if (b.dist.kind == "uniform") {
    b.dist.lo = num("dist.lo", 0.0, false);
    b.dist.hi = num("dist.hi", 1.0, false);
  } else if (b.dist.kind == "beta") {
    b.dist.a = num("dist.a", 0.0, true);
    b.dist.b = num("dist.b", 0.0, true);
    b.dist.lo = num("dist.lo", 0.0, false);
    b.dist.hi = num("dist.hi", 1.0, false);
  } else if (b.dist.kind == "truncnormal") {
    b.dist.a = num("dist.mu", 0.0, true);
    b.dist.b = num("dist.sigma", 0.0, true);
    b.dist.lo = num("dist.lo", 0.0, false);
    b.dist.hi = num("dist.hi", 1.0, false);
  } else {
    fail(where(raw, "dist.kind", kind.second),
         "unknown kind '" + b.dist.kind + "' (degenerate|discrete|uniform|beta|truncnormal)");
  }
  for (const char* key : {"dist.nodes", "quad.nodes"}) {
    if (const auto* v = get(key)) {
      b.dist.nodes = static_cast<int>(to_u64(v->first, where(raw, key, v->second)));
    }
  }

  if (const auto* v = get("utility.family")) b.utility.family = v->first;
  if (const auto* v = get("utility.param")) {
    b.utility.params = to_list(v->first, where(raw, "utility.param", v->second));
  }
  if (const auto* v = get("utility.domain")) {
    const std::string w = where(raw, "utility.domain", v->second);
    const auto items = split(v->first, ',');
    if (items.size() != 2) fail(w, "expected 'lo, hi'");
    b.utility.domain = PayoffDomain{to_double(items[0], w), to_double(items[1], w)};
  }
  return b;
}

UtilityFunction::Family parse_family(const std::string& name, const std::string& where_) {
  using F = UtilityFunction::Family;
  if (name == "cara") return F::Cara;
  if (name == "quadratic") return F::Quadratic;
  if (name == "power") return F::Power;
  if (name == "logshift") return F::LogShift;
  fail(where_, "unknown family '" + name + "' (cara|quadratic|power|logshift)");
}

// Builds every distribution / utility once so invalid parameters surface at parse time.
void validate_block(const ScenarioBlock& b) {
  const std::string prefix = "[" + b.name + "] ";
  ReturnDistribution dist = ReturnDistribution::degenerate(0.5);
  try {
    dist = build_distribution(b.dist);
  } catch (const ValidationError& e) {
    throw ConfigError(prefix + "dist: " + e.what());
  }
  const auto family = parse_family(b.utility.family, prefix + "utility.family");
  const PayoffDomain domain = b.utility.domain.value_or(default_payoff_domain(dist));
  for (double p : b.utility.params) {
    try {
      UtilityFunction(family, p, domain);
    } catch (const ValidationError& e) {
      throw ConfigError(prefix + "utility: " + e.what());
    }
  }
  for (double L : b.total) {
    for (double beta : b.beta) {
      try {
        FundAllocation(L, beta);
      } catch (const ValidationError& e) {
        throw ConfigError(prefix + "alloc: " + e.what());
      }
    }
  }
  for (double d : b.rate) {
    if (!(d > 0.0 && d < 1.0)) throw ConfigError(prefix + "contract.D: must lie in (0, 1)");
  }
  for (double a : b.share) {
    if (!(a > 0.0 && a < 1.0)) throw ConfigError(prefix + "contract.alpha: must lie in (0, 1)");
  }
  if (b.dist.nodes && *b.dist.nodes < 2) throw ConfigError(prefix + "dist.nodes: must be >= 2");
}

}  // namespace

ReturnDistribution build_distribution(const DistSpec& spec) {
  if (spec.kind == "degenerate") return ReturnDistribution::degenerate(spec.r0);
  if (spec.kind == "discrete") return ReturnDistribution::discrete(spec.atoms);
  if (spec.kind == "uniform") return ReturnDistribution::uniform(spec.lo, spec.hi);
  if (spec.kind == "beta") return ReturnDistribution::scaled_beta(spec.a, spec.b, spec.lo, spec.hi);
  if (spec.kind == "truncnormal") {
    return ReturnDistribution::truncated_normal(spec.a, spec.b, spec.lo, spec.hi);
  }
  throw ValidationError("unknown distribution kind '" + spec.kind + "'");
}

std::vector<ScenarioBlock> default_grid_blocks() {
  std::vector<ScenarioBlock> out;
  const auto dists = default_distributions();
  const std::vector<std::pair<std::string, double>> utilities{
      {"cara", 10.0}, {"quadratic", 0.5}, {"power", 0.5}, {"logshift", 0.05}};
  for (const auto& [name, dist] : dists) {
    for (const auto& [family, param] : utilities) {
      ScenarioBlock b;
      b.name = name + "-" + family;
      b.beta = {0.5, 0.6, 0.75, 0.9};
      b.rate = {0.05, 0.1, 0.2, 0.4};
      b.share = {0.2};
      b.dist.kind = std::string(kind_name(dist.kind()));
      switch (dist.kind()) {
        case ReturnDistribution::Kind::Degenerate:
          b.dist.r0 = dist.lo();
          b.dist.lo = b.dist.hi = 0.0;
          break;
        case ReturnDistribution::Kind::Discrete:
          b.dist.atoms.assign(dist.law().atoms().begin(), dist.law().atoms().end());
          b.dist.lo = b.dist.hi = 0.0;
          break;
        case ReturnDistribution::Kind::Uniform:
          b.dist.lo = 0.0;
          b.dist.hi = 1.0;
          break;
        case ReturnDistribution::Kind::ScaledBeta:
        case ReturnDistribution::Kind::TruncatedNormal:
          b.dist.a = dist.shape1();
          b.dist.b = dist.shape2();
          b.dist.lo = 0.0;
          b.dist.hi = 1.0;
          break;
      }
      b.utility.family = family;
      b.utility.params = {param};
      out.push_back(std::move(b));
    }
  }
  return out;
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::vector<RawBlock> raw_blocks;
  RawBlock* current = nullptr;
  std::set<std::string> seen_run_keys;

  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const std::string at = "line " + std::to_string(lineno);

    if (body.front() == '[' && body.back() == ']') {
      const std::string name = trim(std::string_view(body).substr(1, body.size() - 2));
      if (name.empty()) fail(at, "empty section name");
      for (const RawBlock& b : raw_blocks) {
        if (b.name == name) fail(at, "duplicate section [" + name + "]");
      }
      raw_blocks.push_back({name, lineno, {}});
      current = &raw_blocks.back();
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail(at, "expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) fail(at, "missing key");

    if (is_scenario_key(key)) {
      if (!current) {
        raw_blocks.push_back({"scenario", lineno, {}});
        current = &raw_blocks.back();
      }
      if (!current->keys.emplace(key, std::make_pair(value, lineno)).second) {
        fail(at + ": " + key, "duplicate key");
      }
      continue;
    }
    if (current) fail(at + ": " + key, "run-level key inside section [" + current->name + "]");
    if (!seen_run_keys.insert(key).second) fail(at + ": " + key, "duplicate key");

    const std::string w = at + ": " + key;
    if (key == "seed") {
      cfg.seed = to_u64(value, w);
    } else if (key == "mc_samples") {
      cfg.mc_samples = to_u64(value, w);
    } else if (key == "jobs") {
      cfg.jobs = static_cast<unsigned>(std::max<std::uint64_t>(1, to_u64(value, w)));
    } else if (key == "tol.rate") {
      cfg.tol.rate = to_double(value, w);
    } else if (key == "tol.payoff") {
      cfg.tol.payoff = to_double(value, w);
    } else if (key == "tol.utility") {
      cfg.tol.utility = to_double(value, w);
    } else if (key == "max_iter") {
      cfg.tol.max_iter = static_cast<int>(to_u64(value, w));
    } else if (key == "max_grid") {
      cfg.max_grid = to_u64(value, w);
    } else if (key == "noise_scale") {
      cfg.noise_scale = to_double(value, w);
      if (!(*cfg.noise_scale > 0.0)) fail(w, "must be > 0");
    } else if (key == "timestamp") {
      cfg.timestamp = value;
    } else if (key == "propositions") {
      cfg.propositions.clear();
      for (const std::string& item : list_items(value)) {
        const auto p = parse_proposition(item);
        if (!p) fail(w, "unknown proposition '" + item + "' (P3_1|P4_1|P5_1)");
        cfg.propositions.insert(*p);
      }
    } else if (key == "preset") {
      if (value != "default_grid") fail(w, "unknown preset '" + value + "'");
      for (ScenarioBlock& b : default_grid_blocks()) {
        cfg.blocks.push_back(std::move(b));
      }
    } else {
      fail(w, "unknown key");
    }
  }

  for (const RawBlock& raw : raw_blocks) {
    for (const ScenarioBlock& b : cfg.blocks) {
      if (b.name == raw.name) fail("[" + raw.name + "]", "duplicate section name");
    }
    cfg.blocks.push_back(build_block(raw));
  }
  if (cfg.blocks.empty()) throw ConfigError("config: no scenarios (add a [section] or preset)");
  for (const ScenarioBlock& b : cfg.blocks) validate_block(b);
  if (cfg.tol.rate <= 0.0 || cfg.tol.payoff <= 0.0 || cfg.tol.utility <= 0.0) {
    throw ConfigError("tol.*: tolerances must be > 0");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string dump_config(const RunConfig& c) {
  std::ostringstream os;
  os << "seed = " << c.seed << "\n";
  os << "mc_samples = " << c.mc_samples << "\n";
  os << "jobs = " << c.jobs << "\n";
  os << "tol.rate = " << format_double(c.tol.rate) << "\n";
  os << "tol.payoff = " << format_double(c.tol.payoff) << "\n";
  os << "tol.utility = " << format_double(c.tol.utility) << "\n";
  os << "max_iter = " << c.tol.max_iter << "\n";
  os << "max_grid = " << c.max_grid << "\n";
  os << "propositions = [";
  bool first = true;
  for (Proposition p : c.propositions) {
    os << (first ? "" : ", ") << proposition_name(p);
    first = false;
  }
  os << "]\n";
  if (c.noise_scale) os << "noise_scale = " << format_double(*c.noise_scale) << "\n";
  if (c.timestamp) os << "timestamp = " << *c.timestamp << "\n";

  for (const ScenarioBlock& b : c.blocks) {
    os << "\n[" << b.name << "]\n";
    os << "alloc.L = " << list_text(b.total) << "\n";
    os << "alloc.beta = " << list_text(b.beta) << "\n";
    os << "contract.D = " << list_text(b.rate) << "\n";
    os << "contract.alpha = " << list_text(b.share) << "\n";
    os << "dist.kind = " << b.dist.kind << "\n";
    const DistSpec& d = b.dist;
    if (d.kind == "degenerate") {
      os << "dist.r0 = " << format_double(d.r0) << "\n";
    } else if (d.kind == "discrete") {
      os << "dist.atoms = ";
      for (std::size_t i = 0; i < d.atoms.size(); ++i) {
        os << (i ? ", " : "") << format_double(d.atoms[i].value) << ":"
           << format_double(d.atoms[i].prob);
      }
      os << "\n";
    } else {
      if (d.kind == "beta") {
        os << "dist.a = " << format_double(d.a) << "\ndist.b = " << format_double(d.b) << "\n";
      } else if (d.kind == "truncnormal") {
        os << "dist.mu = " << format_double(d.a) << "\ndist.sigma = " << format_double(d.b)
           << "\n";
      }
      os << "dist.lo = " << format_double(d.lo) << "\ndist.hi = " << format_double(d.hi) << "\n";
    }
    if (d.nodes) os << "dist.nodes = " << *d.nodes << "\n";
    os << "utility.family = " << b.utility.family << "\n";
    os << "utility.param = " << list_text(b.utility.params) << "\n";
    if (b.utility.domain) {
      os << "utility.domain = " << format_double(b.utility.domain->lo) << ", "
         << format_double(b.utility.domain->hi) << "\n";
    }
  }
  return os.str();
}

std::vector<Scenario> expand(const RunConfig& config) {
  std::size_t total = 0;
  for (const ScenarioBlock& b : config.blocks) {
    total += b.total.size() * b.beta.size() * b.rate.size() * b.share.size() *
             b.utility.params.size();
  }
  if (total > config.max_grid) {
    throw ConfigError("grid expands to " + std::to_string(total) + " scenarios, above max_grid = " +
                      std::to_string(config.max_grid) + " (raise with --max-grid)");
  }

  std::vector<Scenario> out;
  out.reserve(total);
  for (const ScenarioBlock& b : config.blocks) {
    const ReturnDistribution dist = build_distribution(b.dist);
    const auto family = parse_family(b.utility.family, "[" + b.name + "] utility.family");
    const PayoffDomain domain = b.utility.domain.value_or(default_payoff_domain(dist));
    const std::size_t block_size = b.total.size() * b.beta.size() * b.rate.size() *
                                   b.share.size() * b.utility.params.size();
    std::size_t k = 0;
    for (double L : b.total) {
      for (double beta : b.beta) {
        for (double rate : b.rate) {
          for (double share : b.share) {
            for (double param : b.utility.params) {
              Scenario s;
              s.id = block_size == 1 ? b.name : b.name + "#" + std::to_string(k);
              s.alloc = FundAllocation(L, beta);
              s.dist = dist;
              s.rate = rate;
              s.share = share;
              s.utility = UtilityFunction(family, param, domain);
              if (b.dist.nodes) s.quad.nodes = *b.dist.nodes;
              s.tol = config.tol;
              s.seed = derive_seed(config.seed, out.size());
              out.push_back(std::move(s));
              ++k;
            }
          }
        }
      }
    }
  }
  return out;
}

}  // namespace frsr
