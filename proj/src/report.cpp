#include "frsr/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <sstream>

#include "json.hpp"

namespace frsr {

namespace {

std::string join_flags(const std::vector<Flag>& flags, std::string_view name) {
  for (const Flag& f : flags) {
    if (f.name == name) return f.value ? "1" : "0";
  }
  return "";
}

SolveStatus worst(SolveStatus a, SolveStatus b) {
  auto rank = [](SolveStatus s) {
    switch (s) {
      case SolveStatus::Success: return 0;
      case SolveStatus::Boundary: return 1;
      case SolveStatus::NotConverged: return 2;
      case SolveStatus::NoRoot: return 3;
    }
    return 3;
  };
  return rank(a) >= rank(b) ? a : b;
}

nlohmann::ordered_json witness_value(const WitnessValue& v) {
  return std::visit([](const auto& x) { return nlohmann::ordered_json(x); }, v);
}

}  // namespace

std::string csv_number(double v) {
  if (!std::isfinite(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SolveRow solve_row(const Scenario& s) {
  SolveRow row;
  row.id = s.id;
  row.beta = s.alloc.beta();
  row.rate = s.rate;
  row.share = s.share;
  row.alpha_star = solve_alpha_star(s.alloc, s.dist, s.rate, s.quad, s.tol);
  row.d_star = solve_d_star(s.alloc, s.dist, s.share, s.quad, s.tol);
  row.status = std::string(status_name(worst(row.alpha_star.status, row.d_star->status)));
  return row;
}

std::string solve_csv(const std::vector<SolveRow>& rows) {
  std::ostringstream os;
  os << "id,beta,D,alpha,alpha_star,d_star,alpha_residual,d_residual,alpha_status,d_status,"
        "status,beta_ge_half,sign_change_found,closed_form_agrees,alpha_star_lt_half\n";
  for (const SolveRow& r : rows) {
    const SolveReport& a = r.alpha_star;
    os << r.id << ',' << csv_number(r.beta) << ',' << csv_number(r.rate) << ','
       << csv_number(r.share) << ',' << (a.has_value() ? csv_number(a.value) : "") << ',';
    if (r.d_star && r.d_star->has_value()) os << csv_number(r.d_star->value);
    os << ',' << csv_number(a.residual) << ',';
    if (r.d_star) os << csv_number(r.d_star->residual);
    os << ',' << status_name(a.status) << ',';
    if (r.d_star) os << status_name(r.d_star->status);
    os << ',' << r.status << ',' << join_flags(a.flags, "beta_ge_half") << ','
       << join_flags(a.flags, "sign_change_found") << ','
       << join_flags(a.flags, "closed_form_agrees") << ','
       << join_flags(a.flags, "alpha_star_lt_half") << '\n';
  }
  return os.str();
}

CompareRow compare_row(const Scenario& s) {
  CompareRow row;
  row.id = s.id;
  row.payoffs = expected_payoffs(s.alloc, s.dist, s.rate, s.share, s.quad);
  const RateTransform sr = RateTransform::linear(s.share);
  const RateTransform fr = RateTransform::call(s.rate);
  row.eu_y1 = expected_utility(s.utility, s.dist, sr, s.quad);
  row.eu_y2 = expected_utility(s.utility, s.dist, fr, s.quad);
  row.ce_y1 = certainty_equivalent(s.utility, s.dist, sr, s.quad);
  row.ce_y2 = certainty_equivalent(s.utility, s.dist, fr, s.quad);
  return row;
}

std::string compare_csv(const std::vector<CompareRow>& rows) {
  std::ostringstream os;
  os << "id,e_p1,e_p2,v_p1,v_p2,e_y1,e_y2,eu_y1,eu_y2,ce_y1,ce_y2\n";
  for (const CompareRow& r : rows) {
    const PayoffSummary& p = r.payoffs;
    os << r.id;
    for (double v : {p.e_p1, p.e_p2, p.v_p1, p.v_p2, p.e_y1, p.e_y2, r.eu_y1, r.eu_y2, r.ce_y1,
                     r.ce_y2}) {
      os << ',' << csv_number(v);
    }
    os << '\n';
  }
  return os.str();
}

std::string report_timestamp(const RunConfig& config) {
  if (config.timestamp) return *config.timestamp;
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH"); env && *env) {
    char* end = nullptr;
    const long long secs = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && secs >= 0) {
      const std::time_t t = static_cast<std::time_t>(secs);
      std::tm tm{};
      gmtime_r(&t, &tm);
      char buf[32];
      std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
      return buf;
    }
  }
  return "1970-01-01T00:00:00Z";
}

std::string report_json(const GridResult& result, std::uint64_t seed,
                        const std::string& timestamp) {
  using json = nlohmann::ordered_json;
  json doc;
  doc["run"] = {{"seed", seed}, {"timestamp", timestamp}, {"tool_version", kToolVersion}};

  json records = json::array();
  for (const VerificationRecord& r : result.records) {
    json rec;
    rec["scenario_id"] = r.scenario_id;
    rec["proposition"] = std::string(proposition_name(r.proposition));
    json premises = json::object();
    for (const Flag& f : r.premises) premises[f.name] = f.value;
    rec["premises"] = std::move(premises);
    rec["conclusion_holds"] = r.conclusion_holds ? json(*r.conclusion_holds) : json(nullptr);
    json witness = json::object();
    for (const WitnessEntry& w : r.witness) witness[w.name] = witness_value(w.value);
    rec["witness"] = std::move(witness);
    if (r.mc) {
      rec["mc"] = {{"estimate", r.mc->estimate},
                   {"std_error", r.mc->std_error},
                   {"agrees", r.mc->agrees},
                   {"quantity", r.mc->quantity},
                   {"quadrature", r.mc->quadrature}};
    } else {
      rec["mc"] = nullptr;
    }
    rec["outcome"] = std::string(outcome_name(r.outcome()));
    if (!r.error.empty()) rec["error"] = r.error;
    records.push_back(std::move(rec));
  }
  doc["records"] = std::move(records);

  json per = json::object();
  for (Proposition p : {Proposition::P3_1, Proposition::P4_1, Proposition::P5_1}) {
    const PropositionSummary& s = result.summary.of(p);
    json entry = {{"premise_failures", s.premise_failures},
                  {"conclusion_failures", s.conclusion_failures},
                  {"passes", s.passes},
                  {"errored", s.errored}};
    if (p == Proposition::P4_1) entry["right_inequality_failures"] = s.right_inequality_failures;
    per[std::string(proposition_name(p))] = std::move(entry);
  }
  doc["summary"] = {{"per_proposition", std::move(per)},
                    {"mc_checks", result.summary.mc_checks},
                    {"mc_agreements", result.summary.mc_agreements}};
  return doc.dump(2) + "\n";
}

std::string summary_csv(const GridSummary& summary) {
  std::ostringstream os;
  os << "proposition,passes,premise_failures,conclusion_failures,errored,"
        "right_inequality_failures\n";
  for (Proposition p : {Proposition::P3_1, Proposition::P4_1, Proposition::P5_1}) {
    const PropositionSummary& s = summary.of(p);
    os << proposition_name(p) << ',' << s.passes << ',' << s.premise_failures << ','
       << s.conclusion_failures << ',' << s.errored << ',' << s.right_inequality_failures << '\n';
  }
  return os.str();
}

}  // namespace frsr
