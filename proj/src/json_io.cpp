#include "spherecap/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace spherecap {

namespace {

WeightKind kind_from_string(const std::string &s) {
  if (s == "constant") return WeightKind::constant;
  if (s == "indicator") return WeightKind::indicator;
  if (s == "power") return WeightKind::power;
  if (s == "table") return WeightKind::table;
  throw std::invalid_argument("weight_from_json: unknown kind '" + s + "'");
}

double require_number(const nlohmann::json &j, const char *key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw std::invalid_argument(std::string("weight_from_json: missing numeric field '") +
                                key + "'");
  return j.at(key).get<double>();
}

} // namespace

nlohmann::json weight_to_json(const Weight &w) {
  nlohmann::json j;
  j["kind"] = to_string(w.kind);
  j["T"] = w.T;
  j["t0"] = w.t0;
  j["T0"] = w.T0;
  if (w.kind == WeightKind::power) j["p"] = w.p;
  if (w.kind == WeightKind::table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &[theta, rho] : w.table) rows.push_back({theta, rho});
    j["table"] = rows;
  }
  return j;
}

Weight weight_from_json(const nlohmann::json &j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw std::invalid_argument("weight_from_json: expected an object with a 'kind' string");
  WeightKind kind = kind_from_string(j.at("kind").get<std::string>());
  double T = require_number(j, "T");
  bool has_t0 = j.contains("t0"), has_T0 = j.contains("T0");
  if (has_t0 != has_T0)
    throw std::invalid_argument("weight_from_json: t0 and T0 must be given together");

  std::vector<std::pair<double, double>> table;
  if (kind == WeightKind::table) {
    if (!j.contains("table") || !j.at("table").is_array())
      throw std::invalid_argument("weight_from_json: table kind requires a 'table' array");
    for (const auto &row : j.at("table")) {
      if (!row.is_array() || row.size() != 2)
        throw std::invalid_argument("weight_from_json: table rows must be [theta, rho]");
      table.emplace_back(row[0].get<double>(), row[1].get<double>());
    }
  }

  if (!has_t0) {
    switch (kind) {
      case WeightKind::constant: return Weight::constant(T);
      case WeightKind::power: return Weight::power(T, require_number(j, "p"));
      case WeightKind::table: return Weight::table_weight(T, std::move(table));
      case WeightKind::indicator:
        throw std::invalid_argument("weight_from_json: indicator kind requires t0 and T0");
    }
  }
  double t0 = require_number(j, "t0"), T0 = require_number(j, "T0");
  switch (kind) {
    case WeightKind::constant: return Weight::constant(T, t0, T0);
    case WeightKind::indicator: return Weight::indicator(T, t0, T0);
    case WeightKind::power: return Weight::power(T, require_number(j, "p"), t0, T0);
    case WeightKind::table: return Weight::table_weight(T, std::move(table), t0, T0);
  }
  throw std::invalid_argument("weight_from_json: unreachable kind");
}

nlohmann::json coeffs_to_json(const HarmonicCoeffs &c) {
  nlohmann::json j;
  j["d"] = c.d;
  j["L"] = c.L;
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto &block : c.blocks) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto &z : block) {
      if (z.imag() == 0.0)
        row.push_back(z.real());
      else
        row.push_back({z.real(), z.imag()});
    }
    blocks.push_back(std::move(row));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

HarmonicCoeffs coeffs_from_json(const nlohmann::json &j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("L") || !j.contains("blocks"))
    throw std::invalid_argument("coeffs_from_json: expected {d, L, blocks}");
  HarmonicCoeffs c;
  c.d = j.at("d").get<int>();
  c.L = j.at("L").get<int>();
  if (c.d < 2 || c.L < 0) throw std::invalid_argument("coeffs_from_json: bad d or L");
  const auto &blocks = j.at("blocks");
  if (!blocks.is_array() || blocks.size() != static_cast<std::size_t>(c.L) + 1)
    throw std::invalid_argument("coeffs_from_json: expected L+1 blocks");
  c.blocks.resize(c.L + 1);
  for (int l = 0; l <= c.L; ++l) {
    const auto &row = blocks[l];
    std::size_t want = static_cast<std::size_t>(harmonic_dim(c.d, l));
    if (!row.is_array() || row.size() != want)
      throw std::invalid_argument("coeffs_from_json: block " + std::to_string(l) +
                                  " must have " + std::to_string(want) + " entries");
    c.blocks[l].reserve(want);
    for (const auto &e : row) {
      if (e.is_number()) {
        c.blocks[l].emplace_back(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2) {
        c.blocks[l].emplace_back(e[0].get<double>(), e[1].get<double>());
      } else {
        throw std::invalid_argument(
            "coeffs_from_json: entries must be numbers or [re, im] pairs");
      }
    }
  }
  return c;
}

nlohmann::json report_to_json(const NormReport &r) {
  return nlohmann::json{{"alpha", r.alpha},   {"lhs", r.lhs},       {"rhs", r.rhs},
                        {"ratio", r.ratio},   {"branch", r.branch}, {"warnings", r.warnings}};
}

NormReport report_from_json(const nlohmann::json &j) {
  NormReport r;
  r.alpha = j.at("alpha").get<double>();
  r.lhs = j.at("lhs").get<double>();
  r.rhs = j.at("rhs").get<double>();
  r.ratio = j.at("ratio").get<double>();
  r.branch = j.at("branch").get<std::string>();
  if (j.contains("warnings")) r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

nlohmann::json sweep_to_json(const SweepResult &r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto &row : r.rows)
    rows.push_back({{"l", row.l},
                    {"value", row.value},
                    {"normalized", row.normalized},
                    {"failed", row.failed}});
  return nlohmann::json{{"d", r.d},
                        {"mode", r.mode == SweepMode::I ? "I" : "J"},
                        {"alpha", r.alpha},
                        {"n", r.n},
                        {"weight", r.weight_id},
                        {"rows", std::move(rows)},
                        {"slope", r.slope},
                        {"window", {r.window_lo, r.window_hi}},
                        {"flags", r.flags},
                        {"partial", r.partial}};
}

Weight load_weight(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open weight file: " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  return weight_from_json(j);
}

HarmonicCoeffs load_coeffs(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open coefficient file: " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  return coeffs_from_json(j);
}

void save_json(const std::string &path, const nlohmann::json &j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << j.dump(2) << "\n";
}

void write_samples_csv(std::ostream &os, const SphericalGrid &g,
                       const std::vector<double> &values) {
  if (values.size() != static_cast<std::size_t>(g.L + 1) * g.nphi)
    throw std::invalid_argument("write_samples_csv: value count does not match grid");
  os << "theta,phi,value\n";
  char buf[96];
  for (int i = 0; i <= g.L; ++i)
    for (int j = 0; j < g.nphi; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", g.theta[i], g.phi[j],
                    values[static_cast<std::size_t>(i) * g.nphi + j]);
      os << buf;
    }
}

std::vector<std::array<double, 3>> read_samples_csv(std::istream &is) {
  std::vector<std::array<double, 3>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    double a, b, c;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &a, &b, &c) == 3)
      rows.push_back({a, b, c});
    else if (!rows.empty())
      throw std::invalid_argument("read_samples_csv: malformed row: " + line);
    // a non-numeric first line is the header
  }
  return rows;
}

} // namespace spherecap
