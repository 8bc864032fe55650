#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "annulus/analysis.hpp"
#include "annulus/factorization.hpp"
#include "annulus/operators.hpp"
#include "annulus/spectral.hpp"

namespace annulus {

using json = nlohmann::ordered_json;

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) {
  require(j.is_array() && j.size() == 2, errc::parse, "complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

// Shared series schema:
// {"N": int, "inner": float, "outer": float, "coeffs": [[re, im], ...]}
// with coeffs ordered k = -N..N.
inline json to_json(const LaurentSeries& f) {
  json coeffs = json::array();
  for (int k = -f.degree_bound(); k <= f.degree_bound(); ++k) coeffs.push_back(to_json(f.coeff(k)));
  return json{{"N", f.degree_bound()},
              {"inner", f.inner_radius()},
              {"outer", f.outer_radius()},
              {"coeffs", coeffs}};
}

inline LaurentSeries series_from_json(const json& j) {
  require(j.is_object() && j.contains("N") && j.contains("inner") && j.contains("outer") &&
              j.contains("coeffs"),
          errc::parse, "series object must carry N, inner, outer, coeffs");
  const int n = j["N"].get<int>();
  const auto& coeffs = j["coeffs"];
  require(coeffs.is_array() && static_cast<int>(coeffs.size()) == 2 * n + 1, errc::parse,
          "coeffs must have length 2N+1");
  std::vector<cplx> c;
  c.reserve(coeffs.size());
  for (const auto& e : coeffs) c.push_back(complex_from_json(e));
  return LaurentSeries(std::move(c), n, j["inner"].get<double>(), j["outer"].get<double>());
}

// Operator matrix schema: {"N": int, "entries": [[re, im], ...]} row-major.
inline json to_json(const OperatorMatrix& m) {
  json entries = json::array();
  for (int row = -m.degree_bound(); row <= m.degree_bound(); ++row)
    for (int col = -m.degree_bound(); col <= m.degree_bound(); ++col)
      entries.push_back(to_json(m.at(row, col)));
  return json{{"N", m.degree_bound()}, {"entries", entries}};
}

inline OperatorMatrix matrix_from_json(const json& j) {
  require(j.is_object() && j.contains("N") && j.contains("entries"), errc::parse,
          "matrix object must carry N and entries");
  const int n = j["N"].get<int>();
  require(n >= 1, errc::parse, "matrix N must be positive");
  const auto& entries = j["entries"];
  const std::size_t dim = 2 * static_cast<std::size_t>(n) + 1;
  require(entries.is_array() && entries.size() == dim * dim, errc::parse,
          "entries must have length (2N+1)^2");
  OperatorMatrix m(n);
  std::size_t i = 0;
  for (int row = -n; row <= n; ++row)
    for (int col = -n; col <= n; ++col) m.set(row, col, complex_from_json(entries[i++]));
  return m;
}

inline json to_json(const ClassificationResult& r) {
  json j;
  switch (r.verdict) {
    case ClassificationResult::Verdict::rotation: j["verdict"] = "Rotation"; break;
    case ClassificationResult::Verdict::inversion: j["verdict"] = "Inversion"; break;
    case ClassificationResult::Verdict::not_isometry: j["verdict"] = "NotIsometry"; break;
  }
  if (r.verdict != ClassificationResult::Verdict::not_isometry) {
    j["alpha"] = to_json(r.alpha);
    j["beta"] = to_json(r.beta);
  }
  if (r.witness) {
    json w;
    w["kind"] = r.witness->kind == ClassificationWitness::Kind::probe ? "probe" : "structural";
    w["description"] = r.witness->description;
    if (r.witness->kind == ClassificationWitness::Kind::probe) {
      w["level"] = r.witness->level;
      w["lhs"] = r.witness->lhs;
      w["rhs"] = r.witness->rhs;
    } else {
      w["basis_index"] = r.witness->basis_index;
    }
    j["witness"] = w;
  }
  return j;
}

inline json to_json(const FactorizationResult& r) {
  return json{{"winding", r.winding},
              {"s", r.s},
              {"g0", to_json(r.g0)},
              {"residual", r.residual},
              {"unimodularity_defect", r.unimodularity_defect},
              {"g0_winding", r.g0_winding},
              {"g0_min_modulus", r.g0_min_modulus}};
}

inline json to_json(const SpectrumDescription& s) {
  json j;
  switch (s.kind) {
    case SpectrumDescription::Kind::inversion_pair: j["kind"] = "InversionPair"; break;
    case SpectrumDescription::Kind::root_of_unity_cycle: j["kind"] = "RootOfUnityCycle"; break;
    case SpectrumDescription::Kind::aperiodic_orbit: j["kind"] = "AperiodicOrbit"; break;
  }
  j["alpha"] = to_json(s.alpha);
  j["beta"] = to_json(s.beta);
  if (s.cycle_order > 0) j["cycle_order"] = s.cycle_order;
  json pts = json::array();
  for (cplx p : s.points) pts.push_back(to_json(p));
  j["points"] = pts;
  j["eigenspace_dimension"] = s.eigenspace_infinite ? json("infinite") : json(1);
  if (s.aperiodicity_cutoff > 0) j["aperiodicity_cutoff"] = s.aperiodicity_cutoff;
  json wits = json::array();
  for (const EigenPair& w : s.witnesses)
    wits.push_back(json{{"lambda", to_json(w.lambda)}, {"f", to_json(w.f)}});
  j["witnesses"] = wits;
  return j;
}

// Log-space values: exact integers carry {"repr":"exact"}; exact powers of
// two report their exponent under {"repr":"log2"}; everything else nests
// until the top interval is reached.
inline json to_json(const LogValue& v) {
  std::uint64_t small = 0;
  if (v.exact_uint64(&small)) return json{{"repr", "exact"}, {"value", small}};
  if (v.depth() == 0) {
    const BigFloat& lo = v.top().lo;
    if (v.top().is_point() && lo.is_integer() && lo.sign() > 0) {
      // exact power of two: report the exponent instead of the digits
      const mpfr_exp_t e = lo.exponent() - 1;
      if (lo == BigFloat::pow2(e))
        return json{{"repr", "log2"},
                    {"log2", json{{"repr", "exact"}, {"value", static_cast<long>(e)}}}};
    }
    return json{{"repr", "real"}, {"lo", v.top().lo.str(24)}, {"hi", v.top().hi.str(24)}};
  }
  LogValue inner = log2_of(v);
  return json{{"repr", "log2"}, {"log2", to_json(inner)}};
}

inline void write_gap_profile_csv(std::ostream& os, const GapProfile& p) {
  os << "k,gap,envelope,bound\n";
  for (std::size_t i = 0; i < p.k_values.size(); ++i) {
    os << p.k_values[i] << ',' << p.gap_values[i] << ',' << p.envelope[i] << ',';
    if (p.has_certificate) os << p.bounds[i];
    os << '\n';
  }
}

inline json to_json(const GapProfile& p) {
  json j;
  j["K"] = p.k_values.empty() ? 0 : p.k_values.back();
  j["envelope_max"] = p.envelope_max;
  j["envelope_argmax"] = p.envelope_argmax;
  j["final_value"] = p.final_value;
  j["bracket"] = json::array({p.bracket_lo, p.bracket_hi});
  j["sine_bound_ok"] = p.sine_bound_ok;
  if (p.has_certificate) j["certificate_ok"] = p.certificate_ok;
  return j;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::parse, "cannot open " + path);
  json j = json::parse(in, nullptr, false);
  require(!j.is_discarded(), errc::parse, "malformed JSON in " + path);
  return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), errc::domain, "cannot write " + path);
  out << text;
}

}  // namespace annulus
