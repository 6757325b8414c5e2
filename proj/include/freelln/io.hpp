// Copyright 2026 The freelln Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FREELLN_IO_HPP
#define FREELLN_IO_HPP

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "freelln/family.hpp"
#include "freelln/measure.hpp"
#include "freelln/rmt.hpp"

namespace freelln {

// 17 significant digits: enough to round-trip doubles, so runs diff cleanly.
inline std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Either an explicit measure or a family delegation, as parsed from JSON.
struct MeasureSpec {
  Measure measure = Measure::dirac(1.0);
  std::optional<FamilyParams> family;
};

// Schema: {"atoms":[{"x":..,"w":..},...], "quantile":{"u":[...],"x":[...]},
// "cont_mass":..} or {"family":{"alpha":..,"beta":..}}. Fields in any order;
// cont_mass defaults to whatever the atoms leave over.
inline MeasureSpec measure_from_json(const nlohmann::json& j) {
  MeasureSpec out;
  if (j.contains("family")) {
    const auto& f = j.at("family");
    const FamilyParams p{f.at("alpha").get<double>(), f.at("beta").get<double>()};
    if (p.alpha < 0.0 || p.beta < 0.0)
      throw std::invalid_argument("family parameters must be nonnegative");
    out.family = p;
    out.measure = family_measure(p);
    return out;
  }
  std::vector<Atom> atoms;
  double atom_mass = 0.0;
  if (j.contains("atoms")) {
    for (const auto& a : j.at("atoms")) {
      atoms.push_back({a.at("x").get<double>(), a.at("w").get<double>()});
      atom_mass += atoms.back().w;
    }
  }
  double cont_mass = j.value("cont_mass", 1.0 - atom_mass);
  if (j.contains("quantile")) {
    const auto& q = j.at("quantile");
    out.measure = Measure::from_quantile_table(q.at("u").get<std::vector<double>>(),
                                               q.at("x").get<std::vector<double>>(),
                                               cont_mass, std::move(atoms));
  } else {
    out.measure = Measure::from_atoms(std::move(atoms));
  }
  return out;
}

inline MeasureSpec measure_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open measure file: " + path);
  nlohmann::json j;
  in >> j;
  return measure_from_json(j);
}

inline nlohmann::json to_json(const ConvergenceReport& rep) {
  nlohmann::json j;
  j["dim"] = rep.dim;
  j["n"] = rep.n_factors;
  j["trials"] = rep.trials;
  j["seed"] = rep.seed;
  j["ks_mean"] = rep.ks_mean;
  j["ks_max"] = rep.ks_max;
  nlohmann::json per = nlohmann::json::array();
  for (const TrialStat& t : rep.per_trial) per.push_back({{"trial", t.trial}, {"ks", t.ks}});
  j["per_trial"] = per;
  nlohmann::json res = nlohmann::json::array();
  for (const auto& [t, r] : rep.residuals) res.push_back({{"t", t}, {"residual", r}});
  j["identity_residuals"] = res;
  return j;
}

}  // namespace freelln

#endif  // FREELLN_IO_HPP
