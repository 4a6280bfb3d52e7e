#include "drinfeld/registry.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "drinfeld/counting.hpp"
#include "drinfeld/cremona.hpp"
#include "drinfeld/divlat.hpp"
#include "drinfeld/foliation.hpp"
#include "drinfeld/linsys.hpp"
#include "drinfeld/moore.hpp"
#include "drinfeld/parallel.hpp"

namespace drinfeld {

namespace {

class Params {
 public:
  Params(const CheckInfo& info, const ojson& p) : info_(info), p_(p) {
    if (p_.is_null()) p_ = ojson::object();
    if (!p_.is_object()) throw_usage(info_.id + ": parameters must be an object, got " + p_.dump());
    for (const auto& [key, value] : p_.items()) {
      if (!allowed(key)) throw_usage(info_.id + ": unknown parameter '" + key + "'");
    }
    for (const std::string& key : info_.required) {
      if (key == "q" ? !(has("q") || has("p")) : !has(key)) {
        throw_usage(info_.id + ": missing parameter '" + key + "'");
      }
    }
  }

  bool has(const std::string& key) const { return p_.contains(key); }

  long long integer(const std::string& key) const {
    const ojson& v = p_.at(key);
    if (!v.is_number_integer()) throw_usage(info_.id + ": parameter '" + key + "' must be an integer");
    return v.get<long long>();
  }

  unsigned u(const std::string& key) const {
    const long long v = integer(key);
    if (v < 0 || v > 1'000'000) throw_usage(info_.id + ": parameter '" + key + "' out of range");
    return static_cast<unsigned>(v);
  }
  unsigned u(const std::string& key, unsigned fallback) const { return has(key) ? u(key) : fallback; }

  int i(const std::string& key) const {
    const long long v = integer(key);
    if (v < -1'000'000 || v > 1'000'000) throw_usage(info_.id + ": parameter '" + key + "' out of range");
    return static_cast<int>(v);
  }

  std::uint64_t q() const {
    std::uint64_t from_p = 0;
    if (has("p")) {
      const long long p = integer("p");
      if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw_usage(info_.id + ": p must be prime");
      const unsigned e = has("e") ? u("e") : 1;
      if (e == 0) throw_usage(info_.id + ": e must be positive");
      from_p = ipow(static_cast<std::uint64_t>(p), e);
    } else if (has("e")) {
      throw_usage(info_.id + ": e given without p");
    }
    if (has("q")) {
      const long long q = integer("q");
      if (q < 2) throw_usage(info_.id + ": q must be a prime power");
      (void)prime_power(static_cast<std::uint64_t>(q));
      if (from_p != 0 && from_p != static_cast<std::uint64_t>(q)) {
        throw_usage(info_.id + ": q disagrees with p^e");
      }
      return static_cast<std::uint64_t>(q);
    }
    return from_p;
  }

  const ojson& raw(const std::string& key) const { return p_.at(key); }

 private:
  bool allowed(const std::string& key) const {
    auto in = [&](const std::vector<std::string>& v, const std::string& k) {
      return std::find(v.begin(), v.end(), k) != v.end();
    };
    if (in(info_.required, key) || in(info_.optional, key)) return true;
    const bool takes_q = in(info_.required, "q") || in(info_.optional, "q");
    return takes_q && (key == "p" || key == "e");
  }

  const CheckInfo& info_;
  ojson p_;
};

using Runner = std::function<CheckReport(const Params&)>;

struct Entry {
  CheckInfo info;
  Runner run;
};

std::vector<AppendixPoint> appendix_points(const Params& P, const TowerPtr& ext) {
  std::vector<AppendixPoint> out;
  if (!P.has("points")) return out;
  const ojson& pts = P.raw("points");
  if (!pts.is_array()) throw_usage("linsys.appendix: points must be an array");
  for (const ojson& item : pts) {
    if (!item.is_object() || !item.contains("point")) {
      throw_usage("linsys.appendix: each point needs {\"point\": [...], \"mult\": k}, got " + item.dump());
    }
    const nlohmann::json coords = nlohmann::json::parse(item.at("point").dump());
    unsigned mult = 1;
    if (item.contains("mult")) {
      const ojson& k = item.at("mult");
      if (!k.is_number_integer() || k.get<long long>() < 1 || k.get<long long>() > 255) {
        throw_usage("linsys.appendix: mult must be a positive integer");
      }
      mult = k.get<unsigned>();
    }
    ProjPoint pt = ProjPoint::from_json(ext, coords);
    if (pt.size() != 3) throw_usage("linsys.appendix: points live in P^2");
    out.push_back({std::move(pt), mult});
  }
  return out;
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = [] {
    std::vector<Entry> t;
    auto add = [&](std::string id, std::vector<std::string> req, std::vector<std::string> opt, std::string summary,
                   Runner run) {
      t.push_back({{std::move(id), std::move(req), std::move(opt), std::move(summary)}, std::move(run)});
    };

    add("moore.identity", {"q", "n"}, {}, "Moore determinant equals the product of normalized linear forms",
        [](const Params& P) { return verify_moore_identity(P.q(), P.u("n")); });
    add("moore.partial", {"q", "n"}, {}, "partial derivatives of the Moore determinant",
        [](const Params& P) { return verify_partial_identity(P.q(), P.u("n")); });
    add("moore.strata", {"q", "n", "m"}, {}, "Moore minors against Frobenius-span rank on every point",
        [](const Params& P) { return verify_strata_duality(P.q(), P.u("n"), P.u("m")); });

    add("cremona.graph", {"n", "q"}, {}, "graph relations of psi",
        [](const Params& P) { return verify_graph_relations(P.u("n"), P.q()); });
    add("cremona.psi-squared", {"n", "q"}, {}, "psi composed with its dual against a Frobenius power",
        [](const Params& P) { return verify_psi_squared(P.u("n"), P.q()); });
    add("cremona.phi-bar", {"n", "q"}, {}, "Frobenius twist identity of the incidence form",
        [](const Params& P) { return verify_phi_bar(P.u("n"), P.q()); });
    add("cremona.omega", {"n", "q", "m"}, {}, "psi maps the half-space into its dual, injectively",
        [](const Params& P) { return verify_omega_endomorphism(P.u("n"), P.q(), P.u("m")); });
    add("cremona.flop", {"q", "m"}, {}, "local flop model",
        [](const Params& P) { return flop_local_model(P.q(), P.u("m")); });
    add("cremona.indeterminacy", {"n", "q", "m"}, {}, "indeterminacy locus of psi is the codimension-2 stratum",
        [](const Params& P) { return verify_indeterminacy(P.u("n"), P.q(), P.u("m")); });

    add("foliation.bracket", {"n", "q"}, {"i", "j"}, "brackets of the Frobenius vector fields",
        [](const Params& P) {
          if (P.has("i") != P.has("j")) throw_usage("foliation.bracket: give both i and j or neither");
          if (P.has("i")) return verify_bracket_identity(P.u("n"), P.q(), P.u("i"), P.u("j"));
          return verify_bracket_all(P.u("n"), P.q());
        });
    add("foliation.pclosed", {"q"}, {"n"}, "p-th power of the first field",
        [](const Params& P) { return verify_p_closed(P.q(), P.u("n", 3)); });
    add("foliation.saito", {"n", "q"}, {}, "logarithmic tangent basis via Saito's criterion",
        [](const Params& P) { return saito_log_tangent_check(P.u("n"), P.q()); });
    add("foliation.h-identity", {"n", "q"}, {}, "complete homogeneous symmetric identity in the chart",
        [](const Params& P) { return verify_h_identity(P.u("n"), P.q()); });
    add("foliation.chart-form", {"n", "q"}, {}, "pullback of the form to the standard chart",
        [](const Params& P) { return chart_pullback_form(P.u("n"), P.q()); });
    add("foliation.chart-field", {"n", "q"}, {"j"}, "pullback of a vector field to the standard chart",
        [](const Params& P) { return chart_pullback_field(P.u("n"), P.q(), P.u("j", 1)); });
    add("foliation.splitting", {"q"}, {}, "existence of a cubic splitting the foliation",
        [](const Params& P) { return splitting_report(P.q()); });

    add("divlat.surface", {"q"}, {}, "intersection ledger on the blow-up of the plane",
        [](const Params& P) { return verify_surface_ledger(P.q()); });
    add("divlat.pushforward", {"q"}, {}, "pushforward coefficients under the contraction",
        [](const Params& P) { return pushforward_report(P.q()); });
    add("divlat.threefold", {"q"}, {"p"}, "coarse ledger on the blow-up of 3-space",
        [](const Params& P) {
          const std::uint64_t q = P.q();
          const std::uint64_t p = P.has("p") ? P.u("p") : prime_power(q).first;
          return threefold_ledger(q, p);
        });
    add("divlat.discrepancy", {"m", "d"}, {}, "discrepancy of a cone over a Veronese-type embedding",
        [](const Params& P) { return discrepancy_report(P.i("m"), P.i("d")); });

    add("linsys.en-dimension", {"n", "c", "q"}, {}, "forms vanishing on a stratum against the Moore minors",
        [](const Params& P) { return en_dimension_check(P.u("n"), P.u("c"), P.q()); });
    add("linsys.vanishing-zero", {"q"}, {}, "no low-degree forms through the strata of 3-space",
        [](const Params& P) { return vanishing_zero_checks(P.q()); });
    add("linsys.moving-singularity", {"q", "m"}, {}, "members of the net have one singular point",
        [](const Params& P) { return moving_singularity_check(P.q(), P.u("m")); });
    add("linsys.reducibility", {"q", "m"}, {}, "rational line components of the net members",
        [](const Params& P) { return reducibility_check(P.q(), P.u("m")); });
    add("linsys.appendix", {"d", "s", "q"}, {"m", "points"}, "plane curves with imposed singularities",
        [](const Params& P) {
          const std::uint64_t q = P.q();
          const TowerPtr ext = tower_for_q(q, P.u("m", 1));
          return imposed_conditions_experiment(P.u("d"), appendix_points(P, ext), P.i("s"), tower_for_q(q));
        });

    add("counting.strata", {"q", "n", "m"}, {}, "stratum sizes against subspace counts",
        [](const Params& P) { return count_strata_report(P.q(), P.u("n"), P.u("m")); });
    add("counting.flags", {"q", "m"}, {}, "Frobenius flags against graph-closure counts",
        [](const Params& P) { return fflag_count_report(P.q(), P.u("m")); });
    add("counting.b2", {"q"}, {}, "second Betti number bookkeeping",
        [](const Params& P) { return betti_b2_report(P.q()); });
    add("counting.incidence", {"q"}, {}, "point-line incidence geometry of the plane",
        [](const Params& P) { return incidence_report(P.q()); });
    return t;
  }();
  return table;
}

const Entry& find_entry(const std::string& id) {
  for (const Entry& e : entries()) {
    if (e.info.id == id) return e;
  }
  std::string valid;
  for (const Entry& e : entries()) valid += (valid.empty() ? "" : ", ") + e.info.id;
  throw_usage("unknown check id '" + id + "'; valid ids: " + valid);
}

}  // namespace

const std::vector<CheckInfo>& check_catalog() {
  static const std::vector<CheckInfo> catalog = [] {
    std::vector<CheckInfo> out;
    for (const Entry& e : entries()) out.push_back(e.info);
    return out;
  }();
  return catalog;
}

std::vector<std::string> check_ids() {
  std::vector<std::string> out;
  for (const Entry& e : entries()) out.push_back(e.info.id);
  return out;
}

const CheckInfo& check_info(const std::string& id) { return find_entry(id).info; }

CheckReport run_check(const std::string& id, const ojson& params) {
  const Entry& e = find_entry(id);
  const Params P(e.info, params);
  CheckReport r;
  try {
    r = e.run(P);
  } catch (const ResourceError& err) {
    r = CheckReport{};
    r.check_id = id;
    r.params = params.is_null() ? ojson::object() : params;
    r.status = Status::Error;
    r.witness = ojson{{"resource", err.what()}};
  }
  if (r.check_id != id) throw InvariantError("check '" + id + "' reported as '" + r.check_id + "'");
  return r;
}

std::vector<CheckRequest> requests_from_json(const ojson& config) {
  const ojson* list = &config;
  if (config.is_object()) {
    if (config.empty()) return {};
    if (!config.contains("checks")) throw_usage("config needs a \"checks\" array");
    list = &config.at("checks");
  }
  if (!list->is_array()) throw_usage("config checks must be an array");
  std::vector<CheckRequest> out;
  for (const ojson& item : *list) {
    if (!item.is_object() || !item.contains("id") || !item.at("id").is_string()) {
      throw_usage("each config entry needs a string \"id\", got " + item.dump());
    }
    CheckRequest req{item.at("id").get<std::string>(), ojson::object()};
    if (item.contains("params")) req.params = item.at("params");
    for (const auto& [key, value] : item.items()) {
      if (key == "id" || key == "params") continue;
      req.params[key] = value;
    }
    out.push_back(std::move(req));
  }
  return out;
}

ojson report_bundle(const std::vector<CheckRequest>& requests, unsigned jobs, bool include_runtime) {
  for (const CheckRequest& req : requests) (void)find_entry(req.id);
  std::vector<CheckReport> reports(requests.size());
  parallel_for(
      requests.size(), [&](std::size_t i) { reports[i] = run_check(requests[i].id, requests[i].params); }, jobs);

  ojson towers = ojson::array();
  ojson out_reports = ojson::array();
  for (const CheckReport& r : reports) {
    for (const ojson& t : r.towers) {
      if (std::find(towers.begin(), towers.end(), t) == towers.end()) towers.push_back(t);
    }
    out_reports.push_back(r.to_json(include_runtime));
  }
  ojson bundle = ojson::object();
  bundle["schema"] = kReportSchema;
  bundle["tool"] = "drinfeld";
  bundle["version"] = DRINFELD_VERSION;
  bundle["towers"] = std::move(towers);
  bundle["reports"] = std::move(out_reports);
  return bundle;
}

Status bundle_status(const ojson& bundle) {
  Status s = Status::Pass;
  for (const ojson& r : bundle.at("reports")) {
    const Status t = status_from_string(r.at("status").get<std::string>());
    if (t == Status::Fail) return Status::Fail;
    if (t == Status::Error) s = Status::Error;
  }
  return s;
}

ojson strip_runtime(ojson bundle) {
  if (bundle.contains("reports")) {
    for (ojson& r : bundle["reports"]) r.erase("runtime_ms");
  }
  return bundle;
}

}  // namespace drinfeld
