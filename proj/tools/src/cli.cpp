#include "drinfeld_cli/cli.hpp"

#include <CLI11.hpp>
#include <toml.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "drinfeld/cremona.hpp"
#include "drinfeld/parallel.hpp"
#include "drinfeld/projective.hpp"

namespace drinfeld::cli {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_usage("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ojson parse_json_text(const std::string& text, const std::string& what) {
  try {
    return ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    throw_usage(what + " is not valid JSON: " + e.what());
  }
}

// Numeric flags shared by every subcommand.
struct Numbers {
  std::map<std::string, long long> values;

  bool has(const std::string& k) const { return values.count(k) != 0; }
  long long get(const std::string& k, long long fallback) const {
    auto it = values.find(k);
    return it == values.end() ? fallback : it->second;
  }
};

const std::vector<std::string> kNumberFlags = {"n", "q", "p", "e", "m", "c", "i", "j", "d", "s"};

// Params for `id` from whichever flags the check accepts.
ojson params_for(const std::string& id, const Numbers& nums, const std::map<std::string, long long>& fixed = {}) {
  const CheckInfo& info = check_info(id);
  ojson out = ojson::object();
  auto put = [&](const std::string& key) {
    if (auto it = fixed.find(key); it != fixed.end()) {
      out[key] = it->second;
    } else if (nums.has(key)) {
      out[key] = nums.get(key, 0);
    }
  };
  std::vector<std::string> keys = info.required;
  keys.insert(keys.end(), info.optional.begin(), info.optional.end());
  for (const std::string& key : keys) {
    if (key == "q") {
      if (nums.has("p") && !fixed.count("q")) {
        put("p");
        put("e");
        if (nums.has("q")) put("q");
      } else {
        put("q");
      }
    } else if (key != "points") {
      put(key);
    }
  }
  return out;
}

std::string resolve_check(const std::string& name) {
  const auto ids = check_ids();
  if (std::find(ids.begin(), ids.end(), name) != ids.end()) return name;
  std::vector<std::string> hits;
  for (const std::string& id : ids) {
    if (id.substr(id.find('.') + 1) == name) hits.push_back(id);
  }
  if (hits.size() == 1) return hits.front();
  std::string valid;
  for (const std::string& id : ids) valid += (valid.empty() ? "" : ", ") + id;
  if (hits.empty()) throw_usage("unknown check '" + name + "'; valid ids: " + valid);
  throw_usage("check name '" + name + "' is ambiguous; valid ids: " + valid);
}

std::vector<CheckRequest> full_suite(const Numbers& nums) {
  if (!nums.has("q") && !nums.has("p")) throw_usage("verify all needs --q (or --p/--e)");
  const long long n = nums.get("n", 2);
  const long long m = nums.get("m", 2);
  std::vector<CheckRequest> out;
  auto add = [&](const std::string& id, std::map<std::string, long long> fixed = {}) {
    out.push_back({id, params_for(id, nums, fixed)});
  };
  add("moore.identity", {{"n", n}});
  add("moore.partial", {{"n", n}});
  add("moore.strata", {{"n", n}, {"m", m}});
  add("cremona.graph", {{"n", n}});
  add("cremona.psi-squared", {{"n", n}});
  add("cremona.phi-bar", {{"n", n}});
  add("cremona.omega", {{"n", n}, {"m", nums.get("m", n + 1)}});
  add("cremona.indeterminacy", {{"n", n}, {"m", m}});
  add("foliation.bracket", {{"n", n}});
  add("foliation.pclosed");
  add("foliation.saito", {{"n", n}});
  add("foliation.h-identity", {{"n", n}});
  if (n >= 2) {
    add("foliation.chart-form", {{"n", n}});
    add("foliation.chart-field", {{"n", n}, {"j", 1}});
  }
  add("foliation.splitting");
  add("divlat.surface");
  add("divlat.pushforward");
  if (n >= 2) add("linsys.en-dimension", {{"n", n}, {"c", 2}});
  add("counting.strata", {{"n", n}, {"m", m}});
  add("counting.flags", {{"m", m}});
  add("counting.incidence");
  return out;
}

std::vector<CheckRequest> verify_requests(const std::string& target, const std::string& sub_check,
                                          const std::string& scope, const Numbers& nums) {
  if (target == "all") return full_suite(nums);
  if (target == "foliation") {
    std::vector<std::string> names = {"bracket", "pclosed", "saito", "chart-form", "chart-field", "h-identity",
                                      "splitting"};
    if (!sub_check.empty()) {
      if (std::find(names.begin(), names.end(), sub_check) == names.end()) {
        throw_usage("unknown foliation check '" + sub_check +
                    "'; choose bracket, pclosed, saito, chart-form, chart-field, h-identity or splitting");
      }
      names = {sub_check};
    }
    std::vector<CheckRequest> out;
    for (const std::string& name : names) {
      const std::string id = "foliation." + name;
      out.push_back({id, params_for(id, nums)});
    }
    return out;
  }
  if (!sub_check.empty()) throw_usage("--check only applies to 'verify foliation'");
  if (target == "lattice") {
    if (scope == "surface") {
      return {{"divlat.surface", params_for("divlat.surface", nums)},
              {"divlat.pushforward", params_for("divlat.pushforward", nums)}};
    }
    if (scope == "threefold") return {{"divlat.threefold", params_for("divlat.threefold", nums)}};
    throw_usage("--scope must be surface or threefold");
  }
  const std::string id = resolve_check(target);
  return {{id, params_for(id, nums)}};
}

ojson appendix_points_file(const std::filesystem::path& path) {
  const ojson raw = parse_json_text(read_file(path), path.string());
  const ojson* list = &raw;
  if (raw.is_object() && raw.contains("points")) list = &raw.at("points");
  if (!list->is_array()) throw_usage(path.string() + ": expected a JSON list of points");
  ojson out = ojson::array();
  for (const ojson& item : *list) {
    if (item.is_object()) {
      out.push_back(item);
    } else if (item.is_array() && item.size() == 2 && item[0].is_array()) {
      out.push_back(ojson{{"point", item[0]}, {"mult", item[1]}});
    } else {
      throw_usage(path.string() + ": each entry is {\"point\": [...], \"mult\": k} or [[...], k]");
    }
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string to_csv(const ojson& bundle) {
  std::string out = "check_id,status,key,value\n";
  for (const ojson& r : bundle.at("reports")) {
    const std::string id = r.at("check_id").get<std::string>();
    const std::string status = r.at("status").get<std::string>();
    const ojson& data = r.at("data");
    if (data.empty()) out += csv_field(id) + "," + status + ",,\n";
    for (const auto& [key, value] : data.items()) {
      const std::string v = value.is_string() ? value.get<std::string>() : value.dump();
      out += csv_field(id) + "," + status + "," + csv_field(key) + "," + csv_field(v) + "\n";
    }
  }
  return out;
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw_usage("cannot write " + out_path);
  f << text;
}

int status_exit(Status s) { return s == Status::Pass ? kExitOk : kExitFailed; }

ojson map_apply(const Numbers& nums, const std::string& point_text) {
  if (!nums.has("q") && !nums.has("p")) throw_usage("map apply needs --q (or --p/--e)");
  std::uint64_t q = 0;
  if (nums.has("p")) {
    q = ipow(static_cast<std::uint64_t>(nums.get("p", 0)), static_cast<unsigned>(nums.get("e", 1)));
    if (nums.has("q") && static_cast<std::uint64_t>(nums.get("q", 0)) != q) throw_usage("--q disagrees with p^e");
  } else {
    q = static_cast<std::uint64_t>(nums.get("q", 0));
  }
  const long long m = nums.get("m", 1);
  if (m < 1) throw_usage("--m must be positive");
  const TowerPtr ext = tower_for_q(q, static_cast<unsigned>(m));
  const ProjPoint pt = ProjPoint::from_json(ext, nlohmann::json::parse(parse_json_text(point_text, "--point").dump()));
  const unsigned n = static_cast<unsigned>(pt.size() - 1);
  if (nums.has("n") && nums.get("n", 0) != static_cast<long long>(n)) {
    throw_usage("--point has " + std::to_string(pt.size()) + " coordinates but --n is " +
                std::to_string(nums.get("n", 0)));
  }
  if (n < 1) throw_usage("--point needs at least two coordinates");
  const RationalMap psi = psi_map(n, tower_for_q(q));
  ojson out = ojson::object();
  out["map"] = "psi";
  out["n"] = n;
  out["q"] = q;
  out["m"] = m;
  out["tower"] = ext->describe();
  out["point"] = to_ojson(pt.to_json());
  try {
    out["image"] = to_ojson(apply(psi, pt).to_json());
  } catch (const IndeterminacyError&) {
    out["image"] = nullptr;
    out["indeterminate"] = true;
  }
  return out;
}

}  // namespace

ojson parse_toml(const std::string& text) {
  toml::table tbl;
  try {
    tbl = toml::parse(text);
  } catch (const toml::parse_error& e) {
    throw_usage(std::string("config is not valid TOML: ") + std::string(e.description()));
  }
  std::ostringstream ss;
  ss << toml::json_formatter{tbl};
  return ojson::parse(ss.str());
}

std::vector<CheckRequest> load_config(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const ojson config = path.extension() == ".json" ? parse_json_text(text, path.string()) : parse_toml(text);
  return requests_from_json(config);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks for Moore determinants, the map psi and Drinfeld half-spaces", "drinfeld"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path;
  unsigned jobs = 0;
  std::uint64_t budget = kEnumerationBudget;
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  app.add_option("--jobs", jobs, "Worker threads (0 = all cores)");
  app.add_option("--budget", budget, "Cap on enumerated points")->check(CLI::PositiveNumber);

  Numbers nums;
  std::map<std::string, long long> raw_numbers;
  for (const std::string& k : kNumberFlags) app.add_option("--" + k, raw_numbers[k]);

  std::string target, sub_check, scope = "surface";
  auto* verify = app.add_subcommand("verify", "Run one check, a family, or the full suite");
  verify->add_option("target", target, "Check id or short name, 'all', 'foliation' or 'lattice'")->required();
  verify->add_option("--check", sub_check, "Foliation check to run");
  verify->add_option("--scope", scope, "Lattice scope: surface or threefold");

  std::string point_text;
  auto* map = app.add_subcommand("map", "Evaluate the map psi");
  map->require_subcommand(1);
  auto* map_apply_cmd = map->add_subcommand("apply", "Image of a point under psi");
  map_apply_cmd->add_option("--point", point_text, "JSON coordinate vector")->required();

  std::string points_file;
  auto* linsys = app.add_subcommand("linsys", "Linear systems with vanishing conditions");
  linsys->require_subcommand(1);
  auto* linsys_dim = linsys->add_subcommand("dim", "Forms vanishing on a determinantal stratum");
  auto* linsys_serre = linsys->add_subcommand("serre", "Net of curves with a moving singular point");
  auto* linsys_appendix = linsys->add_subcommand("appendix", "Curves with imposed singular points");
  linsys_appendix->add_option("--points-file", points_file, "JSON list of points with multiplicities");

  std::string format = "json";
  auto* count = app.add_subcommand("count", "Point and subspace counts");
  count->require_subcommand(1);
  count->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  auto* count_strata = count->add_subcommand("strata", "Stratum sizes of P^n over an extension");
  auto* count_flags = count->add_subcommand("flags", "Frobenius flags against graph-closure counts");
  auto* count_b2 = count->add_subcommand("b2", "Second Betti number bookkeeping");

  std::string config_path;
  auto* report = app.add_subcommand("report", "Run every check listed in a config file");
  report->add_option("--config", config_path, "TOML or JSON config")->required();

  for (auto* sub : {map_apply_cmd, linsys_dim, linsys_serre, linsys_appendix, count_strata, count_flags, count_b2}) {
    sub->fallthrough();
  }
  for (auto* sub : {verify, map, linsys, count, report}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  for (const std::string& k : kNumberFlags) {
    if (app.count("--" + k) > 0) nums.values[k] = raw_numbers[k];
  }

  try {
    set_enumeration_budget(budget);
    if (jobs != 0) set_default_jobs(jobs);
    const unsigned workers = default_jobs();

    if (map_apply_cmd->parsed()) {
      emit(map_apply(nums, point_text).dump(2) + "\n", out_path, out);
      return kExitOk;
    }

    std::vector<CheckRequest> requests;
    if (verify->parsed()) {
      requests = verify_requests(target, sub_check, scope, nums);
    } else if (linsys_dim->parsed()) {
      requests = {{"linsys.en-dimension", params_for("linsys.en-dimension", nums)}};
    } else if (linsys_serre->parsed()) {
      requests = {{"linsys.moving-singularity", params_for("linsys.moving-singularity", nums)},
                  {"linsys.reducibility", params_for("linsys.reducibility", nums)}};
    } else if (linsys_appendix->parsed()) {
      ojson params = params_for("linsys.appendix", nums);
      if (!points_file.empty()) params["points"] = appendix_points_file(points_file);
      requests = {{"linsys.appendix", params}};
    } else if (count_strata->parsed()) {
      requests = {{"counting.strata", params_for("counting.strata", nums)}};
    } else if (count_flags->parsed()) {
      requests = {{"counting.flags", params_for("counting.flags", nums)}};
    } else if (count_b2->parsed()) {
      requests = {{"counting.b2", params_for("counting.b2", nums)}};
    } else if (report->parsed()) {
      requests = load_config(config_path);
    }

    const ojson bundle = report_bundle(requests, workers);
    const bool csv = count->parsed() && format == "csv";
    emit(csv ? to_csv(bundle) : bundle.dump(2) + "\n", out_path, out);
    return status_exit(bundle_status(bundle));
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace drinfeld::cli
