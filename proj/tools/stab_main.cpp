#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "stab/constructions.hpp"
#include "stab/depth.hpp"
#include "stab/errors.hpp"
#include "stab/experiments.hpp"
#include "stab/fan.hpp"
#include "stab/point_set_io.hpp"
#include "stab/stab_count.hpp"

using json = nlohmann::ordered_json;
using namespace stab;

namespace {

constexpr int kPass = 0, kError = 1, kThreshold = 2;

json rational_list(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(to_fraction_string(q));
  return out;
}

json point_json(const ExactPoint& p) { return rational_list(p.coords()); }

std::vector<Rational> parse_vector(const std::string& text) { return parse_point(text).coords(); }

// "v1,..;w1,..;s;t"
Flat2Codim parse_flat(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) parts.push_back(item);
  if (parts.size() != 4) throw InputError("--flat expects v;w;s;t");
  Flat2Codim f;
  f.v = parse_vector(parts[0]);
  f.w = parse_vector(parts[1]);
  f.s = parse_rational(parts[2]);
  f.t = parse_rational(parts[3]);
  return f;
}

json flat_json(const Flat2Codim& f) {
  return {{"v", rational_list(f.v)}, {"w", rational_list(f.w)}, {"s", to_fraction_string(f.s)},
          {"t", to_fraction_string(f.t)}};
}

json count_json(const PointSet& s, const StabCount& c) {
  const int d = s.dim();
  Integer norm = 1;
  for (int i = 0; i <= d; ++i) norm *= static_cast<unsigned long>(s.size());
  json j;
  j["n"] = s.size();
  j["d"] = d;
  j["strict"] = c.strict;
  j["degenerate"] = c.degenerate;
  j["total"] = c.total;
  j["ratio"] = to_decimal_string(fraction(Integer(static_cast<unsigned long>(c.strict)), norm), 12);
  return j;
}

json depth_json(const DepthResult& r) { return {{"depth", r.depth}, {"witness", rational_list(r.witness)}}; }

void emit(const json& j, bool plot) {
  if (plot && j.is_object() && j.contains("n") && j.contains("ratio")) {
    std::cout << "n\tratio\n" << j["n"].get<std::size_t>() << '\t' << j["ratio"].get<std::string>() << "\n";
    return;
  }
  std::cout << j.dump(2) << "\n";
}

std::string params_label(const std::string& family, const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string s = family;
  for (const auto& [k, v] : kv) s += " " + k + "=" + v;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact simplex stabbing, depth and fan equipartition tools"};
  app.require_subcommand(1);
  bool plot_data = false;
  app.add_flag("--plot-data", plot_data, "emit n, ratio columns as TSV instead of JSON");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a point set");
  std::string family, gen_out;
  int gen_n = 0, gen_d = 2;
  std::uint64_t gen_seed = 0;
  std::string gen_alpha = "1/2", gen_schedule = "factorial", gen_scale = "1/1024";
  gen->add_option("family", family, "separated | sphere-antipodal | boros-furedi | random-sphere | random-ball")
      ->required()
      ->check(CLI::IsMember({"separated", "sphere-antipodal", "boros-furedi", "random-sphere", "random-ball"}));
  gen->add_option("--n", gen_n, "number of points")->required();
  gen->add_option("--d", gen_d, "dimension");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--alpha", gen_alpha, "depth fraction (sphere-antipodal)");
  gen->add_option("--schedule", gen_schedule, "factorial | quadratic (separated)")
      ->check(CLI::IsMember({"factorial", "quadratic"}));
  gen->add_option("--cluster-scale", gen_scale, "gap ratio (boros-furedi)");
  gen->add_option("-o,--output", gen_out, "output file (stdout when omitted)");

  // count
  auto* count = app.add_subcommand("count", "count simplices containing a point");
  std::string count_file, count_point;
  bool count_fast = false;
  count->add_option("set", count_file)->required();
  count->add_option("--point", count_point, "comma separated rationals")->required();
  count->add_flag("--fast", count_fast, "planar angular count (d = 2, point not in the set)");

  // maxstab
  auto* maxstab = app.add_subcommand("maxstab", "find a point in many simplices");
  std::string max_file, max_mode = "exact";
  int max_restarts = 64;
  std::uint64_t max_seed = 0;
  maxstab->add_option("set", max_file)->required();
  maxstab->add_option("--mode", max_mode)->check(CLI::IsMember({"exact", "heuristic"}));
  maxstab->add_option("--restarts", max_restarts);
  maxstab->add_option("--seed", max_seed);

  // depth
  auto* depth_cmd = app.add_subcommand("depth", "Tukey depth of a point");
  std::string depth_file, depth_point;
  depth_cmd->add_option("set", depth_file)->required();
  depth_cmd->add_option("--point", depth_point)->required();

  // centerpoint
  auto* center = app.add_subcommand("centerpoint", "point of depth at least ceil(n/(d+1))");
  std::string center_file, center_mode = "automatic";
  std::uint64_t center_seed = 0;
  center->add_option("set", center_file)->required();
  center->add_option("--mode", center_mode)->check(CLI::IsMember({"automatic", "exact", "heuristic"}));
  center->add_option("--seed", center_seed);

  // fan
  auto* fan = app.add_subcommand("fan", "equipartitioning fan of 2d-1 hyperplanes");
  std::string fan_file;
  int fan_d = 0;
  double fan_tol = 1e-6;
  std::uint64_t fan_seed = 0;
  fan->add_option("set", fan_file)->required();
  fan->add_option("--d", fan_d, "2 or 3 (defaults to the set dimension)");
  fan->add_option("--tol", fan_tol);
  fan->add_option("--seed", fan_seed);

  // stab-flat
  auto* flat = app.add_subcommand("stab-flat", "triangles met by a codimension-2 flat");
  std::string flat_file, flat_text;
  flat->add_option("set", flat_file)->required();
  flat->add_option("--flat", flat_text, "v;w;s;t with comma separated vectors")->required();

  // reproduce
  auto* repro = app.add_subcommand("reproduce", "run a named experiment");
  std::string experiment;
  std::vector<std::string> repro_params;
  std::string repro_out;
  repro->add_option("experiment", experiment)->required()->check(CLI::IsMember(experiment_names()));
  repro->add_option("params", repro_params, "key=value pairs");
  repro->add_option("-o,--output", repro_out);

  // constants
  auto* consts = app.add_subcommand("constants", "exact constants per dimension");
  std::vector<int> const_d{2, 3, 4};
  std::string const_alpha;
  consts->add_option("--d", const_d);
  consts->add_option("--alpha", const_alpha, "also evaluate the alpha curve");

  // selftest
  auto* selftest = app.add_subcommand("selftest", "quick property suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kPass : kError;
  }

  try {
    if (*gen) {
      PointSet s;
      std::vector<std::pair<std::string, std::string>> kv{{"n", std::to_string(gen_n)}, {"d", std::to_string(gen_d)}};
      if (family == "separated") {
        s = build_separated_set(gen_n, gen_d, gen_schedule == "factorial" ? ChainSchedule::factorial : ChainSchedule::quadratic);
        kv.push_back({"schedule", gen_schedule});
      } else if (family == "sphere-antipodal") {
        SphereConfig cfg;
        cfg.n = gen_n;
        cfg.d = gen_d;
        cfg.alpha = parse_rational(gen_alpha);
        cfg.seed = gen_seed;
        SphereSet sp = build_sphere_antipodal(cfg);
        s = sp.set;
        kv.push_back({"alpha", gen_alpha});
        kv.push_back({"seed", std::to_string(sp.seed_used)});
        kv.push_back({"cluster_radius", to_fraction_string(sp.cluster_radius)});
      } else if (family == "boros-furedi") {
        s = build_boros_furedi(gen_n, parse_rational(gen_scale));
        kv = {{"n", std::to_string(gen_n)}, {"cluster_scale", gen_scale}};
      } else if (family == "random-sphere") {
        s = build_random_sphere(gen_n, gen_d, gen_seed);
        kv.push_back({"seed", std::to_string(gen_seed)});
      } else {
        s = build_random_ball(gen_n, gen_d, gen_seed);
        kv.push_back({"seed", std::to_string(gen_seed)});
      }
      s.set_label(params_label(family, kv));
      if (gen_out.empty())
        std::cout << point_set_to_json(s, 2) << "\n";
      else
        save_point_set(s, gen_out);
      return kPass;
    }
    if (*count) {
      PointSet s = load_point_set(count_file);
      ExactPoint p = parse_point(count_point);
      require_same_dim(p, s.dim(), "count --point");
      StabCount c = count_fast ? count_containing_planar_fast(s, p) : count_containing(s, p);
      emit(count_json(s, c), plot_data);
      return kPass;
    }
    if (*maxstab) {
      PointSet s = load_point_set(max_file);
      MaxStabOptions opt;
      opt.mode = max_mode == "exact" ? MaxStabMode::exact : MaxStabMode::heuristic;
      opt.restarts = max_restarts;
      opt.seed = max_seed;
      MaxStabResult r = max_stab_point(s, opt);
      json j = count_json(s, r.count);
      j["point"] = point_json(r.point);
      j["lower_bound"] = r.lower_bound;
      j["candidates"] = r.candidates;
      const int d = s.dim();
      Rational upper = constants(d).upper_new;
      j["target_constant"] = to_fraction_string(upper);
      emit(j, plot_data);
      return kPass;
    }
    if (*depth_cmd) {
      PointSet s = load_point_set(depth_file);
      ExactPoint p = parse_point(depth_point);
      require_same_dim(p, s.dim(), "depth --point");
      emit(depth_json(depth(s, p)), plot_data);
      return kPass;
    }
    if (*center) {
      PointSet s = load_point_set(center_file);
      CenterMode mode = center_mode == "exact"       ? CenterMode::exact
                        : center_mode == "heuristic" ? CenterMode::heuristic
                                                     : CenterMode::automatic;
      CenterpointResult r = find_centerpoint(s, mode, center_seed);
      json j;
      j["point"] = point_json(r.point);
      j["depth"] = r.depth.depth;
      j["witness"] = rational_list(r.depth.witness);
      j["target"] = r.target;
      j["exact"] = r.exact;
      j["pass"] = r.ok;
      emit(j, plot_data);
      return r.ok ? kPass : kThreshold;
    }
    if (*fan) {
      PointSet s = load_point_set(fan_file);
      FanSolveOptions opt;
      opt.tolerance = fan_tol;
      opt.seed = fan_seed;
      FanSolveResult r = solve_equipartition_fan(s, fan_d ? fan_d : s.dim(), opt);
      json j;
      j["spine"] = flat_json(r.fan.spine);
      j["angles"] = r.fan.angles;
      j["part_counts"] = r.fan.part_counts;
      j["residual"] = r.fan.residual;
      j["evaluations"] = r.evaluations;
      emit(j, plot_data);
      return kPass;
    }
    if (*flat) {
      PointSet s = load_point_set(flat_file);
      Flat2Codim f = parse_flat(flat_text);
      StabCount c = count_triangles_stabbed(s, f);
      json j = count_json(s, c);
      // triangles count against n^3 here
      Integer n3 = Integer(static_cast<unsigned long>(s.size()));
      n3 = n3 * n3 * n3;
      j["ratio"] = to_decimal_string(fraction(Integer(static_cast<unsigned long>(c.strict)), n3), 12);
      if (s.dim() >= 2) j["target_constant"] = to_fraction_string(constants(std::max(2, s.dim())).thm5_lower);
      emit(j, plot_data);
      return kPass;
    }
    if (*repro) {
      ExperimentParams prm;
      for (const auto& kv : repro_params) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw InputError("parameter must be key=value: " + kv);
        prm.values[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
      StabReport r = reproduce(experiment, prm);
      std::string text = plot_data ? r.plot_data() : r.to_json(2) + "\n";
      if (repro_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream f(repro_out);
        if (!f) throw InputError("cannot write " + repro_out);
        f << text;
      }
      return r.pass() ? kPass : kThreshold;
    }
    if (*consts) {
      json rows = json::array();
      for (int d : const_d) {
        ConstantsRow c = constants(d);
        json j;
        j["d"] = d;
        j["wagner_lower"] = to_fraction_string(c.wagner_lower);
        j["upper_new"] = to_fraction_string(c.upper_new);
        j["upper_classic"] = to_fraction_string(c.upper_classic);
        j["thm5_lower"] = to_fraction_string(c.thm5_lower);
        j["alpha_curve"] = {to_fraction_string(c.alpha_coef_d), to_fraction_string(c.alpha_coef_d1)};
        if (!const_alpha.empty()) j["alpha_value"] = to_fraction_string(alpha_curve(d, parse_rational(const_alpha)));
        j["ordered"] = c.wagner_lower < c.upper_new && c.upper_new < c.upper_classic;
        rows.push_back(j);
      }
      if (plot_data) {
        std::cout << "d\twagner_lower\tupper_new\tupper_classic\tthm5_lower\n";
        for (const auto& j : rows)
          std::cout << j["d"].get<int>() << '\t' << j["wagner_lower"].get<std::string>() << '\t'
                    << j["upper_new"].get<std::string>() << '\t' << j["upper_classic"].get<std::string>() << '\t'
                    << j["thm5_lower"].get<std::string>() << '\n';
      } else {
        emit(rows, false);
      }
      return kPass;
    }
    if (*selftest) {
      const std::vector<std::pair<std::string, ExperimentParams>> quick = {
          {"planar-oracle", {{{"instances", "40"}, {"max_n", "30"}}}},
          {"wendel", {{{"trials", "30"}}}},
          {"sector-triangles", {{{"configs", "10"}}}},
          {"sphere-depth", {}},
          {"random-sphere", {}},
          {"boros-furedi", {{{"n", "45"}}}},
          {"equivariance", {{{"trials", "30"}}}},
          {"fan-equipartition", {{{"n2", "120"}, {"n3", "100"}, {"slack3", "3"}}}},
      };
      bool all = true;
      for (const auto& [name, prm] : quick) {
        StabReport r = reproduce(name, prm);
        all = all && r.pass();
        std::cout << (r.pass() ? "PASS " : "FAIL ") << name << " (" << r.seconds << " s)\n";
        for (const auto& c : r.checks)
          if (!c.pass) std::cout << "  failed: " << c.name << ": " << c.detail << "\n";
      }
      return all ? kPass : kThreshold;
    }
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << " (residual " << e.residual() << ")\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
