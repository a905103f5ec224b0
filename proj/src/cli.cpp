#include "cocyc/cli.hpp"

#include "cocyc/complex.hpp"
#include "cocyc/cut_norm.hpp"
#include "cocyc/graphon.hpp"
#include "cocyc/homology.hpp"
#include "cocyc/io.hpp"
#include "cocyc/lab.hpp"
#include "cocyc/regularity.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

namespace cocyc {

namespace {

constexpr std::uint64_t kDefaultCertifySeed = 20240601;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "6:20:2", "6:20" or "6,8,10"
std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  try {
    if (text.find(':') != std::string::npos) {
      std::vector<int> f;
      std::stringstream ss(text);
      std::string part;
      while (std::getline(ss, part, ':')) f.push_back(std::stoi(part));
      if (f.size() < 2 || f.size() > 3) throw UsageError(what + ": expected lo:hi or lo:hi:step");
      int step = f.size() == 3 ? f[2] : 1;
      if (step < 1 || f[0] > f[1]) throw UsageError(what + ": empty range '" + text + "'");
      for (int x = f[0]; x <= f[1]; x += step) out.push_back(x);
    } else {
      std::stringstream ss(text);
      std::string part;
      while (std::getline(ss, part, ',')) {
        std::size_t used = 0;
        out.push_back(std::stoi(part, &used));
        if (used != part.size()) throw UsageError(what + ": '" + part + "' is not an integer");
      }
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError(what + ": cannot parse '" + text + "'");
  }
  if (out.empty()) throw UsageError(what + ": empty list");
  return out;
}

GroupSpec parse_group(const std::string& text) {
  try {
    return GroupSpec(parse_int_list(text, "--group"));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(std::string("--group: ") + e.what());
  }
}

struct Common {
  std::string out_path;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, Common& c, bool seed_option) {
  sub->add_option("--out", c.out_path, "write the result here instead of stdout");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  if (seed_option) sub->add_option("--seed", c.seed, "master seed (required for randomized runs)");
}

std::uint64_t require_seed(const Common& c) {
  if (!c.seed) throw UsageError("--seed is required so that the run can be reproduced");
  return *c.seed;
}

void emit(const Common& c, std::ostream& out, const std::string& text) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + c.out_path + "'");
  f << text;
}

std::string render(const Common& c, const Table& t, const Json& j) {
  return c.format == "json" ? j.dump(2) + "\n" : t.to_csv();
}

Table key_value_table(const Json& j) {
  Table t;
  t.columns = {"key", "value"};
  for (auto it = j.begin(); it != j.end(); ++it)
    t.add({it.key(), it.value().is_string() ? it.value().get<std::string>() : it.value().dump()});
  return t;
}

Json exact_kernel_json(const ExactStepKernel& w) {
  Json values = Json::array();
  for (int i = 0; i < w.num_parts(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < w.num_parts(); ++j) {
      Json cell = Json::array();
      for (int g = 0; g < w.order(); ++g) cell.push_back(w.at(i, j, g).get_str());
      row.push_back(cell);
    }
    values.push_back(row);
  }
  Json parts = Json::array();
  for (const auto& p : w.parts()) parts.push_back(p.get_str());
  return {{"group", to_json(w.group())}, {"part_measures", parts}, {"values", values}};
}

Table kernel_table(const Json& j) {
  Table t;
  t.columns = {"i", "j", "g", "value"};
  const Json& v = j.at("values");
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = 0; b < v[a].size(); ++b)
      for (std::size_t g = 0; g < v[a][b].size(); ++g) {
        const Json& x = v[a][b][g];
        t.add({static_cast<std::int64_t>(a), static_cast<std::int64_t>(b), static_cast<std::int64_t>(g),
               x.is_string() ? x.get<std::string>() : format_double(x.get<double>())});
      }
  return t;
}

SymmetricDistribution read_nu(const std::string& path, const GroupSpec& group) {
  if (path.empty()) return SymmetricDistribution::uniform(group);
  return distribution_from_json(group, read_json_file(path));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cochain graphons and random 2-complexes", "cocyc"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "expand all help");

  std::function<int()> action;

  // certify
  Common cert;
  auto* certify = app.add_subcommand("certify", "run every certification check");
  add_common(certify, cert, true);
  certify->callback([&] {
    action = [&] {
      CertificationReport rep = run_certification(cert.seed.value_or(kDefaultCertifySeed));
      emit(cert, out, render(cert, rep.to_table(), rep.to_json()));
      return rep.passed() ? 0 : 1;
    };
  });

  // experiment subcommands share these
  std::string model = "one-out", ns_text, group_text = "2", primes_text = "2";
  int samples = 200, layers = 10;
  double c = 2.0;
  Common exp;
  auto experiment = [&](const std::string& name, const std::string& about, bool with_model) {
    auto* sub = app.add_subcommand(name, about);
    add_common(sub, exp, true);
    if (with_model) sub->add_option("--model", model, "hypertree, one-out, lm, full or faceless");
    sub->add_option("--n", ns_text, "vertex counts, e.g. 6:20:2 or 5,6,7")->required();
    sub->add_option("--group", group_text, "cyclic factors, e.g. 2 or 2,3");
    sub->add_option("--samples", samples, "replicas per n");
    sub->add_option("--c", c, "Linial-Meshulam density c/n");
    return sub;
  };
  auto config = [&] {
    ExperimentConfig cfg;
    try {
      cfg.model = parse_model(model);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    cfg.ns = parse_int_list(ns_text, "--n");
    cfg.group = parse_group(group_text);
    cfg.primes = parse_int_list(primes_text, "--p");
    cfg.samples = samples;
    cfg.c = c;
    cfg.layers = layers;
    cfg.seed = require_seed(exp);
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return cfg;
  };
  auto trend_json = [](const TrendResult& r) {
    return Json{{"rows", r.table.to_json()},
                {"trend_rule", "implementation-chosen: weakly decreasing, at most one step above 2 combined SE"},
                {"violations", r.violations},
                {"passed", r.passed}};
  };

  auto* ez1 = experiment("ez1-trend", "Monte Carlo mean of |Z^1| per n", true);
  ez1->callback([&] {
    action = [&] {
      TrendResult r = run_ez1_trend(config());
      emit(exp, out, render(exp, r.table, trend_json(r)));
      return r.passed ? 0 : 1;
    };
  });

  auto* betti = experiment("betti-trend", "quantiles of dim H_1(X, F_p)/n^2 per n", true);
  betti->add_option("--p", primes_text, "primes, e.g. 2,3");
  betti->callback([&] {
    action = [&] {
      TrendResult r = run_betti_trend(config());
      emit(exp, out, render(exp, r.table, trend_json(r)));
      return r.passed ? 0 : 1;
    };
  });

  std::string table_choice = "layers";
  auto* audit = experiment("layer-audit", "layered counting audit over random cochains (n <= 8)", false);
  audit->add_option("--layers", layers, "number of layers k (eps = log|G|/k)");
  audit->add_option("--table", table_choice, "CSV table to print: layers or samples")
      ->check(CLI::IsMember({"layers", "samples"}));
  audit->callback([&] {
    action = [&] {
      ExperimentConfig cfg = config();
      cfg.model = Model::Hypertree;
      LayerAudit a = run_layer_audit(cfg);
      Json j = {{"layers", a.layers.to_json()},
                {"samples", a.samples.to_json()},
                {"bound_violations", a.bound_violations},
                {"identity_failures", a.identity_failures},
                {"route_mismatches", a.route_mismatches},
                {"counts_consistent", a.counts_consistent},
                {"passed", a.passed()}};
      emit(exp, out, render(exp, table_choice == "layers" ? a.layers : a.samples, j));
      return a.passed() ? 0 : 1;
    };
  });

  Common ldp;
  std::string ldp_group = "2";
  auto* ldp_cmd = app.add_subcommand("ldp-numerics", "moment generating function, duality and Gibbs audits");
  add_common(ldp_cmd, ldp, true);
  ldp_cmd->add_option("--group", ldp_group, "group for the moment generating function table");
  ldp_cmd->callback([&] {
    action = [&] {
      LdpReport r = run_ldp_numerics(parse_group(ldp_group), require_seed(ldp));
      Table t = r.mgf;
      if (ldp.format == "csv") {
        t = Table{};
        t.columns = {"quantity", "value", "tolerance"};
        t.add({std::string("mgf_gap_ratio_16_32"), r.gap_ratio, std::string("[0.3,0.7]")});
        t.add({std::string("max_dual_gap"), r.max_dual_gap, std::string("1e-10")});
        t.add({std::string("max_weak_duality_excess"), r.max_weak_duality_excess, std::string("1e-12")});
        t.add({std::string("max_gibbs_b_plus_H"), r.max_gibbs, std::string("1e-12")});
        t.add({std::string("gibbs_at_uniform"), r.gibbs_at_uniform, std::string("1e-12")});
        for (const auto& row : r.mgf.rows)
          t.add({"mgf_gap_n" + std::to_string(std::get<std::int64_t>(row[0])), row[3], std::string("")});
      }
      emit(ldp, out, render(ldp, t, r.to_json()));
      return r.passed() ? 0 : 1;
    };
  });

  // sample
  Common smp;
  int sample_n = 0, sample_count = 1;
  std::string sample_model = "hypertree";
  double sample_c = 2.0;
  auto* sample = app.add_subcommand("sample", "draw random complexes");
  add_common(sample, smp, true);
  sample->add_option("--n", sample_n, "vertices")->required();
  sample->add_option("--model", sample_model, "hypertree, one-out, lm, full or faceless");
  sample->add_option("--c", sample_c, "Linial-Meshulam density c/n");
  sample->add_option("--samples", sample_count, "number of complexes");
  sample->callback([&] {
    action = [&] {
      Model m;
      try {
        m = parse_model(sample_model);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      ExperimentConfig cfg;
      cfg.model = m;
      cfg.ns = {sample_n};
      cfg.samples = sample_count;
      try {
        cfg.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      std::optional<ProjectionKernel> kernel;
      if (m == Model::Hypertree) kernel = build_kernel(sample_n);
      auto complexes = run_replicas(require_seed(smp), sample_count, [&](int, Rng& rng) {
        return sample_complex(m, sample_n, sample_c, kernel ? &*kernel : nullptr, rng);
      });
      Table t;
      t.columns = {"replica", "u", "v", "w"};
      Json arr = Json::array();
      for (std::size_t r = 0; r < complexes.size(); ++r) {
        for (const auto& tri : complexes[r].triangles())
          t.add({static_cast<std::int64_t>(r), std::int64_t{tri.a}, std::int64_t{tri.b}, std::int64_t{tri.c}});
        arr.push_back(to_json(complexes[r]));
      }
      emit(smp, out, render(smp, t, complexes.size() == 1 ? arr[0] : arr));
      return 0;
    };
  });

  // homology
  Common hom;
  std::string hom_in;
  std::optional<int> hom_p;
  bool full_snf = false;
  auto* homology = app.add_subcommand("homology", "homology report of a complex");
  add_common(homology, hom, false);
  homology->add_option("--in", hom_in, "complex JSON {n, triangles}")->required();
  homology->add_option("--p", hom_p, "prime for F_p dimensions");
  homology->add_flag("--full-snf", full_snf, "also list every invariant factor of d2, ones included");
  homology->callback([&] {
    action = [&] {
      if (hom_p && !is_prime(*hom_p)) throw UsageError("--p: " + std::to_string(*hom_p) + " is not prime");
      TwoComplex x = complex_from_json(read_json_file(hom_in));
      Json j = to_json(homology_report(x, hom_p));
      if (full_snf) {
        Json all = Json::array();
        for (const auto& d : smith_normal_form(boundary_d2(x.n(), x.triangles()))) all.push_back(d.get_str());
        j["invariant_factors"] = all;
      }
      emit(hom, out, render(hom, key_value_table(j), j));
      return j.at("torsion_bound_holds").get<bool>() ? 0 : 1;
    };
  });

  // graphon
  auto* graphon = app.add_subcommand("graphon", "step cochain graphon operations");
  graphon->require_subcommand(1);
  Common gr;
  std::string g_in, g_other, g_nu;
  bool g_exact = false;
  double g_eps = 0.2;

  auto* cutnorm = graphon->add_subcommand("cutnorm", "cut norm, or cut distance bounds with --other");
  add_common(cutnorm, gr, true);
  cutnorm->add_option("--in", g_in, "kernel JSON")->required();
  cutnorm->add_option("--other", g_other, "second kernel for cut distance bounds");
  cutnorm->callback([&] {
    action = [&] {
      StepKernel w = kernel_from_json(read_json_file(g_in), false);
      Json j;
      if (g_other.empty()) {
        j = {{"cut_norm", json_number(cut_norm(w))}, {"exact", w.num_parts() <= 24}};
      } else {
        StepKernel v = kernel_from_json(read_json_file(g_other), false);
        CutDistanceBounds b = cut_distance_bounds(w, v, gr.seed.value_or(0));
        j = {{"cut_distance_lower", json_number(b.lower)},
             {"cut_distance_upper", json_number(b.upper)},
             {"upper_exhaustive", b.exhaustive}};
      }
      emit(gr, out, render(gr, key_value_table(j), j));
      return 0;
    };
  });

  auto* bcmd = graphon->add_subcommand("b", "b functional <W, log(W*W)>");
  add_common(bcmd, gr, false);
  bcmd->add_option("--in", g_in, "graphon JSON")->required();
  bcmd->add_flag("--exact", g_exact, "rational arithmetic; reports the value as a sum of logs");
  bcmd->callback([&] {
    action = [&] {
      Json doc = read_json_file(g_in);
      Json j;
      if (g_exact) {
        ExactLogSum s = b_functional_exact(exact_kernel_from_json(doc));
        Json terms = Json::array();
        for (const auto& [base, coeff] : s.terms()) terms.push_back({{"coeff", coeff.get_str()}, {"base", base.get_str()}});
        j = {{"b", json_number(s.to_double())}, {"neg_inf", s.is_negative_infinity()}, {"log_terms", terms}};
      } else {
        j = {{"b", json_number(b_functional(kernel_from_json(doc)))}};
      }
      emit(gr, out, render(gr, key_value_table(j), j));
      return 0;
    };
  });

  auto* rate = graphon->add_subcommand("rate", "rate function I_nu and entropy H");
  add_common(rate, gr, false);
  rate->add_option("--in", g_in, "graphon JSON")->required();
  rate->add_option("--nu", g_nu, "distribution JSON (default uniform)");
  rate->callback([&] {
    action = [&] {
      StepKernel w = kernel_from_json(read_json_file(g_in));
      SymmetricDistribution nu = read_nu(g_nu, w.group());
      Json j = {{"rate", json_number(rate_function(w, nu))}, {"entropy_H", json_number(entropy_h(w))},
                {"in_W00", w.in_w00()}};
      emit(gr, out, render(gr, key_value_table(j), j));
      return 0;
    };
  });

  auto* conv = graphon->add_subcommand("convolve", "V*W on the common refinement");
  add_common(conv, gr, false);
  conv->add_option("--in", g_in, "kernel V")->required();
  conv->add_option("--other", g_other, "kernel W (default V)");
  conv->add_flag("--exact", g_exact, "rational arithmetic");
  conv->callback([&] {
    action = [&] {
      Json a = read_json_file(g_in);
      Json b = g_other.empty() ? a : read_json_file(g_other);
      Json j;
      if (g_exact) j = exact_kernel_json(convolve(exact_kernel_from_json(a, false), exact_kernel_from_json(b, false)));
      else j = to_json(convolve(kernel_from_json(a, false), kernel_from_json(b, false)));
      emit(gr, out, render(gr, kernel_table(j), j));
      return 0;
    };
  });

  auto* fk = graphon->add_subcommand("fk", "weak regularity partition");
  add_common(fk, gr, true);
  fk->add_option("--in", g_in, "kernel JSON")->required();
  fk->add_option("--eps", g_eps, "target accuracy")->check(CLI::Range(1e-3, 1.0));
  fk->callback([&] {
    action = [&] {
      StepKernel w = kernel_from_json(read_json_file(g_in), false);
      FkResult r = fk_decompose(w, g_eps, gr.seed.value_or(0));
      Json j = to_json(r);
      Table t;
      t.columns = {"round", "slice", "violation", "energy", "parts"};
      for (std::size_t i = 0; i < r.trace.size(); ++i)
        t.add({static_cast<std::int64_t>(i + 1), std::int64_t{r.trace[i].slice}, r.trace[i].violation, r.trace[i].energy,
               std::int64_t{r.trace[i].parts}});
      emit(gr, out, render(gr, t, j));
      return r.residual <= g_eps * r.scale + 1e-12 ? 0 : 1;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (!args.empty()) err << "run with --help for usage\n";
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (!action) {
    err << "error: no subcommand given\n";
    return 2;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "check failed: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace cocyc
