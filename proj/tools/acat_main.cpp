// acat: exact-arithmetic toolkit for finitely presented A-infinity categories.
//
// Subcommands: check, cohomology, localize, nerve, hochschild, functors,
// verify-paper.  Exit codes: 0 pass, 1 verification failure, 2 parse error,
// 3 infeasible size.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "acat/localization.hpp"
#include "acat/verify.hpp"

using namespace acat;

namespace {

struct CommonOpts {
  int L = 3;
  std::vector<int> window{-4, 2};
  int arity = 4;
  int nerve_dim = 3;
  std::string json_path;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--L", o.L, "word-length truncation");
  cmd->add_option("--window", o.window, "degree window lo hi")->expected(2);
  cmd->add_option("--arity", o.arity, "operation arity bound");
  cmd->add_option("--nerve-dim", o.nerve_dim, "simplicial dimension bound");
  cmd->add_option("--json", o.json_path, "write the machine-readable report here");
}

void emit(const std::string& json, const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path);
  out << json;
}

int run_check(const std::string& file, const CommonOpts& o) {
  NamedCategory nc = parse_category_file(file);
  nc.cat.validate();
  RelationReport rep = check_relations(nc.cat, std::min(4, nc.cat.arity_bound), 50000);
  std::cout << "category " << nc.name << " over " << nc.cat.ring.name() << ": "
            << rep.summary() << "\n";
  nlohmann::ordered_json j;
  j["schema"] = "acat-report/1";
  j["command"] = "check";
  j["category"] = nc.name;
  j["relations"] = rep.passed;
  for (const auto& [xy, H] : nc.cat.homs) {
    if (H.module.total_rank() == 0) continue;
    std::string key = nc.cat.objects[xy.first] + "," + nc.cat.objects[xy.second];
    for (const auto& [d, G] :
         cohomology(H, std::max(H.module.dmin, o.window[0]), std::min(H.module.dmax, o.window[1]))) {
      std::cout << "  H^" << d << "(" << key << ") = " << G.to_string() << "\n";
      j["cohomology"][key][std::to_string(d)] = G.to_string();
    }
  }
  emit(j.dump(2) + "\n", o.json_path);
  if (!rep.passed) {
    for (const auto& f : rep.failures) std::cout << "  counterexample: " << f.detail << "\n";
    return 1;
  }
  return 0;
}

int run_cohomology(const std::string& file, const CommonOpts& o) {
  NamedCategory nc = parse_category_file(file);
  nlohmann::ordered_json j;
  j["schema"] = "acat-report/1";
  j["command"] = "cohomology";
  j["category"] = nc.name;
  if (nc.cat.homs.empty()) std::cout << "empty category: nothing to report\n";
  for (const auto& [xy, H] : nc.cat.homs) {
    if (H.module.total_rank() == 0) continue;
    std::string key = nc.cat.objects[xy.first] + "," + nc.cat.objects[xy.second];
    for (const auto& [d, G] : cohomology(H, o.window[0], o.window[1])) {
      std::cout << "H^" << d << "(" << key << ") = " << G.to_string() << "\n";
      j["cohomology"][key][std::to_string(d)] = G.to_string();
    }
  }
  emit(j.dump(2) + "\n", o.json_path);
  return 0;
}

int run_localize(const std::string& file, const std::vector<std::string>& invert, bool at_units,
                 const CommonOpts& o) {
  NamedCategory nc = parse_category_file(file);
  std::vector<Element> I;
  if (at_units) {
    require(!nc.cat.units.empty(), "localize --units: the category declares no units");
    for (const auto& [x, e] : nc.cat.units) I.push_back(e);
  }
  for (const auto& lbl : invert) {
    bool found = false;
    for (const auto& [xy, H] : nc.cat.homs)
      for (const auto& [d, ls] : H.module.basis)
        for (long i = 0; i < static_cast<long>(ls.size()); ++i)
          if (ls[i] == lbl) {
            I.push_back(Element::basis(nc.cat.ring, BasisRef{xy.first, xy.second, d, i}));
            found = true;
          }
    require(found, "localize: unknown morphism label '" + lbl + "'");
  }
  LocCategory loc = localize(nc.cat, I, o.L, o.window[0] - 2, o.window[1] + 2);
  nlohmann::ordered_json j;
  j["schema"] = "acat-report/1";
  j["command"] = "localize";
  j["category"] = nc.name;
  j["L"] = o.L;
  bool all_ok = true;
  for (int x = 0; x < static_cast<int>(nc.cat.objects.size()); ++x)
    for (int y = 0; y < static_cast<int>(nc.cat.objects.size()); ++y) {
      const CochainComplex& H = loc.cat.hom(x, y);
      if (H.module.total_rank() == 0) continue;
      std::string key = nc.cat.objects[x] + "," + nc.cat.objects[y];
      for (const auto& [d, G] : cohomology(H, o.window[0], o.window[1])) {
        std::cout << "H^" << d << "(F_<=" << o.L << " hom(" << key << ")) = " << G.to_string()
                  << "\n";
        j["cohomology"][key][std::to_string(d)] = G.to_string();
      }
      for (int l = 2; l <= o.L; ++l)
        for (const auto& g : check_graded_acyclicity(loc, x, y, l, o.window[0] + 1,
                                                     o.window[1] - 1)) {
          std::string thr;
          for (int t : g.thread) thr += std::to_string(t);
          j["graded"][key]["l" + std::to_string(l) + ":" + thr] = g.acyclic;
          if (!g.acyclic && x != y) all_ok = false;
        }
    }
  emit(j.dump(2) + "\n", o.json_path);
  return all_ok ? 0 : 1;
}

int run_nerve(const std::string& file, const CommonOpts& o, bool do_enumerate) {
  NamedCategory nc = parse_category_file(file);
  TruncatedSimplicialSet N = nc.cat.strictly_unital ? ainfty_nerve(nc.cat, o.nerve_dim)
                                                    : dg_nerve(nc.cat, o.nerve_dim);
  nlohmann::ordered_json j;
  j["schema"] = "acat-report/1";
  j["command"] = "nerve";
  j["category"] = nc.name;
  if (do_enumerate) {
    if (!nc.cat.ring.is_finite()) {
      std::cout << "enumeration infeasible over " << nc.cat.ring.name() << "\n";
      return 3;
    }
    enumerate_cells(N);
    for (const auto& [n, cs] : N.cells) {
      std::cout << "dimension " << n << ": " << cs.size() << " simplices\n";
      j["cells"][std::to_string(n)] = cs.size();
      // dump with face maps
      for (size_t i = 0; i < cs.size() && n > 0; ++i) {
        nlohmann::ordered_json fj = nlohmann::ordered_json::array();
        for (int k = 0; k <= n; ++k) {
          Simplex f = face(cs[i], k);
          auto it = std::find(N.cells.at(n - 1).begin(), N.cells.at(n - 1).end(), f);
          fj.push_back(it == N.cells.at(n - 1).end()
                           ? -1
                           : static_cast<long>(it - N.cells.at(n - 1).begin()));
        }
        j["faces"][std::to_string(n)][std::to_string(i)] = fj;
      }
    }
    std::cout << "pi0(core) = " << pi0_core(N) << "\n";
    j["pi0_core"] = pi0_core(N);
    for (int x = 0; x < static_cast<int>(nc.cat.objects.size()); ++x) {
      GroupDescriptor g = pi1_core(N, x);
      std::cout << "pi1(core, " << nc.cat.objects[x] << ") = " << g.to_string() << "\n";
      j["pi1_core"][nc.cat.objects[x]] = g.to_string();
    }
  } else {
    std::cout << "nerve presented by coherence systems up to dimension " << o.nerve_dim
              << " (use --enumerate over finite fields for cell listings)\n";
  }
  emit(j.dump(2) + "\n", o.json_path);
  return 0;
}

int run_hochschild(const std::string& file, const CommonOpts& o) {
  NamedCategory nc = parse_category_file(file);
  FunComplex fc = hochschild(nc.cat, o.arity);
  nlohmann::ordered_json j;
  j["schema"] = "acat-report/1";
  j["command"] = "hochschild";
  j["category"] = nc.name;
  j["arity"] = o.arity;
  int hi = fc.complex.trust ? std::min(o.window[1], fc.complex.trust->second) : o.window[1];
  for (const auto& [d, G] : cohomology(fc.complex, std::max(0, o.window[0]), hi)) {
    std::cout << "HH^" << d << " = " << G.to_string() << "\n";
    j["HH"][std::to_string(d)] = G.to_string();
  }
  emit(j.dump(2) + "\n", o.json_path);
  return 0;
}

int run_functors(const std::string& srcfile, const std::string& tgtfile,
                 const std::string& functorfile, bool pi0, const CommonOpts& o) {
  NamedCategory A = parse_category_file(srcfile), B = parse_category_file(tgtfile);
  nlohmann::ordered_json j;
  j["schema"] = "acat-report/1";
  j["command"] = "functors";
  if (!functorfile.empty()) {
    std::ifstream in(functorfile);
    require(in.good(), "cannot open '" + functorfile + "'");
    AInftyFunctor f = parse_functor(in, A.cat, B.cat);
    FunctorReport rep = check_functor(f, std::min(o.arity, 4));
    std::cout << rep.summary() << "\n";
    std::string why;
    bool unital = is_unital_functor(f, &why);
    std::cout << (unital ? "unital" : "not unital: " + why) << "\n";
    j["functor_equations"] = rep.passed;
    j["unital"] = unital;
    emit(j.dump(2) + "\n", o.json_path);
    return rep.passed ? 0 : 1;
  }
  if (pi0) {
    Pi0Report rep = pi0_functor_classes(A.cat, B.cat, std::min(o.arity, 3));
    if (!rep.feasible) {
      std::cout << "infeasible: " << rep.note << "\n";
      return 3;
    }
    std::cout << "unital functors: " << rep.unital << ", homotopy classes: " << rep.classes
              << "\n";
    j["unital"] = rep.unital;
    j["classes"] = rep.classes;
    emit(j.dump(2) + "\n", o.json_path);
    return 0;
  }
  std::cout << "nothing to do (use --check or --pi0)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact A-infinity category toolkit"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string file, file2, functorfile, suite = "all";
  std::vector<std::string> invert;
  bool at_units = false, do_enumerate = false, pi0 = false;

  auto* c_check = app.add_subcommand("check", "parse, validate and report a category");
  c_check->add_option("file", file)->required();
  add_common(c_check, o);

  auto* c_coh = app.add_subcommand("cohomology", "per-degree group descriptors of the homs");
  c_coh->add_option("file", file)->required();
  add_common(c_coh, o);

  auto* c_loc = app.add_subcommand("localize", "bar-construction localization report");
  c_loc->add_option("file", file)->required();
  c_loc->add_flag("--units", at_units, "invert the declared units");
  c_loc->add_option("--invert", invert, "invert these basis labels");
  add_common(c_loc, o);

  auto* c_nerve = app.add_subcommand("nerve", "dg / A-infinity nerve");
  c_nerve->add_option("file", file)->required();
  c_nerve->add_flag("--enumerate", do_enumerate, "enumerate cells (finite fields)");
  add_common(c_nerve, o);

  auto* c_hh = app.add_subcommand("hochschild", "Hochschild cochains of a category");
  c_hh->add_option("file", file)->required();
  add_common(c_hh, o);

  auto* c_fun = app.add_subcommand("functors", "functor category operations");
  c_fun->add_option("source", file)->required();
  c_fun->add_option("target", file2)->required();
  c_fun->add_option("--check", functorfile, "verify a functor file");
  c_fun->add_flag("--pi0", pi0, "enumerate homotopy classes of unital functors");
  add_common(c_fun, o);

  auto* c_vp = app.add_subcommand("verify-paper", "run the bundled verification suites");
  c_vp->add_option("--suite", suite,
                   "relations|units|cones|zw|right-inverse|operators|mod-i|nerve|hochschild|"
                   "functors|loc-naturality|all");
  add_common(c_vp, o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_check->parsed()) return run_check(file, o);
    if (c_coh->parsed()) return run_cohomology(file, o);
    if (c_loc->parsed()) return run_localize(file, invert, at_units, o);
    if (c_nerve->parsed()) return run_nerve(file, o, do_enumerate);
    if (c_hh->parsed()) return run_hochschild(file, o);
    if (c_fun->parsed()) return run_functors(file, file2, functorfile, pi0, o);
    if (c_vp->parsed()) {
      VerifyOptions vo{o.L, o.window[0], o.window[1], o.arity, o.nerve_dim};
      auto results = verify_paper_suite(suite, vo);
      bool all = true;
      for (const auto& r : results) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
        std::cerr << "  (" << r.name << " took " << r.seconds << "s)\n";
        all &= r.passed;
      }
      std::string json = report_json(results, vo, "verify-paper --suite " + suite);
      emit(json, o.json_path);
      if (o.json_path.empty()) std::cout << json;
      return all ? 0 : 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::string msg = e.what();
    return msg.find("too large") != std::string::npos || msg.find("infeasible") != std::string::npos
               ? 3
               : 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
