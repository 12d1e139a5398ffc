#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cubaut/singularity.hpp"
#include "cubaut/verifier.hpp"
#include "report_json.hpp"

namespace {

using namespace cubaut;

constexpr int kExitUsage = 2;

struct Common {
  std::size_t budget = GroebnerOptions{}.budget;
  std::string report_path;
  bool no_timing = false;
  std::string command;

  VerifyOptions verify() const {
    VerifyOptions o;
    o.groebner.budget = budget;
    return o;
  }
};

int emit(const VerificationReport& r, const Common& c) {
  std::cout << tools::to_text(r);
  if (!c.report_path.empty()) {
    const auto j = tools::to_json(r, {!c.no_timing, c.command});
    if (c.report_path == "-") {
      std::cout << j.dump(2) << '\n';
    } else {
      std::ofstream out(c.report_path);
      if (!out) {
        std::cerr << "cannot write " << c.report_path << '\n';
        return kExitUsage;
      }
      out << j.dump(2) << '\n';
    }
  }
  return r.ok() ? 0 : 1;
}

const CatalogEntry& table_entry(const std::string& tag) {
  static std::map<std::string, CatalogEntry> cache;
  auto it = cache.find(tag);
  if (it == cache.end()) {
    const CatalogEntry e = catalog_build(tag);
    if (e.parametric) throw UnknownTag(tag + " (a family; pass a table tag)");
    it = cache.emplace(tag, e).first;
  }
  return it->second;
}

VerificationReport run_aut(const std::string& tag) {
  const CatalogEntry& e = table_entry(tag);
  VerificationReport r;
  Claim order{tag + ".aut.order", ClaimStatus::Pass, "|Aut(X)| = " + std::to_string(e.aut_order), {}, "", 0};
  AutomorphismStats st;
  const GroupHandle g = compute_automorphism_group(e.form, e.seed_points, &st);
  order.witness.emplace_back("order", std::to_string(g.order()));
  order.witness.emplace_back("candidate_lifts", std::to_string(st.frames_tried));
  if (g.order() != e.aut_order) order.status = ClaimStatus::Fail;
  r.add(order);
  const auto name = identify(fingerprint(g));
  Claim fp{tag + ".aut.fingerprint", name == e.aut_name ? ClaimStatus::Pass : ClaimStatus::Fail, "Aut(X) is " + e.aut_name,
           {{"group", name.value_or("unidentified")}, {"fingerprint", fingerprint(g).to_string()}}, "", 0};
  for (int i : g.generators()) {
    fp.witness.emplace_back("generator", g.transform(i).to_string());
    fp.witness.emplace_back("on_singular_points", induced_permutation(g.transform(i), e.seed_points)->to_string());
  }
  r.add(fp);
  return r;
}

VerificationReport run_sing(const std::string& name, const MultiPoly& f, std::vector<ProjPoint> points,
                            const VerifyOptions& opts, bool search) {
  VerificationReport r;
  std::string search_error;
  if (search) {
    try {
      points = rational_singular_points(f, opts.groebner);
    } catch (const std::exception& ex) {
      search_error = ex.what();
    }
  }
  const auto cert = certify_singular_locus(f, points, opts.groebner);
  Claim locus{name + ".singular_locus", cert.ok() ? ClaimStatus::Pass : ClaimStatus::Fail,
              "Sing(X) is the listed finite set", {{"s", std::to_string(points.size())}}, "", 0};
  if (!search_error.empty()) {
    locus.status = ClaimStatus::Fail;
    locus.witness.emplace_back("error", search_error);
  } else if (!cert.ok()) {
    locus.witness.emplace_back("failure", cert.failure());
    if (search) locus.witness.emplace_back("note", "only rational singular points are searched");
  }
  r.add(locus);
  std::vector<SingularityReport> reports;
  ClassifyOptions co;
  co.groebner = opts.groebner;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Claim c{name + ".point" + std::to_string(i + 1), ClaimStatus::Pass, "local type", {{"point", points[i].to_string()}}, "", 0};
    try {
      reports.push_back(classify_singularity(f, points[i], co));
      const auto& rep = reports.back();
      c.witness.emplace_back("type", rep.label());
      c.witness.emplace_back("mu", std::to_string(rep.mu));
      c.witness.emplace_back("mu_section", std::to_string(rep.mu_section));
      c.witness.emplace_back("hessian_rank", std::to_string(rep.hessian_rank));
    } catch (const std::exception& ex) {
      c.status = ClaimStatus::Fail;
      c.witness.emplace_back("error", ex.what());
    }
    r.add(c);
  }
  const auto b = dual_degree_budget(reports);
  r.add({name + ".dual_degree_budget", b.feasible() && reports.size() == points.size() ? ClaimStatus::Pass : ClaimStatus::Fail,
         "3*2^3 - sum m(p) >= 3", {{"budget", std::to_string(b.value)}}, "", 0});
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream body;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    body << line.substr(0, hash) << ' ';
  }
  return body.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of automorphism groups of singular cubic threefolds"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--budget", common.budget, "S-pair reduction cap for the ideal engine")->check(CLI::PositiveNumber);
  app.add_option("--report", common.report_path, "write the JSON report to PATH ('-' for stdout)");
  app.add_flag("--no-timing", common.no_timing, "omit per-claim timings from the JSON report");

  std::string variety;
  bool all = false;
  auto* verify = app.add_subcommand("verify", "reproduce table rows");
  auto* vopt = verify->add_option("--variety", variety, "catalog tag");
  auto* aopt = verify->add_flag("--all", all, "all rows and the excluded groups");
  vopt->excludes(aopt);
  verify->require_option(1);

  auto* aut = app.add_subcommand("aut", "automorphism group of a table entry");
  aut->add_option("--variety", variety, "catalog tag")->required();

  std::string input;
  int conductor = 1;
  auto* sing = app.add_subcommand("sing", "certify and classify singular points");
  auto* sv = sing->add_option("--variety", variety, "catalog tag");
  auto* si = sing->add_option("--input", input, "file with one cubic in x0..x4 (DSL)")->check(CLI::ExistingFile);
  sing->add_option("--conductor", conductor, "cyclotomic conductor for --input")->check(CLI::PositiveNumber);
  sv->excludes(si);
  sing->require_option(1, 2);

  app.add_subcommand("pr1", "parameter conditions of the J9 family");
  app.add_subcommand("eliminations", "J11 and four-node eliminations");
  auto* cat = app.add_subcommand("catalog", "catalog contents");
  bool list = false;
  cat->add_flag("--list", list, "list tags")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  common.command = app.get_subcommands().front()->get_name();

  try {
    const VerifyOptions opts = common.verify();
    if (*verify) {
      VerificationReport r;
      if (all) {
        r = verify_table(opts);
        r.append(verify_exclusions(opts));
      } else {
        table_entry(variety);
        r = verify_row(variety, opts);
      }
      return emit(r, common);
    }
    if (*aut) return emit(run_aut(variety), common);
    if (*sing) {
      if (!variety.empty()) {
        const CatalogEntry& e = table_entry(variety);
        return emit(run_sing(variety, e.form, e.seed_points, opts, false), common);
      }
      const MultiPoly f = parse_poly(read_file(input), {5, conductor});
      if (!f.is_homogeneous() || f.total_degree() != 3) throw std::invalid_argument("input must be a cubic form in x0..x4");
      return emit(run_sing("input", f, {}, opts, true), common);
    }
    if (app.got_subcommand("pr1")) return emit(verify_pr1(opts), common);
    if (app.got_subcommand("eliminations")) return emit(verify_eliminations(opts), common);
    if (*cat) {
      for (const auto& t : catalog_tags()) {
        const CatalogEntry e = catalog_build(t);
        std::cout << t << (e.parametric ? "  family(" : "  s=" + std::to_string(e.s) + " |Aut|=" + std::to_string(e.aut_order) + " ");
        if (e.parametric) {
          for (std::size_t i = 0; i < e.parameters.size(); ++i) std::cout << (i ? ", " : "") << e.parameters[i];
          std::cout << ")";
        } else {
          std::cout << e.aut_name;
        }
        std::cout << '\n';
      }
      return 0;
    }
  } catch (const UnknownTag& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}
