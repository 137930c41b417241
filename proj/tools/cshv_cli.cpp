#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"

#include "cshv/acceptance.hpp"
#include "cshv/cosheaf.hpp"
#include "cshv/derham.hpp"
#include "cshv/error.hpp"
#include "cshv/io.hpp"
#include "cshv/sheaf.hpp"
#include "cshv/stratify.hpp"

using namespace cshv;
using io::Json;

namespace {

enum Exit { kOk = 0, kVerificationFailed = 1, kInputError = 2 };

struct Options {
  std::string sheaf, map, space, sets, region, certificate, out;
  bool bar = false;
  std::uint64_t seed = 0;
  int criterion = 0;
};

Json check(const std::string& name, bool passed, const std::string& detail = "") {
  Json c{{"name", name}, {"passed", passed}};
  if (!detail.empty()) c["detail"] = detail;
  return c;
}

bool all_passed(const Json& checks) {
  for (const auto& c : checks)
    if (!c["passed"].get<bool>()) return false;
  return true;
}

void emit(const Json& doc, const std::string& out) {
  if (out.empty()) {
    std::cout << io::dump(doc);
    return;
  }
  std::ofstream f(out);
  if (!f) throw InputError(out + ": cannot open for writing");
  f << io::dump(doc);
}

Json homology_json(const PosetRep& f) {
  Json h = Json::object();
  std::vector<std::size_t> order(f.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return f.base().label(a) < f.base().label(b); });
  const auto hs = stalk_homology(f);
  for (auto i : order) h[f.base().label(i)] = io::to_json(hs[i]);
  return h;
}

PosetRep read_sheaf(const Options& o) {
  if (o.sheaf.empty()) throw InputError("--sheaf is required");
  return io::rep_from_json(io::read_file(o.sheaf), o.sheaf + ":");
}

MonotoneMap read_map(const Options& o) {
  if (o.map.empty()) throw InputError("--map is required");
  return io::map_from_json(io::read_file(o.map), o.map + ":");
}

ResolutionKind kind(const Options& o) { return o.bar ? ResolutionKind::bar : ResolutionKind::algorithmic; }

int cmd_homology(const Options& o) {
  PosetRep f = read_sheaf(o);
  Json report{{"verb", "homology"}};
  if (!o.map.empty()) {
    const MonotoneMap m = read_map(o);
    if (!(m.source() == f.base())) throw InputError(o.map + ": map source differs from the sheaf base");
    f = derived_pushforward(m, f, kind(o));
  }
  report["base"] = io::to_json(f.base());
  report["homology"] = homology_json(f);
  if (f.size() == 1) {
    const GradedDims h = stalk_homology(f).at(0);
    Json betti = Json::array();
    for (int k = 0; k <= h.hi(); ++k) betti.push_back(h.at(k));
    report["betti"] = betti;
  }
  report["checks"] = Json::array();
  emit(report, o.out);
  return kOk;
}

int cmd_pushforward(const Options& o) {
  const PosetRep f = read_sheaf(o);
  const MonotoneMap m = read_map(o);
  if (!(m.source() == f.base())) throw InputError(o.map + ": map source differs from the sheaf base");
  const PosetRep g = derived_pushforward(m, f, kind(o));
  Json report = io::to_json(g);
  const PosetRep other = derived_pushforward(m, f, o.bar ? ResolutionKind::algorithmic : ResolutionKind::bar);
  Json checks = Json::array();
  checks.push_back(check("resolution independence", stalk_homology(g) == stalk_homology(other)));
  report["checks"] = checks;
  emit(report, o.out);
  return all_passed(checks) ? kOk : kVerificationFailed;
}

int cmd_resolve(const Options& o) {
  const PosetRep f = read_sheaf(o);
  const Resolution res = o.bar ? bar_resolution(f) : resolve(f);
  const PosetRep real = realize(res.complex);
  Json report = io::to_json(res.complex);
  report["length"] = res.length;
  Json checks = Json::array();
  checks.push_back(check("augmentation is natural", is_natural(res.augmentation, real, f)));
  checks.push_back(check("augmentation is a stalkwise quasi-isomorphism", is_stalkwise_quasi_iso(res.augmentation, real, f)));
  checks.push_back(check("length at most 2|P|", res.length <= 2 * static_cast<int>(f.base().size())));
  report["checks"] = checks;
  emit(report, o.out);
  return all_passed(checks) ? kOk : kVerificationFailed;
}

int cmd_refine(const Options& o) {
  if (o.space.empty()) throw InputError("--space is required");
  const Json sj = io::read_file(o.space);
  Stratification result;
  std::vector<Subset> theta;
  if (sj.is_object() && sj.contains("strata")) {
    const Stratification s = io::stratification_from_json(sj, o.space + ":");
    const Refinement r = refine_stratification(s);
    result = r.refined;
    theta = s.strata();
  } else {
    const FinPoset x = io::poset_from_json(sj, o.space + ":");
    if (!o.sets.empty()) theta = io::subsets_from_json(io::read_file(o.sets), x, o.sets + ":");
    result = proper_refine(x, theta);
  }
  const ProperCheck pc = is_proper(result);
  bool unions = true;
  for (const auto& s : theta)
    for (const auto& stratum : result.strata()) {
      const Subset common = set_intersection(stratum, s);
      if (!common.empty() && common != stratum) unions = false;
    }
  Json report = io::to_json(result);
  report["is_proper"] = pc.proper;
  Json checks = Json::array();
  checks.push_back(check("is_proper", pc.proper));
  checks.push_back(check("every input set is a union of strata", unions));
  report["checks"] = checks;
  emit(report, o.out);
  return all_passed(checks) ? kOk : kVerificationFailed;
}

int cmd_certify(const Options& o) {
  if (o.map.empty()) throw InputError("--map is required");
  const CombinatorialMap m = io::combinatorial_map_from_json(io::read_file(o.map), o.map + ":");
  const ClosedImageCertificate cert = o.certificate.empty()
                                          ? certify_closed_image(m)
                                          : io::certificate_from_json(io::read_file(o.certificate), m, o.certificate + ":");
  const CertificateCheck v = verify_certificate(m, cert);
  Json report = io::to_json(cert, m);
  Json checks = Json::array();
  Json c = check("verify_certificate", v.ok, v.reason);
  if (v.failing_step) c["failing_step"] = *v.failing_step;
  checks.push_back(c);
  report["checks"] = checks;
  emit(report, o.out);
  return v.ok ? kOk : kVerificationFailed;
}

int cmd_derham(const Options& o) {
  if (o.region.empty()) throw InputError("--region is required");
  const auto region = std::make_shared<const GridRegion>(io::region_from_json(io::read_file(o.region), o.region + ":"));
  Json checks = Json::array();
  for (const auto& c : derham_verify(region)) {
    Json j = check(c.name, c.passed);
    j["max_error"] = c.max_error;
    j["tolerance"] = c.tolerance;
    checks.push_back(j);
  }
  Json numeric = Json::array(), comb = Json::array();
  const auto h0 = combinatorial_h0_rows(*region);
  bool agree = true;
  for (std::size_t i = 0; i < region->m(); ++i) {
    const std::size_t b = betti_crosscheck_row(*region, i);
    numeric.push_back(b);
    comb.push_back(h0[i]);
    agree = agree && b == h0[i];
  }
  checks.push_back(check("betti crosscheck matches combinatorial H0", agree));
  Json report = io::to_json(*region);
  report["betti_crosscheck"] = numeric;
  report["combinatorial_h0"] = comb;
  report["checks"] = checks;
  emit(report, o.out);
  return all_passed(checks) ? kOk : kVerificationFailed;
}

int cmd_selftest(const Options& o) {
  std::vector<acceptance::CriterionResult> results;
  if (o.criterion)
    results.push_back(acceptance::run_criterion(o.criterion, o.seed));
  else
    results = acceptance::run_all(o.seed);
  bool ok = true;
  Json checks = Json::array();
  for (const auto& r : results) {
    std::cout << acceptance::format_line(r) << "\n";
    ok = ok && r.passed;
    checks.push_back(check(std::to_string(r.id) + " " + r.name, r.passed));
  }
  if (!o.out.empty()) emit(Json{{"seed", o.seed}, {"checks", checks}}, o.out);
  return ok ? kOk : kVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constructible sheaves on finite posets and relative de Rham numerics"};
  app.require_subcommand(1);
  Options o;
  auto out = [&](CLI::App* sub) { sub->add_option("--out,-o", o.out, "Write the report here instead of stdout"); };
  auto bar = [&](CLI::App* sub) { sub->add_flag("--bar", o.bar, "Use the bar resolution"); };

  auto* homology = app.add_subcommand("homology", "Stalkwise homology, optionally after a derived pushforward");
  homology->add_option("--sheaf", o.sheaf, "Representation document")->required();
  homology->add_option("--map", o.map, "Monotone map document");
  bar(homology);
  out(homology);

  auto* push = app.add_subcommand("pushforward", "Derived pushforward of a representation");
  push->add_option("--sheaf", o.sheaf, "Representation document")->required();
  push->add_option("--map", o.map, "Monotone map document")->required();
  bar(push);
  out(push);

  auto* res = app.add_subcommand("resolve", "Pseudo-free resolution of a representation");
  res->add_option("--sheaf", o.sheaf, "Representation document")->required();
  bar(res);
  out(res);

  auto* refine = app.add_subcommand("refine", "Proper stratification compatible with a set family");
  refine->add_option("--space", o.space, "Poset or stratification document")->required();
  refine->add_option("--sets", o.sets, "Locally closed sets document");
  out(refine);

  auto* cert = app.add_subcommand("certify-closed-image", "Closed-image certificate for a combinatorial map");
  cert->add_option("--map", o.map, "Combinatorial map document")->required();
  cert->add_option("--certificate", o.certificate, "Verify this certificate instead of building one");
  out(cert);

  auto* derham = app.add_subcommand("derham-verify", "Poincare lemma and fiber integration checks on a grid region");
  derham->add_option("--region", o.region, "Region document")->required();
  out(derham);

  auto* self = app.add_subcommand("selftest", "Run the acceptance suite");
  self->add_option("--criterion", o.criterion, "Run a single criterion (1-9)")->check(CLI::Range(1, 9));
  out(self);

  for (auto* sub : app.get_subcommands({}))
    sub->add_option("--seed", o.seed, "Seed for randomized suites")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*homology) return cmd_homology(o);
    if (*push) return cmd_pushforward(o);
    if (*res) return cmd_resolve(o);
    if (*refine) return cmd_refine(o);
    if (*cert) return cmd_certify(o);
    if (*derham) return cmd_derham(o);
    if (*self) return cmd_selftest(o);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const InvariantError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerificationFailed;
  }
  return kInputError;
}
