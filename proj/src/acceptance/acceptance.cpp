#include "cshv/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <set>
#include <sstream>

#include "cshv/cosheaf.hpp"
#include "cshv/derham.hpp"
#include "cshv/random.hpp"
#include "cshv/sheaf.hpp"
#include "cshv/simplicial.hpp"
#include "cshv/stratify.hpp"

namespace cshv::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

std::string dims_string(const std::vector<GradedDims>& hs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < hs.size(); ++i) os << (i ? " " : "") << hs[i];
  return os.str();
}

// Wraps a body that returns the failure detail (empty on success).
CriterionResult timed(int id, const char* name, double budget, const std::function<std::string(std::string&)>& body) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  r.budget = budget;
  const auto start = Clock::now();
  std::string summary;
  std::string failure;
  try {
    failure = body(summary);
  } catch (const std::exception& e) {
    failure = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  r.passed = failure.empty();
  r.detail = r.passed ? summary : failure;
  if (r.passed && budget > 0 && r.seconds > budget) {
    r.passed = false;
    r.detail = "over the time budget of " + std::to_string(budget) + " s";
  }
  return r;
}

GradedDims shape_homology(const AlmostSimplicialComplex& k) {
  const FinPoset fp = face_poset(k);
  const PosetRep out = derived_pushforward(MonotoneMap::to_point(fp), constant_sheaf(fp));
  return stalk_homology(out).at(0);
}

struct RepInstance {
  FinPoset poset;
  PosetRep rep;
};

std::vector<RepInstance> resolution_instances(std::uint64_t seed) {
  auto rng = gen::make_rng(seed, 2);
  std::vector<RepInstance> out;
  for (int i = 0; i < 100; ++i) {
    FinPoset p = gen::random_poset(rng, gen::uniform(rng, 1, 8), 0.5);
    PosetRep f = gen::random_rep(rng, p, 3);
    out.push_back({std::move(p), std::move(f)});
  }
  return out;
}

MonotoneMap projection(const FinPoset& base, const FinPoset& fiber) {
  const FinPoset total = product(base, fiber);
  std::vector<std::size_t> a(total.size());
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = k / fiber.size();
  return MonotoneMap(total, base, a);
}

std::size_t pattern_count(const CombinatorialMap& m) {
  std::set<std::vector<char>> patterns;
  for (std::size_t x = 0; x < m.space().size(); ++x) {
    std::vector<char> pat;
    for (const auto* family : {&m.sources(), &m.targets()})
      for (const auto& u : *family) pat.push_back(std::binary_search(u.begin(), u.end(), x) ? 1 : 0);
    patterns.insert(pat);
  }
  return patterns.size();
}

// Empty string on success.
std::string certify(const CombinatorialMap& m) {
  const ClosedImageCertificate c = certify_closed_image(m);
  const CertificateCheck v = verify_certificate(m, c);
  if (!v.ok) return "verify_certificate: " + v.reason;
  if (c.steps.size() > pattern_count(m)) return "more steps than strata";
  for (const auto& st : c.steps)
    if (!(st.mbar * st.nbar * st.mbar == st.mbar)) return "MNM ≠ M";
  return {};
}

}  // namespace

CriterionResult pushforward_shape(std::uint64_t seed) {
  return timed(1, "pushforward-shape agreement", 10.0, [&](std::string& summary) -> std::string {
    const std::vector<std::string> v4 = {"a", "b", "c", "d"};
    const AlmostSimplicialComplex two_edges(v4, std::vector<std::vector<std::string>>{{"a", "b"}, {"c", "d"}});
    const std::vector<std::pair<std::string, std::pair<AlmostSimplicialComplex, std::vector<std::size_t>>>> fixed = {
        {"solid triangle", {full_simplex(3), {1, 0, 0}}},
        {"triangle boundary", {simplex_boundary(3), {1, 1}}},
        {"tetrahedron boundary", {simplex_boundary(4), {1, 0, 1}}},
        {"two disjoint edges", {simplicial_closure(two_edges), {2, 0}}},
    };
    for (const auto& [name, item] : fixed) {
      const GradedDims expected(0, item.second);
      const GradedDims oracle(0, simplicial_betti(item.first));
      const GradedDims got = shape_homology(item.first);
      if (!(oracle == expected)) return name + ": oracle disagrees with the expected Betti numbers";
      if (!(got == expected)) {
        std::ostringstream os;
        os << name << ": pushforward " << got << " vs expected " << expected;
        return os.str();
      }
    }
    auto rng = gen::make_rng(seed, 1);
    for (int i = 0; i < 20; ++i) {
      const AlmostSimplicialComplex k = gen::random_simplicial_complex(rng, 8, 4);
      const GradedDims oracle(0, simplicial_betti(k));
      const GradedDims got = shape_homology(k);
      if (!(oracle == got)) {
        std::ostringstream os;
        os << "random complex " << i << ": pushforward " << got << " vs oracle " << oracle;
        return os.str();
      }
    }
    summary = "4 fixtures + 20 random complexes agree";
    return {};
  });
}

CriterionResult resolution_soundness(std::uint64_t seed) {
  return timed(2, "resolution soundness", 0, [&](std::string& summary) -> std::string {
    int max_len = 0;
    const auto instances = resolution_instances(seed);
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const auto& [p, f] = instances[i];
      const Resolution res = resolve(f);
      const PosetRep real = realize(res.complex);
      if (stalk_homology(real) != stalk_homology(f))
        return "instance " + std::to_string(i) + ": " + dims_string(stalk_homology(real)) + " vs " +
               dims_string(stalk_homology(f));
      if (!is_stalkwise_quasi_iso(res.augmentation, real, f))
        return "instance " + std::to_string(i) + ": augmentation is not a quasi-isomorphism";
      if (res.length > 2 * static_cast<int>(p.size()))
        return "instance " + std::to_string(i) + ": length " + std::to_string(res.length) + " > 2|P|";
      max_len = std::max(max_len, res.length);
    }
    summary = "100 instances, max length " + std::to_string(max_len);
    return {};
  });
}

CriterionResult recollement_exactness(std::uint64_t seed) {
  return timed(3, "recollement exactness", 0, [&](std::string& summary) -> std::string {
    auto rng = gen::make_rng(seed, 3);
    for (int i = 0; i < 100; ++i) {
      const FinPoset p = gen::random_poset(rng, gen::uniform(rng, 1, 7), 0.5);
      const UpSet u = gen::random_up_set(rng, p);
      const PosetRep f = gen::random_rep(rng, p, 3);
      const Recollement rec = recollement_triangle(f, u);
      for (const auto& c : rec.checks)
        if (!c.passed) return "instance " + std::to_string(i) + ": " + c.name + " " + c.detail;
    }
    summary = "100 instances, both triangles exact";
    return {};
  });
}

CriterionResult projection_and_base_change(std::uint64_t seed) {
  return timed(4, "projection formula and base change", 0, [&](std::string& summary) -> std::string {
    auto rng = gen::make_rng(seed, 4);
    for (int i = 0; i < 50; ++i) {
      const FinPoset b = gen::random_poset(rng, gen::uniform(rng, 1, 4), 0.4, "b");
      const FinPoset r = gen::random_poset(rng, gen::uniform(rng, 1, 3), 0.5, "r");
      const MonotoneMap f = projection(b, r);
      const PosetRep big = gen::random_rep(rng, f.source(), 2);
      const PosetRep g = gen::random_rep(rng, b, 2);
      const auto lhs = stalk_homology(derived_pushforward(f, tensor(big, pullback(f, g))));
      const auto rhs = stalk_homology(tensor(derived_pushforward(f, big), g));
      if (lhs != rhs) return "instance " + std::to_string(i) + ": projection formula " + dims_string(lhs) + " vs " + dims_string(rhs);

      // g′ : B′ → B, either a subposet inclusion or a constant map.
      FinPoset b2;
      std::vector<std::size_t> assign;
      if (gen::coin(rng)) {
        Subset s;
        for (std::size_t k = 0; k < b.size(); ++k)
          if (gen::coin(rng, 0.6)) s.push_back(k);
        if (s.empty()) s.push_back(gen::uniform(rng, 0, b.size() - 1));
        b2 = b.induced(s);
        assign = s;
      } else {
        b2 = gen::random_poset(rng, gen::uniform(rng, 1, 3), 0.5, "c");
        assign.assign(b2.size(), gen::uniform(rng, 0, b.size() - 1));
      }
      const MonotoneMap gb(b2, b, assign);
      const MonotoneMap f2 = projection(b2, r);
      std::vector<std::size_t> lift(f2.source().size());
      for (std::size_t k = 0; k < lift.size(); ++k)
        lift[k] = product_index(assign[k / r.size()], k % r.size(), r.size());
      const MonotoneMap gr(f2.source(), f.source(), lift);
      const auto bc_l = stalk_homology(pullback(gb, derived_pushforward(f, big)));
      const auto bc_r = stalk_homology(derived_pushforward(f2, pullback(gr, big)));
      if (bc_l != bc_r) return "instance " + std::to_string(i) + ": base change " + dims_string(bc_l) + " vs " + dims_string(bc_r);
    }
    summary = "50 instances, both identities hold stalkwise";
    return {};
  });
}

CriterionResult homology_invariance(std::uint64_t seed) {
  return timed(5, "homology invariance", 0, [&](std::string& summary) -> std::string {
    auto rng = gen::make_rng(seed, 5);
    const std::vector<std::pair<FinPoset, FinPoset>> fibers = {
        {face_poset(full_simplex(2)), face_poset(full_simplex(3))},
        {interval_model("i."), face_poset(full_simplex(3))},
        {face_poset(simplex_boundary(3)),
         face_poset(simplicial_closure(AlmostSimplicialComplex(
             {"a", "b", "c", "d"}, std::vector<std::vector<std::string>>{{"a", "b"}, {"b", "c"}, {"c", "d"}, {"a", "d"}})))},
    };
    int compared = 0;
    for (int i = 0; i < 10; ++i) {
      const FinPoset b = gen::random_poset(rng, gen::uniform(rng, 1, 4), 0.4, "b");
      const PosetRep g = gen::random_rep(rng, b, 2);
      for (std::size_t k = 0; k < fibers.size(); ++k) {
        const auto& [f1, f2] = fibers[k];
        const MonotoneMap p1 = projection(b, f1), p2 = projection(b, f2);
        const auto c1 = stalk_homology(derived_pushforward(p1, constant_sheaf(p1.source())));
        const auto c2 = stalk_homology(derived_pushforward(p2, constant_sheaf(p2.source())));
        if (c1 != c2) return "base " + std::to_string(i) + ", fiber pair " + std::to_string(k) + ": " + dims_string(c1) + " vs " + dims_string(c2);
        const auto t1 = stalk_homology(derived_pushforward(p1, pullback(p1, g)));
        const auto t2 = stalk_homology(derived_pushforward(p2, pullback(p2, g)));
        if (t1 != t2) return "base " + std::to_string(i) + ", fiber pair " + std::to_string(k) + " (pulled-back coefficients)";
        compared += 2;
      }
    }
    summary = std::to_string(compared) + " pushforward pairs agree";
    return {};
  });
}

CriterionResult closed_image_certificates(std::uint64_t seed) {
  return timed(6, "closed-image certificates", 0, [&](std::string& summary) -> std::string {
    std::size_t maps = 0;
    const auto instances = resolution_instances(seed);
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const CombinatorialComplex pres = presentation_from_resolution(pseudo_free_resolve(instances[i].rep));
      for (int k = pres.lo() + 1; k <= pres.hi(); ++k) {
        const std::string err = certify(pres.differential(k));
        if (!err.empty()) return "presentation " + std::to_string(i) + ", d_" + std::to_string(k) + ": " + err;
        ++maps;
      }
    }
    auto rng = gen::make_rng(seed, 6);
    for (int i = 0; i < 100; ++i) {
      const std::string err = certify(gen::random_combinatorial_map(rng, 6, 12));
      if (!err.empty()) return "random map " + std::to_string(i) + ": " + err;
    }
    summary = std::to_string(maps) + " presentation differentials + 100 random maps certified";
    return {};
  });
}

CriterionResult poincare_numerics(std::uint64_t) {
  return timed(7, "Poincare lemma numerics", 30.0, [&](std::string& summary) -> std::string {
    // Point base plus interval bases at the largest default base resolution.
    std::vector<GridRegion> regions = {default_region()};
    auto interval = [](const std::function<bool(double, double)>& inside) {
      return GridRegion::from_predicate(false, -1, 1, 101, 10.0, 4001, inside);
    };
    regions.push_back(interval([](double, double) { return true; }));
    regions.push_back(interval([](double y, double t) { return std::abs(t - 3 * y) < 2; }));
    regions.push_back(interval([](double y, double t) { return std::abs(t) < 3 && (y <= 0 || std::abs(t) > 0.5); }));
    std::vector<NumericCheck> worst;
    for (const auto& g : regions) {
      const auto checks = derham_verify(std::make_shared<const GridRegion>(g));
      if (worst.empty()) worst = checks;
      for (std::size_t k = 0; k < checks.size(); ++k) {
        worst[k].max_error = std::max(worst[k].max_error, checks[k].max_error);
        worst[k].passed = worst[k].passed && checks[k].passed;
      }
    }
    std::ostringstream os;
    os << regions.size() << " regions: ";
    bool ok = true;
    for (std::size_t k = 0; k < worst.size(); ++k) {
      const auto& c = worst[k];
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s%s %.2e/%.0e", k > 0 ? "; " : "", c.name.c_str(), c.max_error, c.tolerance);
      os << buf;
      ok = ok && c.passed;
    }
    if (!ok) return os.str();
    summary = os.str();
    return {};
  });
}

CriterionResult global_crosscheck(std::uint64_t) {
  return timed(8, "global cross-check", 0, [&](std::string& summary) -> std::string {
    struct Family {
      std::string name;
      bool point;
      std::function<bool(double, double)> inside;
      std::function<std::size_t(double)> expected;
    };
    auto band = [](double t, double lo, double hi) { return t > lo && t < hi; };
    const std::vector<Family> families = {
        {"point, interval", true, [&](double, double t) { return band(t, -1, 1); }, [](double) { return 1; }},
        {"point, two intervals", true, [&](double, double t) { return band(t, -5, -2) || band(t, 1, 4); },
         [](double) { return 2; }},
        {"point, three intervals", true,
         [&](double, double t) { return band(t, -8, -6) || band(t, -1, 1) || band(t, 3, 7); }, [](double) { return 3; }},
        {"point, full window", true, [](double, double) { return true; }, [](double) { return 1; }},
        {"point, empty", true, [](double, double) { return false; }, [](double) { return 0; }},
        {"interval, sheared band", false, [&](double y, double t) { return band(t - y, -1, 1); }, [](double) { return 1; }},
        {"interval, fiber splitting", false,
         [&](double y, double t) { return band(t, -1, 1) && (y <= 0 || std::abs(t) > 0.2); },
         [](double y) { return y <= 0 ? 1 : 2; }},
    };
    for (const auto& fam : families) {
      const GridRegion region = GridRegion::from_predicate(fam.point, fam.point ? 0 : -1, fam.point ? 0 : 1,
                                                           fam.point ? 1 : 21, 10.0, 601, fam.inside);
      const auto comb = combinatorial_h0_rows(region);
      for (std::size_t i = 0; i < region.m(); ++i) {
        const std::size_t num = betti_crosscheck_row(region, i);
        const std::size_t want = fam.expected(region.y(i));
        if (num != comb[i] || num != want)
          return fam.name + ", row " + std::to_string(i) + ": numeric " + std::to_string(num) + ", combinatorial " +
                 std::to_string(comb[i]) + ", expected " + std::to_string(want);
      }
    }
    summary = std::to_string(families.size()) + " mask families agree";
    return {};
  });
}

CriterionResult stratification_suite(std::uint64_t seed) {
  return timed(9, "stratification suite", 0, [&](std::string& summary) -> std::string {
    const FinPoset x({"z", "u-", "u+"}, {{"z", "u-"}, {"z", "u+"}});
    const FinPoset p({"0", "1"}, {{"0", "1"}});
    const Stratification sign(MonotoneMap::from_labels(x, p, {{"z", "0"}, {"u-", "0"}, {"u+", "1"}}));
    const ProperCheck pc = is_proper(sign);
    if (pc.proper || pc.witness != p.index("1")) return "sign stratification: wrong properness verdict or witness";
    const Refinement ref = refine_stratification(sign);
    if (!is_proper(ref.refined).proper) return "refinement of the sign stratification is not proper";
    if (ref.refined.strata_poset().size() != 3) return "refinement of the sign stratification does not have 3 strata";
    for (std::size_t e = 0; e < x.size(); ++e)
      if (ref.psi(ref.refined.map()(e)) != sign.map()(e)) return "ψ ∘ β ≠ α on the sign example";

    auto rng = gen::make_rng(seed, 9);
    for (int i = 0; i < 100; ++i) {
      const FinPoset sp = gen::random_poset(rng, gen::uniform(rng, 1, 10), 0.3);
      std::vector<Subset> theta;
      const std::size_t count = gen::uniform(rng, 0, 4);
      for (std::size_t k = 0; k < count; ++k) {
        Subset s = gen::random_locally_closed(rng, sp);
        if (!s.empty()) theta.push_back(std::move(s));
      }
      const Stratification st = proper_refine(sp, theta);
      if (!is_proper(st).proper) return "random Θ " + std::to_string(i) + ": result is not proper";
      for (const auto& s : theta)
        for (const auto& stratum : st.strata()) {
          const Subset common = set_intersection(stratum, s);
          if (!common.empty() && common != stratum) return "random Θ " + std::to_string(i) + ": a member is not a union of strata";
        }
    }
    summary = "sign example detected (witness 1) and repaired; 100 random Θ";
    return {};
  });
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
  switch (id) {
    case 1: return pushforward_shape(seed);
    case 2: return resolution_soundness(seed);
    case 3: return recollement_exactness(seed);
    case 4: return projection_and_base_change(seed);
    case 5: return homology_invariance(seed);
    case 6: return closed_image_certificates(seed);
    case 7: return poincare_numerics(seed);
    case 8: return global_crosscheck(seed);
    case 9: return stratification_suite(seed);
    default: return {id, "unknown criterion", false, "no such criterion", 0, 0};
  }
}

std::vector<CriterionResult> run_all(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 9; ++id) out.push_back(run_criterion(id, seed));
  return out;
}

std::string format_line(const CriterionResult& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, " (%.2f s)", r.seconds);
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.name + buf + ": " + r.detail;
}

}  // namespace cshv::acceptance
