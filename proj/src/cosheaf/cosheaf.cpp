#include "cshv/cosheaf.hpp"

#include <algorithm>
#include <map>

#include "cshv/error.hpp"
#include "cshv/stratify.hpp"

namespace cshv {

CombinatorialMap::CombinatorialMap(FinPoset space, std::vector<Subset> sources, std::vector<Subset> targets,
                                   RatMatrix matrix)
    : space_(std::move(space)), sources_(std::move(sources)), targets_(std::move(targets)), matrix_(std::move(matrix)) {
  for (auto* family : {&sources_, &targets_})
    for (auto& u : *family) {
      std::sort(u.begin(), u.end());
      u.erase(std::unique(u.begin(), u.end()), u.end());
      if (!space_.is_up_set(u)) throw InputError("combinatorial map: a set is not open");
    }
  if (matrix_.rows() != targets_.size() || matrix_.cols() != sources_.size())
    throw InputError("combinatorial map: matrix shape does not match the index sets");
  for (std::size_t s = 0; s < targets_.size(); ++s)
    for (std::size_t t = 0; t < sources_.size(); ++t)
      if (matrix_(s, t) != 0 && !is_subset(sources_[t], targets_[s]))
        throw InputError("combinatorial map: entry (" + std::to_string(s) + "," + std::to_string(t) +
                         ") violates U_t ⊆ V_s");
}

CombinatorialComplex::CombinatorialComplex(FinPoset space, int lo, std::vector<std::vector<Subset>> opens,
                                           std::vector<RatMatrix> differentials)
    : space_(std::move(space)), lo_(lo), opens_(std::move(opens)), diffs_(std::move(differentials)) {
  const std::size_t expected = opens_.empty() ? 0 : opens_.size() - 1;
  if (diffs_.size() != expected) throw InvariantError("combinatorial complex: wrong number of differentials");
  for (int k = lo_ + 1; k <= hi(); ++k) differential(k);
  for (std::size_t i = 0; i + 1 < diffs_.size(); ++i)
    if (!(diffs_[i] * diffs_[i + 1]).is_zero()) throw InvariantError("combinatorial complex: d∘d ≠ 0");
}

const std::vector<Subset>& CombinatorialComplex::opens(int k) const {
  static const std::vector<Subset> none;
  if (k < lo_ || k > hi()) return none;
  return opens_[static_cast<std::size_t>(k - lo_)];
}

RatMatrix CombinatorialComplex::d(int k) const {
  if (k <= lo_ || k > hi()) return RatMatrix(opens(k - 1).size(), opens(k).size());
  return diffs_[static_cast<std::size_t>(k - lo_ - 1)];
}

CombinatorialMap CombinatorialComplex::differential(int k) const {
  return CombinatorialMap(space_, opens(k), opens(k - 1), d(k));
}

CombinatorialComplex presentation_from_resolution(const PseudoFreeComplex& c) {
  std::vector<std::vector<Subset>> opens;
  std::vector<RatMatrix> diffs;
  for (int k = c.lo(); k <= c.hi(); ++k) {
    std::vector<Subset> o;
    for (auto g : c.generators(k)) o.push_back(open_star(c.base(), g).members());
    opens.push_back(std::move(o));
    if (k > c.lo()) diffs.push_back(c.d(k));
  }
  return CombinatorialComplex(c.base(), c.lo(), std::move(opens), std::move(diffs));
}

CombinatorialComplex global_sections_homology_presentation(const PosetRep& f) {
  return presentation_from_resolution(pseudo_free_resolve(f));
}

BddChainComplex substitute_point_cosheaf(const CombinatorialComplex& c) {
  if (c.hi() < c.lo()) return BddChainComplex::zero();
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::size_t>> offsets;
  for (int k = c.lo(); k <= c.hi(); ++k) {
    std::vector<std::size_t> off;
    std::size_t acc = 0;
    for (const auto& u : c.opens(k)) {
      off.push_back(acc);
      acc += u.size();
    }
    offsets.push_back(std::move(off));
    dims.push_back(acc);
  }
  std::vector<RatMatrix> diffs;
  for (int k = c.lo() + 1; k <= c.hi(); ++k) {
    const auto& src = c.opens(k);
    const auto& tgt = c.opens(k - 1);
    const RatMatrix m = c.d(k);
    RatMatrix d(dims[k - 1 - c.lo()], dims[k - c.lo()]);
    for (std::size_t s = 0; s < tgt.size(); ++s)
      for (std::size_t t = 0; t < src.size(); ++t) {
        if (m(s, t) == 0) continue;
        // Sc(U_t) → Sc(V_s) extends by zero.
        for (std::size_t i = 0; i < src[t].size(); ++i) {
          const auto it = std::lower_bound(tgt[s].begin(), tgt[s].end(), src[t][i]);
          const auto row = offsets[k - 1 - c.lo()][s] + static_cast<std::size_t>(it - tgt[s].begin());
          d(row, offsets[k - c.lo()][t] + i) = m(s, t);
        }
      }
    diffs.push_back(std::move(d));
  }
  return BddChainComplex(c.lo(), std::move(dims), std::move(diffs));
}

namespace {

// Membership pattern of x over I = T ⊔ S.
std::vector<char> pattern(const CombinatorialMap& m, std::size_t x) {
  std::vector<char> p;
  for (const auto& u : m.sources()) p.push_back(std::binary_search(u.begin(), u.end(), x) ? 1 : 0);
  for (const auto& v : m.targets()) p.push_back(std::binary_search(v.begin(), v.end(), x) ? 1 : 0);
  return p;
}

std::string pattern_label(const std::vector<char>& p) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i]) {
      if (!first) out += ",";
      out += std::to_string(i + 1);
      first = false;
    }
  return out + "}";
}

bool pattern_leq(const std::vector<char>& a, const std::vector<char>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

std::vector<std::size_t> containing(const std::vector<Subset>& family, const Subset& z) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < family.size(); ++i)
    if (is_subset(z, family[i])) out.push_back(i);
  return out;
}

}  // namespace

ClosedImageCertificate certify_closed_image(const CombinatorialMap& m) {
  const FinPoset& x = m.space();
  ClosedImageCertificate cert;
  Subset y = x.all();
  while (!y.empty()) {
    // Cover stratification of the remaining space over the realized patterns only.
    std::map<std::vector<char>, Subset> strata;
    for (auto p : y) strata[pattern(m, p)].push_back(p);
    const std::vector<char>* best = nullptr;
    std::string best_label;
    for (const auto& [pat, members] : strata) {
      bool minimal = true;
      for (const auto& [other, _] : strata)
        if (other != pat && pattern_leq(other, pat)) minimal = false;
      if (!minimal) continue;
      const std::string l = pattern_label(pat);
      if (!best || l < best_label) {
        best = &pat;
        best_label = l;
      }
    }
    if (!best) throw InternalError("certify_closed_image: no minimal stratum");
    const Subset z = strata.at(*best);
    const Subset v = set_difference(y, z);

    const FinPoset sub = x.induced(y);
    auto local = [&](const Subset& s) {
      Subset out;
      for (auto e : set_intersection(s, y))
        out.push_back(static_cast<std::size_t>(std::lower_bound(y.begin(), y.end(), e) - y.begin()));
      return out;
    };
    std::vector<UpSet> sets;
    for (const auto& u : m.sources()) sets.emplace_back(sub, local(u));
    for (const auto& w : m.targets()) sets.emplace_back(sub, local(w));
    if (!in_good_position(sub, UpSet(sub, local(v)), sets))
      throw InternalError("certify_closed_image: complement of the stratum is not in good position");

    CertificateStep step;
    step.stratum = z;
    step.label = best_label;
    step.t1 = containing(m.sources(), z);
    step.s1 = containing(m.targets(), z);
    step.mbar = m.matrix().submatrix(step.s1, step.t1);
    step.nbar = right_pseudo_inverse(step.mbar);
    if (!(step.mbar * step.nbar * step.mbar == step.mbar))
      throw InternalError("certify_closed_image: pseudo-inverse identity fails");
    cert.steps.push_back(std::move(step));
    y = v;
  }
  return cert;
}

CertificateCheck verify_certificate(const CombinatorialMap& m, const ClosedImageCertificate& c) {
  const FinPoset& x = m.space();
  Subset y = x.all();
  auto fail = [](std::size_t i, std::string why) { return CertificateCheck{false, i, std::move(why)}; };
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    const CertificateStep& st = c.steps[i];
    Subset z = st.stratum;
    if (!std::is_sorted(z.begin(), z.end()) || z.empty()) return fail(i, "stratum is empty or unsorted");
    if (!is_subset(z, y)) return fail(i, "stratum is not inside the remaining space");
    // Same membership pattern inside z, different outside.
    auto member = [](const Subset& s, std::size_t e) { return std::binary_search(s.begin(), s.end(), e); };
    auto same_pattern = [&](std::size_t a, std::size_t b) {
      for (const auto& u : m.sources())
        if (member(u, a) != member(u, b)) return false;
      for (const auto& w : m.targets())
        if (member(w, a) != member(w, b)) return false;
      return true;
    };
    for (auto e : z)
      if (!same_pattern(e, z.front())) return fail(i, "stratum mixes membership patterns");
    for (auto e : y)
      if (!member(z, e) && same_pattern(e, z.front())) return fail(i, "stratum is not a full cover stratum");
    // Closed in the remaining space.
    for (auto e : y)
      for (auto q : z)
        if (x.leq(e, q) && !member(z, e)) return fail(i, "stratum is not closed in the remaining space");
    // Good position of the complement.
    for (const auto* family : {&m.sources(), &m.targets()})
      for (const auto& u : *family) {
        const Subset common = set_intersection(z, u);
        if (!common.empty() && common != z) return fail(i, "complement is not in good position");
      }
    std::vector<std::size_t> t1, s1;
    for (std::size_t t = 0; t < m.sources().size(); ++t)
      if (is_subset(z, m.sources()[t])) t1.push_back(t);
    for (std::size_t s = 0; s < m.targets().size(); ++s)
      if (is_subset(z, m.targets()[s])) s1.push_back(s);
    if (t1 != st.t1 || s1 != st.s1) return fail(i, "index sets do not match the stratum");
    RatMatrix mbar(s1.size(), t1.size());
    for (std::size_t a = 0; a < s1.size(); ++a)
      for (std::size_t b = 0; b < t1.size(); ++b) mbar(a, b) = m.matrix()(s1[a], t1[b]);
    if (!(mbar == st.mbar)) return fail(i, "recorded submatrix differs from the map");
    if (st.nbar.rows() != t1.size() || st.nbar.cols() != s1.size()) return fail(i, "pseudo-inverse has the wrong shape");
    if (!(mbar * st.nbar * mbar == mbar)) return fail(i, "M̄N̄M̄ ≠ M̄");
    y = set_difference(y, z);
  }
  if (!y.empty()) return {false, c.steps.size(), "certificate does not exhaust the space"};
  return {};
}

}  // namespace cshv
