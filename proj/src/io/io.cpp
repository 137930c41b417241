#include "cshv/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cshv/error.hpp"

namespace cshv::io {

namespace {

// An InputError that already carries its location.
struct LocatedError : InputError {
  using InputError::InputError;
};

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  const bool root = where.empty() || where.back() == ':';
  throw LocatedError(where + (root ? "/" : "") + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string str(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

long long integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<long long>();
}

std::size_t count(const Json& j, const std::string& where) {
  const long long v = integer(j, where);
  if (v < 0) fail(where, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

int degree_key(const std::string& key, const std::string& where) {
  try {
    std::size_t used = 0;
    const int d = std::stoi(key, &used);
    if (used == key.size()) return d;
  } catch (const std::exception&) {
  }
  fail(where, "degree key \"" + key + "\" is not an integer");
}

std::size_t label_index(const FinPoset& p, const Json& j, const std::string& where) {
  const std::string l = str(j, where);
  if (!p.contains(l)) fail(where, "unknown label \"" + l + "\"");
  return p.index(l);
}

Subset label_set(const FinPoset& p, const Json& j, const std::string& where) {
  Subset s;
  array(j, where);
  for (std::size_t k = 0; k < j.size(); ++k) s.push_back(label_index(p, j[k], where + "/" + std::to_string(k)));
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

Json sorted_labels(const FinPoset& p, const Subset& s) {
  auto l = p.labels_of(s);
  std::sort(l.begin(), l.end());
  return Json(l);
}

// Runs a reader and prefixes errors thrown by constructors with the location.
template <typename F>
auto located(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const LocatedError&) {
    throw;
  } catch (const InputError& e) {
    fail(where, e.what());
  } catch (const InvariantError& e) {
    fail(where, e.what());
  }
}

}  // namespace

Json to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

namespace {

RatMatrix read_entries(const Json& e, const std::string& where, std::size_t rows, std::size_t cols) {
  if (e.size() != rows) fail(where, "expected " + std::to_string(rows) + " rows");
  RatMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string wr = where + "/" + std::to_string(r);
    if (!e[r].is_array() || e[r].size() != cols) fail(wr, "expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) {
      const std::string wc = wr + "/" + std::to_string(c);
      const Json& x = e[r][c];
      if (x.is_number_integer())
        m(r, c) = Rational(x.get<long long>());
      else
        m(r, c) = located(wc, [&] { return parse_rational(str(x, wc)); });
    }
  }
  return m;
}

}  // namespace

RatMatrix matrix_from_json(const Json& j, const std::string& where, std::size_t rows, std::size_t cols) {
  if (j.is_object()) {
    RatMatrix m = matrix_from_json(j, where);
    if (m.rows() != rows || m.cols() != cols)
      fail(where, "expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    return m;
  }
  return read_entries(array(j, where), where, rows, cols);
}

RatMatrix matrix_from_json(const Json& j, const std::string& where) {
  if (j.is_object()) {
    const std::size_t rows = count(field(j, "rows", where), where + "/rows");
    const std::size_t cols = count(field(j, "cols", where), where + "/cols");
    return read_entries(array(field(j, "entries", where), where + "/entries"), where + "/entries", rows, cols);
  }
  array(j, where);
  const std::size_t cols = j.empty() ? 0 : array(j[0], where + "/0").size();
  return read_entries(j, where, j.size(), cols);
}

Json to_json(const FinPoset& p) {
  std::vector<std::pair<std::string, std::string>> covers;
  for (const auto& [a, b] : p.covers()) covers.emplace_back(p.label(a), p.label(b));
  std::sort(covers.begin(), covers.end());
  Json c = Json::array();
  for (const auto& [a, b] : covers) c.push_back(Json::array({a, b}));
  return Json{{"elements", sorted_labels(p, p.all())}, {"covers", c}};
}

FinPoset poset_from_json(const Json& j, const std::string& where) {
  const Json& el = array(field(j, "elements", where), where + "/elements");
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < el.size(); ++k) labels.push_back(str(el[k], where + "/elements/" + std::to_string(k)));
  std::vector<std::pair<std::string, std::string>> rel;
  if (j.contains("covers")) {
    const Json& cv = array(j["covers"], where + "/covers");
    for (std::size_t k = 0; k < cv.size(); ++k) {
      const std::string w = where + "/covers/" + std::to_string(k);
      if (!cv[k].is_array() || cv[k].size() != 2) fail(w, "expected a [lower, upper] pair");
      for (int side = 0; side < 2; ++side) {
        const std::string l = str(cv[k][side], w + "/" + std::to_string(side));
        if (std::find(labels.begin(), labels.end(), l) == labels.end())
          fail(w + "/" + std::to_string(side), "unknown element \"" + l + "\"");
      }
      rel.emplace_back(cv[k][0].get<std::string>(), cv[k][1].get<std::string>());
    }
  }
  return located(where, [&] { return FinPoset(labels, rel); });
}

Json to_json(const AlmostSimplicialComplex& k) {
  Json s = Json::array();
  for (const auto& sigma : k.simplices()) s.push_back(k.vertex_labels(sigma));
  return Json{{"vertices", k.vertices()}, {"simplices", s}};
}

AlmostSimplicialComplex simplicial_from_json(const Json& j, const std::string& where) {
  const Json& v = array(field(j, "vertices", where), where + "/vertices");
  std::vector<std::string> vertices;
  for (std::size_t k = 0; k < v.size(); ++k) vertices.push_back(str(v[k], where + "/vertices/" + std::to_string(k)));
  const Json& s = array(field(j, "simplices", where), where + "/simplices");
  std::vector<std::vector<std::string>> simplices;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const std::string w = where + "/simplices/" + std::to_string(k);
    array(s[k], w);
    std::vector<std::string> sigma;
    for (std::size_t i = 0; i < s[k].size(); ++i) sigma.push_back(str(s[k][i], w + "/" + std::to_string(i)));
    simplices.push_back(sigma);
  }
  return located(where, [&] { return AlmostSimplicialComplex(vertices, simplices); });
}

Json to_json(const BddChainComplex& c) {
  if (c.is_zero()) return Json{{"lo", 0}, {"dims", Json::array()}, {"differentials", Json::object()}};
  Json dims = Json::array();
  for (int k = c.lo(); k <= c.hi(); ++k) dims.push_back(c.dim(k));
  Json diffs = Json::object();
  for (int k = c.lo() + 1; k <= c.hi(); ++k) diffs[std::to_string(k)] = to_json(c.d(k));
  return Json{{"lo", c.lo()}, {"dims", dims}, {"differentials", diffs}};
}

BddChainComplex chain_complex_from_json(const Json& j, const std::string& where) {
  const int lo = static_cast<int>(integer(field(j, "lo", where), where + "/lo"));
  const Json& d = array(field(j, "dims", where), where + "/dims");
  std::vector<std::size_t> dims;
  for (std::size_t k = 0; k < d.size(); ++k) dims.push_back(count(d[k], where + "/dims/" + std::to_string(k)));
  std::vector<RatMatrix> diffs;
  for (std::size_t k = 1; k < dims.size(); ++k) diffs.emplace_back(dims[k - 1], dims[k]);
  if (j.contains("differentials")) {
    const Json& dj = j["differentials"];
    if (!dj.is_object()) fail(where + "/differentials", "expected an object keyed by degree");
    for (auto it = dj.begin(); it != dj.end(); ++it) {
      const std::string w = where + "/differentials/" + it.key();
      const int deg = degree_key(it.key(), w);
      if (deg <= lo || deg > lo + static_cast<int>(dims.size()) - 1) fail(w, "degree outside the complex");
      const auto idx = static_cast<std::size_t>(deg - lo);
      diffs[idx - 1] = matrix_from_json(it.value(), w, dims[idx - 1], dims[idx]);
    }
  }
  return located(where, [&] { return BddChainComplex(lo, dims, diffs); });
}

Json to_json(const GradedDims& g) {
  return Json{{"lo", g.lo}, {"dims", g.dims}};
}

Json to_json(const MonotoneMap& f) {
  Json m = Json::object();
  std::vector<std::size_t> order(f.source().size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return f.source().label(a) < f.source().label(b); });
  for (auto i : order) m[f.source().label(i)] = f.target().label(f(i));
  return Json{{"source", to_json(f.source())}, {"target", to_json(f.target())}, {"map", m}};
}

namespace {

MonotoneMap read_assignment(const FinPoset& src, const FinPoset& tgt, const Json& m, const std::string& where) {
  if (!m.is_object()) fail(where, "expected an object from labels to labels");
  std::map<std::string, std::string> a;
  for (auto it = m.begin(); it != m.end(); ++it) a[it.key()] = str(it.value(), where + "/" + it.key());
  return located(where, [&] { return MonotoneMap::from_labels(src, tgt, a); });
}

}  // namespace

MonotoneMap map_from_json(const Json& j, const std::string& where) {
  const FinPoset src = poset_from_json(field(j, "source", where), where + "/source");
  const FinPoset tgt = poset_from_json(field(j, "target", where), where + "/target");
  return read_assignment(src, tgt, field(j, "map", where), where + "/map");
}

Json to_json(const Stratification& s) {
  Json m = to_json(s.map());
  return Json{{"space", m["source"]}, {"strata", m["target"]}, {"map", m["map"]}};
}

Stratification stratification_from_json(const Json& j, const std::string& where) {
  const FinPoset src = poset_from_json(field(j, "space", where), where + "/space");
  const FinPoset tgt = poset_from_json(field(j, "strata", where), where + "/strata");
  return Stratification(read_assignment(src, tgt, field(j, "map", where), where + "/map"));
}

Json to_json(const PosetRep& f) {
  const FinPoset& p = f.base();
  std::vector<std::size_t> order(p.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return p.label(a) < p.label(b); });
  Json stalks = Json::object();
  for (auto i : order) stalks[p.label(i)] = to_json(f.stalk(i));
  std::vector<std::pair<std::string, Json>> trans;
  for (const auto& [a, b] : p.covers()) {
    const ChainMap& m = f.transition(a, b);
    Json comps = Json::object();
    for (int k = m.lo(); k <= m.hi(); ++k)
      if (!m.at(k).empty()) comps[std::to_string(k)] = to_json(m.at(k));
    if (!comps.empty()) trans.emplace_back(p.label(a) + "->" + p.label(b), comps);
  }
  std::sort(trans.begin(), trans.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  Json t = Json::object();
  for (auto& [k, v] : trans) t[k] = v;
  return Json{{"base", to_json(p)}, {"stalks", stalks}, {"transitions", t}};
}

PosetRep rep_from_json(const Json& j, const std::string& where) {
  const FinPoset base = poset_from_json(field(j, "base", where), where + "/base");
  if (j.contains("constant")) return constant_sheaf(base, static_cast<int>(integer(j["constant"], where + "/constant")));
  std::vector<BddChainComplex> stalks(base.size());
  if (j.contains("stalks")) {
    const Json& s = j["stalks"];
    if (!s.is_object()) fail(where + "/stalks", "expected an object keyed by label");
    for (auto it = s.begin(); it != s.end(); ++it) {
      const std::string w = where + "/stalks/" + it.key();
      if (!base.contains(it.key())) fail(w, "unknown label");
      stalks[base.index(it.key())] = chain_complex_from_json(it.value(), w);
    }
  }
  PosetRep::CoverMaps covers;
  if (j.contains("transitions")) {
    const Json& t = j["transitions"];
    if (!t.is_object()) fail(where + "/transitions", "expected an object keyed by \"lower->upper\"");
    for (auto it = t.begin(); it != t.end(); ++it) {
      const std::string w = where + "/transitions/" + it.key();
      const auto arrow = it.key().find("->");
      if (arrow == std::string::npos) fail(w, "key must have the form \"lower->upper\"");
      const std::string lo = it.key().substr(0, arrow), hi = it.key().substr(arrow + 2);
      if (!base.contains(lo) || !base.contains(hi)) fail(w, "unknown label");
      const std::size_t a = base.index(lo), b = base.index(hi);
      ChainMap m(stalks[a], stalks[b]);
      if (!it.value().is_object()) fail(w, "expected an object keyed by degree");
      for (auto d = it.value().begin(); d != it.value().end(); ++d) {
        const std::string wd = w + "/" + d.key();
        const int deg = degree_key(d.key(), wd);
        RatMatrix mat = matrix_from_json(d.value(), wd, stalks[b].dim(deg), stalks[a].dim(deg));
        if (mat.empty()) continue;
        m.at(deg) = std::move(mat);
      }
      covers[{a, b}] = std::move(m);
    }
  }
  return located(where, [&] { return PosetRep(base, stalks, covers); });
}

Json to_json(const PseudoFreeComplex& c) {
  Json terms = Json::object(), diffs = Json::object();
  for (int k = c.lo(); k <= c.hi(); ++k) {
    Json g = Json::array();
    for (auto p : c.generators(k)) g.push_back(c.base().label(p));
    terms[std::to_string(k)] = g;
    if (k > c.lo()) diffs[std::to_string(k)] = to_json(c.d(k));
  }
  return Json{{"base", to_json(c.base())}, {"terms", terms}, {"differentials", diffs}};
}

PseudoFreeComplex pseudo_free_from_json(const Json& j, const std::string& where) {
  const FinPoset base = poset_from_json(field(j, "base", where), where + "/base");
  const Json& t = field(j, "terms", where);
  if (!t.is_object()) fail(where + "/terms", "expected an object keyed by degree");
  std::map<int, std::vector<std::size_t>> terms;
  for (auto it = t.begin(); it != t.end(); ++it) {
    const std::string w = where + "/terms/" + it.key();
    const int deg = degree_key(it.key(), w);
    array(it.value(), w);
    std::vector<std::size_t> g;
    for (std::size_t k = 0; k < it.value().size(); ++k) g.push_back(label_index(base, it.value()[k], w + "/" + std::to_string(k)));
    terms[deg] = g;
  }
  if (terms.empty()) return PseudoFreeComplex(base, 0, {}, {});
  const int lo = terms.begin()->first, hi = terms.rbegin()->first;
  std::vector<std::vector<std::size_t>> gens;
  for (int k = lo; k <= hi; ++k) gens.push_back(terms.count(k) ? terms[k] : std::vector<std::size_t>{});
  std::vector<RatMatrix> diffs;
  for (int k = lo + 1; k <= hi; ++k) diffs.emplace_back(gens[k - 1 - lo].size(), gens[k - lo].size());
  if (j.contains("differentials")) {
    const Json& d = j["differentials"];
    if (!d.is_object()) fail(where + "/differentials", "expected an object keyed by degree");
    for (auto it = d.begin(); it != d.end(); ++it) {
      const std::string w = where + "/differentials/" + it.key();
      const int deg = degree_key(it.key(), w);
      if (deg <= lo || deg > hi) fail(w, "degree outside the complex");
      auto& slot = diffs[static_cast<std::size_t>(deg - lo - 1)];
      slot = matrix_from_json(it.value(), w, slot.rows(), slot.cols());
    }
  }
  return located(where, [&] { return PseudoFreeComplex(base, lo, gens, diffs); });
}

Json to_json(const CombinatorialMap& m) {
  Json s = Json::array(), t = Json::array();
  for (const auto& u : m.sources()) s.push_back(sorted_labels(m.space(), u));
  for (const auto& v : m.targets()) t.push_back(sorted_labels(m.space(), v));
  return Json{{"space", to_json(m.space())}, {"sources", s}, {"targets", t}, {"matrix", to_json(m.matrix())}};
}

CombinatorialMap combinatorial_map_from_json(const Json& j, const std::string& where) {
  const FinPoset space = poset_from_json(field(j, "space", where), where + "/space");
  auto read_sets = [&](const char* key) {
    const std::string w = where + "/" + key;
    const Json& a = array(field(j, key, where), w);
    std::vector<Subset> out;
    for (std::size_t k = 0; k < a.size(); ++k) out.push_back(label_set(space, a[k], w + "/" + std::to_string(k)));
    return out;
  };
  auto sources = read_sets("sources");
  auto targets = read_sets("targets");
  RatMatrix mat = matrix_from_json(field(j, "matrix", where), where + "/matrix", targets.size(), sources.size());
  return located(where, [&] { return CombinatorialMap(space, sources, targets, mat); });
}

Json to_json(const ClosedImageCertificate& c, const CombinatorialMap& m) {
  Json steps = Json::array();
  for (const auto& st : c.steps)
    steps.push_back(Json{{"stratum", sorted_labels(m.space(), st.stratum)},
                         {"label", st.label},
                         {"T1", st.t1},
                         {"S1", st.s1},
                         {"Mbar", to_json(st.mbar)},
                         {"Nbar", to_json(st.nbar)}});
  return Json{{"steps", steps}};
}

ClosedImageCertificate certificate_from_json(const Json& j, const CombinatorialMap& m, const std::string& where) {
  const Json& s = array(field(j, "steps", where), where + "/steps");
  ClosedImageCertificate c;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const std::string w = where + "/steps/" + std::to_string(k);
    CertificateStep st;
    st.stratum = label_set(m.space(), field(s[k], "stratum", w), w + "/stratum");
    if (s[k].contains("label")) st.label = str(s[k]["label"], w + "/label");
    auto idx = [&](const char* key) {
      const Json& a = array(field(s[k], key, w), w + "/" + key);
      std::vector<std::size_t> out;
      for (std::size_t i = 0; i < a.size(); ++i) out.push_back(count(a[i], w + "/" + key + "/" + std::to_string(i)));
      return out;
    };
    st.t1 = idx("T1");
    st.s1 = idx("S1");
    st.mbar = matrix_from_json(field(s[k], "Mbar", w), w + "/Mbar", st.s1.size(), st.t1.size());
    st.nbar = matrix_from_json(field(s[k], "Nbar", w), w + "/Nbar", st.t1.size(), st.s1.size());
    c.steps.push_back(std::move(st));
  }
  return c;
}

std::vector<Subset> subsets_from_json(const Json& j, const FinPoset& p, const std::string& where) {
  const Json& a = j.is_object() ? field(j, "sets", where) : j;
  const std::string w = j.is_object() ? where + "/sets" : where;
  array(a, w);
  std::vector<Subset> out;
  for (std::size_t k = 0; k < a.size(); ++k) out.push_back(label_set(p, a[k], w + "/" + std::to_string(k)));
  return out;
}

Json to_json(const GridRegion& r) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < r.m(); ++i) {
    Json row = Json::array();
    bool cur = false;
    std::size_t len = 0;
    for (std::size_t j = 0; j < r.n(); ++j) {
      if (r.in(i, j) != cur) {
        row.push_back(len);
        cur = !cur;
        len = 0;
      }
      ++len;
    }
    row.push_back(len);
    rows.push_back(row);
  }
  Json base = r.point_base() ? Json("point") : Json::array({r.a(), r.b()});
  return Json{{"base", base}, {"window", r.window()}, {"steps", Json::array({r.m(), r.n()})}, {"mask", rows}};
}

GridRegion region_from_json(const Json& j, const std::string& where) {
  const Json& b = field(j, "base", where);
  bool point = false;
  double a = 0, bb = 0;
  if (b.is_string()) {
    if (b.get<std::string>() != "point") fail(where + "/base", "expected \"point\" or [a, b]");
    point = true;
  } else {
    if (!b.is_array() || b.size() != 2) fail(where + "/base", "expected \"point\" or [a, b]");
    a = number(b[0], where + "/base/0");
    bb = number(b[1], where + "/base/1");
  }
  const double window = number(field(j, "window", where), where + "/window");
  const Json& st = field(j, "steps", where);
  if (!st.is_array() || st.size() != 2) fail(where + "/steps", "expected [m, n]");
  const std::size_t m = count(st[0], where + "/steps/0");
  const std::size_t n = count(st[1], where + "/steps/1");
  std::vector<char> mask;
  if (!j.contains("mask")) {
    mask.assign(m * n, 1);
  } else {
    const Json& rows = array(j["mask"], where + "/mask");
    if (rows.size() != m) fail(where + "/mask", "expected " + std::to_string(m) + " rows");
    for (std::size_t i = 0; i < m; ++i) {
      const std::string w = where + "/mask/" + std::to_string(i);
      array(rows[i], w);
      std::size_t total = 0;
      bool cur = false;
      for (std::size_t k = 0; k < rows[i].size(); ++k) {
        const std::size_t len = count(rows[i][k], w + "/" + std::to_string(k));
        mask.insert(mask.end(), len, cur ? 1 : 0);
        total += len;
        cur = !cur;
      }
      if (total != n) fail(w, "run lengths sum to " + std::to_string(total) + ", expected " + std::to_string(n));
    }
  }
  return located(where, [&] { return GridRegion(point, a, bb, m, window, n, mask); });
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace cshv::io
