#include "loopblocks/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "loopblocks/json_io.hpp"

namespace loopblocks {

long long ipow(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

FiniteGroup FiniteGroup::from_cayley(std::vector<std::vector<Elem>> cayley,
                                     std::string name) {
  const int n = static_cast<int>(cayley.size());
  if (n <= 0) throw validation_error("empty Cayley table");
  for (const auto& row : cayley) {
    if (static_cast<int>(row.size()) != n)
      throw validation_error("Cayley table is not square");
    for (Elem e : row)
      if (e < 0 || e >= n) throw validation_error("Cayley entry out of range");
  }
  for (int g = 0; g < n; ++g) {
    if (cayley[0][g] != g || cayley[g][0] != g)
      throw validation_error("element 0 is not an identity");
  }
  // Rows and columns must be permutations (cancellation).
  for (int g = 0; g < n; ++g) {
    std::vector<char> seen_row(n, 0), seen_col(n, 0);
    for (int h = 0; h < n; ++h) {
      if (seen_row[cayley[g][h]]++) throw validation_error("row not a permutation");
      if (seen_col[cayley[h][g]]++) throw validation_error("column not a permutation");
    }
  }
  std::vector<Elem> inverse(n, -1);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      if (cayley[g][h] == 0) {
        if (cayley[h][g] != 0)
          throw validation_error("one-sided inverse in Cayley table");
        inverse[g] = h;
        break;
      }
    }
    if (inverse[g] < 0) throw validation_error("element without inverse");
  }
  // Associativity: exhaustive up to order 64, sampled above.
  auto assoc = [&](int a, int b, int c) {
    return cayley[cayley[a][b]][c] == cayley[a][cayley[b][c]];
  };
  if (n <= 64) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (!assoc(a, b, c)) throw validation_error("Cayley table not associative");
  } else {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> d(0, n - 1);
    for (int t = 0; t < 200000; ++t)
      if (!assoc(d(rng), d(rng), d(rng)))
        throw validation_error("Cayley table not associative");
  }
  FiniteGroup g;
  g.order_ = n;
  g.cayley_ = std::move(cayley);
  g.inverse_ = std::move(inverse);
  g.name_ = std::move(name);
  return g;
}

Elem FiniteGroup::pow(Elem g, long long e) const {
  if (e < 0) return pow(inv(g), -e);
  Elem acc = 0, base = g;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

int FiniteGroup::element_order(Elem g) const {
  int k = 1;
  Elem x = g;
  while (x != 0) {
    x = mul(x, g);
    ++k;
  }
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order_; ++a)
    for (int b = a + 1; b < order_; ++b)
      if (cayley_[a][b] != cayley_[b][a]) return false;
  return true;
}

std::string FiniteGroup::elem_name(Elem g) const {
  if (g >= 0 && g < static_cast<int>(elem_names_.size())) return elem_names_[g];
  return std::to_string(g);
}

void FiniteGroup::set_elem_names(std::vector<std::string> names) {
  if (static_cast<int>(names.size()) != order_)
    throw validation_error("element name count mismatch");
  elem_names_ = std::move(names);
}

namespace {

FiniteGroup make_cyclic(int n) {
  if (n < 1) throw validation_error("cyclic group needs n >= 1");
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  auto g = FiniteGroup::from_cayley(std::move(t), "Z" + std::to_string(n));
  std::vector<std::string> names(n);
  for (int i = 0; i < n; ++i) names[i] = std::to_string(i);
  g.set_elem_names(std::move(names));
  return g;
}

// Dihedral group of order n = 2m, elements 1, r, .., r^(m-1), s, sr, .., sr^(m-1).
FiniteGroup make_dihedral(int n) {
  if (n < 2 || n % 2 != 0) throw validation_error("dihedral order must be even, >= 2");
  const int m = n / 2;
  auto idx = [m](int flip, int rot) { return flip * m + ((rot % m + m) % m); };
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (int ea = 0; ea <= 1; ++ea)
    for (int a = 0; a < m; ++a)
      for (int eb = 0; eb <= 1; ++eb)
        for (int b = 0; b < m; ++b) {
          int i = idx(ea, a), j = idx(eb, b);
          if (ea == 0 && eb == 0) t[i][j] = idx(0, a + b);
          else if (ea == 0 && eb == 1) t[i][j] = idx(1, b - a);
          else if (ea == 1 && eb == 0) t[i][j] = idx(1, a + b);
          else t[i][j] = idx(0, b - a);
        }
  auto g = FiniteGroup::from_cayley(std::move(t), "D" + std::to_string(n));
  std::vector<std::string> names(n);
  for (int a = 0; a < m; ++a) {
    names[a] = a == 0 ? "1" : (a == 1 ? "r" : "r" + std::to_string(a));
    names[m + a] = a == 0 ? "s" : (a == 1 ? "sr" : "sr" + std::to_string(a));
  }
  g.set_elem_names(std::move(names));
  return g;
}

FiniteGroup make_symmetric(int n) {
  if (n < 1 || n > 4) throw validation_error("symmetric family supports n <= 4");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
  const int ord = static_cast<int>(perms.size());
  std::vector<std::vector<Elem>> t(ord, std::vector<Elem>(ord));
  for (int a = 0; a < ord; ++a)
    for (int b = 0; b < ord; ++b) {
      std::vector<int> c(n);
      for (int x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = index[c];
    }
  auto g = FiniteGroup::from_cayley(std::move(t), "S" + std::to_string(n));
  std::vector<std::string> names(ord);
  for (int i = 0; i < ord; ++i) {
    std::string s;
    for (int x : perms[i]) s += std::to_string(x);
    names[i] = s;
  }
  g.set_elem_names(std::move(names));
  return g;
}

FiniteGroup make_quaternion(int n) {
  if (n != 8) throw validation_error("quaternion family supports Q8 only");
  // index = 2*basis + sign, basis 0..3 = 1,i,j,k
  static const int bmul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int bsign[4][4] = {{+1, +1, +1, +1},
                                  {+1, -1, +1, -1},
                                  {+1, -1, -1, +1},
                                  {+1, +1, -1, -1}};
  // bsign[a][b]: sign of basis product e_a e_b with e_1=i, e_2=j, e_3=k:
  // i*j=k, j*k=i, k*i=j, squares = -1.
  std::vector<std::vector<Elem>> t(8, std::vector<Elem>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int ba = a / 2, sa = a % 2 ? -1 : 1;
      int bb = b / 2, sb = b % 2 ? -1 : 1;
      int bc = bmul[ba][bb];
      int sc = sa * sb * bsign[ba][bb];
      t[a][b] = 2 * bc + (sc < 0 ? 1 : 0);
    }
  auto g = FiniteGroup::from_cayley(std::move(t), "Q8");
  g.set_elem_names({"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
  return g;
}

}  // namespace

FiniteGroup builtin_group(const std::string& family, int param) {
  if (family == "Z") return make_cyclic(param);
  if (family == "D") return make_dihedral(param);
  if (family == "S") return make_symmetric(param);
  if (family == "Q") return make_quaternion(param);
  throw validation_error("unknown group family: " + family);
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order(), n = na * nb;
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (int a1 = 0; a1 < na; ++a1)
    for (int b1 = 0; b1 < nb; ++b1)
      for (int a2 = 0; a2 < na; ++a2)
        for (int b2 = 0; b2 < nb; ++b2)
          t[a1 * nb + b1][a2 * nb + b2] = a.mul(a1, a2) * nb + b.mul(b1, b2);
  auto g = FiniteGroup::from_cayley(std::move(t), a.name() + "x" + b.name());
  std::vector<std::string> names(n);
  for (int a1 = 0; a1 < na; ++a1)
    for (int b1 = 0; b1 < nb; ++b1)
      names[a1 * nb + b1] = a.elem_name(a1) + "|" + b.elem_name(b1);
  g.set_elem_names(std::move(names));
  return g;
}

namespace {

FiniteGroup parse_single_group(const std::string& s) {
  if (s.size() < 2) throw validation_error("bad group spec: " + s);
  char fam = s[0];
  if (fam != 'Z' && fam != 'D' && fam != 'S' && fam != 'Q')
    throw validation_error("bad group spec: " + s);
  int param = 0;
  try {
    size_t pos = 0;
    param = std::stoi(s.substr(1), &pos);
    if (pos + 1 != s.size()) throw validation_error("bad group spec: " + s);
  } catch (const std::exception&) {
    throw validation_error("bad group spec: " + s);
  }
  return builtin_group(std::string(1, fam), param);
}

}  // namespace

FiniteGroup parse_group(const std::string& spec) {
  if (spec.rfind("file:", 0) == 0) return load_group_json(spec.substr(5));
  size_t xpos = spec.find('x');
  if (xpos == std::string::npos) return parse_single_group(spec);
  // left-associated product: "Z2xZ2xZ3"
  FiniteGroup acc = parse_single_group(spec.substr(0, xpos));
  size_t start = xpos + 1;
  while (true) {
    size_t next = spec.find('x', start);
    std::string part = spec.substr(start, next == std::string::npos
                                              ? std::string::npos
                                              : next - start);
    acc = direct_product(acc, parse_single_group(part));
    if (next == std::string::npos) break;
    start = next + 1;
  }
  return acc;
}

std::vector<FiniteGroup> builtin_catalog(int max_order) {
  static const char* specs[] = {"Z2",    "Z3",    "Z4",    "Z5",    "Z6",
                                "Z7",    "Z8",    "Z9",    "Z10",   "Z12",
                                "Z2xZ2", "Z2xZ4", "Z2xZ6", "Z3xZ3", "D6",
                                "D8",    "D10",   "D12",   "D14",   "D16",
                                "D20",   "D24",   "Q8",    "Z2xD6", "Z2xQ8",
                                "S4"};
  std::vector<FiniteGroup> out;
  for (const char* s : specs) {
    FiniteGroup g = parse_group(s);
    if (g.order() <= max_order) out.push_back(std::move(g));
  }
  return out;
}

ConjugacyData conjugacy(const FiniteGroup& g) {
  const int n = g.order();
  ConjugacyData cd;
  cd.class_of.assign(n, -1);
  for (Elem x = 0; x < n; ++x) {
    if (cd.class_of[x] >= 0) continue;
    const int ci = static_cast<int>(cd.classes.size());
    std::set<Elem> cls;
    for (Elem h = 0; h < n; ++h) cls.insert(g.conj(h, x));
    std::vector<Elem> sorted(cls.begin(), cls.end());
    for (Elem y : sorted) cd.class_of[y] = ci;
    cd.class_rep.push_back(sorted.front());
    cd.classes.push_back(std::move(sorted));
  }
  for (int ci = 0; ci < cd.num_classes(); ++ci) {
    cd.centralizer_of_rep.push_back(
        centralizer_of_tuple(g, {cd.class_rep[ci]}));
  }
  return cd;
}

std::vector<Elem> centralizer_of_tuple(const FiniteGroup& g,
                                       const std::vector<Elem>& tuple) {
  std::vector<Elem> out;
  for (Elem h = 0; h < g.order(); ++h) {
    bool ok = true;
    for (Elem t : tuple) {
      if (t < 0 || t >= g.order()) throw validation_error("element out of range");
      if (g.mul(h, t) != g.mul(t, h)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(h);
  }
  return out;
}

Subgroup make_subgroup(const FiniteGroup& g, std::vector<Elem> elems,
                       std::string name) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  if (elems.empty() || elems.front() != 0)
    throw validation_error("subgroup must contain the identity");
  Subgroup sg;
  sg.index_of.assign(g.order(), -1);
  for (size_t i = 0; i < elems.size(); ++i) sg.index_of[elems[i]] = static_cast<int>(i);
  const int m = static_cast<int>(elems.size());
  std::vector<std::vector<Elem>> t(m, std::vector<Elem>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int k = sg.index_of[g.mul(elems[i], elems[j])];
      if (k < 0) throw validation_error("element list not closed under product");
      t[i][j] = k;
    }
  if (name.empty()) name = g.name() + "-sub" + std::to_string(m);
  sg.induced = FiniteGroup::from_cayley(std::move(t), name);
  std::vector<std::string> names(m);
  for (int i = 0; i < m; ++i) names[i] = g.elem_name(elems[i]);
  sg.induced.set_elem_names(std::move(names));
  sg.elems = std::move(elems);
  return sg;
}

CommutingTuples commuting_tuples(const FiniteGroup& g, int m,
                                 const std::vector<Elem>* within,
                                 long long list_cap) {
  if (m < 0) throw validation_error("commuting_tuples needs m >= 0");
  std::vector<Elem> domain;
  if (within) {
    domain = *within;
  } else {
    domain.resize(g.order());
    std::iota(domain.begin(), domain.end(), 0);
  }
  CommutingTuples result;
  std::vector<Elem> cur(m);
  // count pass, then an optional list pass
  for (int pass = 0; pass < 2; ++pass) {
    bool listing = pass == 1;
    if (listing) {
      if (result.count > list_cap) break;
      result.listed = true;
      result.list.reserve(static_cast<size_t>(result.count));
    }
    long long count = 0;
    std::vector<size_t> stack_pos;
    // iterative DFS over tuple slots
    std::vector<size_t> idx(std::max(m, 1), 0);
    int depth = 0;
    if (m == 0) {
      count = 1;
      if (listing) result.list.push_back({});
    } else {
      while (depth >= 0) {
        if (idx[depth] == domain.size()) {
          idx[depth] = 0;
          --depth;
          if (depth >= 0) ++idx[depth];
          continue;
        }
        Elem cand = domain[idx[depth]];
        bool ok = true;
        for (int j = 0; j < depth; ++j)
          if (g.mul(cur[j], cand) != g.mul(cand, cur[j])) {
            ok = false;
            break;
          }
        if (!ok) {
          ++idx[depth];
          continue;
        }
        cur[depth] = cand;
        if (depth == m - 1) {
          ++count;
          if (listing) result.list.push_back(cur);
          ++idx[depth];
        } else {
          ++depth;
        }
      }
    }
    if (!listing) result.count = count;
  }
  return result;
}

void validate_presentation(const GroupPresentation& pres) {
  if (pres.num_generators < 0) throw validation_error("negative generator count");
  auto check_word = [&](const Word& w) {
    for (int tok : w) {
      int gi = std::abs(tok) - 1;
      if (tok == 0 || gi >= pres.num_generators)
        throw validation_error("word references undeclared generator");
    }
  };
  for (const Word& w : pres.relators) check_word(w);
  for (const Word& w : pres.boundary_words) check_word(w);
}

Elem evaluate_word(const FiniteGroup& g, const Word& w,
                   const std::vector<Elem>& assignment) {
  Elem acc = 0;
  for (int tok : w) {
    int gi = std::abs(tok) - 1;
    Elem v = assignment[gi];
    acc = g.mul(acc, tok > 0 ? v : g.inv(v));
  }
  return acc;
}

namespace {

// Shared DFS used by enumerate_homs / count_homs. Relators are checked as
// soon as their last unpinned generator gets a value.
template <typename Sink>
void hom_dfs(const FiniteGroup& g, const GroupPresentation& pres,
             const std::map<int, Elem>& pins, long long cap, Sink&& sink) {
  validate_presentation(pres);
  const int ng = pres.num_generators;
  std::vector<int> pinned(ng, 0);
  std::vector<Elem> assign(ng, -1);
  for (auto [k, v] : pins) {
    if (k < 0 || k >= ng) throw validation_error("pin for undeclared generator");
    if (v < 0 || v >= g.order()) throw validation_error("pin value out of range");
    pinned[k] = 1;
    assign[k] = v;
  }
  std::vector<int> free_gens;
  for (int i = 0; i < ng; ++i)
    if (!pinned[i]) free_gens.push_back(i);
  double budget = 1;
  for (size_t i = 0; i < free_gens.size(); ++i) {
    budget *= g.order();
    if (budget > static_cast<double>(cap))
      throw cap_exceeded("hom enumeration exceeds cap");
  }
  // relator -> depth (index into free_gens) after which it is fully assigned
  const int done_before = -1;
  std::vector<std::vector<const Word*>> due(free_gens.size());
  std::vector<const Word*> due_immediately;
  for (const Word& w : pres.relators) {
    int last = done_before;
    for (int tok : w) {
      int gi = std::abs(tok) - 1;
      if (!pinned[gi]) {
        for (size_t d = 0; d < free_gens.size(); ++d)
          if (free_gens[d] == gi) last = std::max(last, static_cast<int>(d));
      }
    }
    if (last == done_before) due_immediately.push_back(&w);
    else due[last].push_back(&w);
  }
  for (const Word* w : due_immediately)
    if (evaluate_word(g, *w, assign) != 0) return;
  if (free_gens.empty()) {
    sink(assign);
    return;
  }
  // iterative DFS, lexicographic in the free generators
  int depth = 0;
  std::vector<Elem> val(free_gens.size(), 0);
  while (depth >= 0) {
    if (val[depth] == g.order()) {
      val[depth] = 0;
      --depth;
      if (depth >= 0) ++val[depth];
      continue;
    }
    assign[free_gens[depth]] = val[depth];
    bool ok = true;
    for (const Word* w : due[depth])
      if (evaluate_word(g, *w, assign) != 0) {
        ok = false;
        break;
      }
    if (!ok) {
      ++val[depth];
      continue;
    }
    if (depth + 1 == static_cast<int>(free_gens.size())) {
      sink(assign);
      ++val[depth];
    } else {
      ++depth;
    }
  }
}

}  // namespace

std::vector<std::vector<Elem>> enumerate_homs(const FiniteGroup& g,
                                              const GroupPresentation& pres,
                                              const std::map<int, Elem>& pins,
                                              long long cap) {
  std::vector<std::vector<Elem>> out;
  hom_dfs(g, pres, pins, cap,
          [&](const std::vector<Elem>& a) { out.push_back(a); });
  return out;
}

long long count_homs(const FiniteGroup& g, const GroupPresentation& pres,
                     const std::map<int, Elem>& pins, long long cap) {
  long long n = 0;
  hom_dfs(g, pres, pins, cap, [&](const std::vector<Elem>&) { ++n; });
  return n;
}

}  // namespace loopblocks
