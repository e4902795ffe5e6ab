#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "loopblocks/errors.hpp"

namespace loopblocks {

using Elem = int;

// Finite group as a dense Cayley table over element indices 0..|G|-1.
// Identity is always index 0; all further algebra derives from the table.
class FiniteGroup {
 public:
  static FiniteGroup from_cayley(std::vector<std::vector<Elem>> cayley,
                                 std::string name = "");

  int order() const { return order_; }
  Elem mul(Elem a, Elem b) const { return cayley_[a][b]; }
  Elem inv(Elem a) const { return inverse_[a]; }
  // g x g^-1
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }
  Elem pow(Elem g, long long e) const;
  Elem commutator(Elem a, Elem b) const {
    return mul(mul(a, b), mul(inv(a), inv(b)));
  }
  int element_order(Elem g) const;

  const std::vector<std::vector<Elem>>& cayley() const { return cayley_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& elem_names() const { return elem_names_; }
  std::string elem_name(Elem g) const;
  void set_elem_names(std::vector<std::string> names);
  void set_name(std::string name) { name_ = std::move(name); }

  bool is_abelian() const;

 private:
  int order_ = 0;
  std::vector<std::vector<Elem>> cayley_;
  std::vector<Elem> inverse_;
  std::string name_;
  std::vector<std::string> elem_names_;
};

// Built-in families: Z n (cyclic), D n (dihedral of order n, n even; D 6 is
// the paper's D6 with element order 1,r,r^2,s,sr,sr^2), S n (symmetric, n<=4,
// lexicographic one-line order so identity is index 0), Q 8 (quaternion).
FiniteGroup builtin_group(const std::string& family, int param);
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

// Accepts "D6", "Z4", "S3", "Q8", products like "Z2xZ4", or "file:<path>"
// (JSON {"order":n,"cayley":[[...]]} or {"family":"D","param":6}).
FiniteGroup parse_group(const std::string& spec);

// Named groups of order <= max_order used by the consistency sweeps.
std::vector<FiniteGroup> builtin_catalog(int max_order);

struct ConjugacyData {
  std::vector<std::vector<Elem>> classes;  // each sorted; ordered by least element
  std::vector<int> class_of;               // element -> class index
  std::vector<Elem> class_rep;             // class index -> least element
  std::vector<std::vector<Elem>> centralizer_of_rep;  // sorted element lists
  int num_classes() const { return static_cast<int>(classes.size()); }
};

ConjugacyData conjugacy(const FiniteGroup& g);

// Subgroup of a parent group with an induced Cayley table, so the character
// machinery can run on centralizers recursively.
struct Subgroup {
  std::vector<Elem> elems;      // sorted parent elements; elems[0] == 0
  std::vector<int> index_of;    // parent element -> subgroup index, -1 outside
  FiniteGroup induced;          // order == elems.size()
};

Subgroup make_subgroup(const FiniteGroup& g, std::vector<Elem> elems,
                       std::string name = "");

std::vector<Elem> centralizer_of_tuple(const FiniteGroup& g,
                                       const std::vector<Elem>& tuple);

struct CommutingTuples {
  long long count = 0;
  bool listed = false;
  std::vector<std::vector<Elem>> list;  // filled only when listed
};

// Comm_m(G), optionally restricted to a subgroup given as an element list.
// The list is emitted only when count <= list_cap; count is always exact.
CommutingTuples commuting_tuples(const FiniteGroup& g, int m,
                                 const std::vector<Elem>* within = nullptr,
                                 long long list_cap = 1000000);

// Words are sequences of signed 1-based generator tokens: +k means generator
// k-1, -k its inverse.
using Word = std::vector<int>;

struct GroupPresentation {
  int num_generators = 0;
  std::vector<Word> relators;
  std::vector<Word> boundary_words;  // optional images of boundary loops
};

void validate_presentation(const GroupPresentation& pres);

Elem evaluate_word(const FiniteGroup& g, const Word& w,
                   const std::vector<Elem>& assignment);

// All generator assignments satisfying every relator, in lexicographic order.
// pins fixes chosen generators to constants before the search (used to
// enumerate boundary-constrained surface solution sets). The cap bounds
// |G|^(#unpinned generators).
std::vector<std::vector<Elem>> enumerate_homs(
    const FiniteGroup& g, const GroupPresentation& pres,
    const std::map<int, Elem>& pins = {}, long long cap = 100000000);

long long count_homs(const FiniteGroup& g, const GroupPresentation& pres,
                     const std::map<int, Elem>& pins = {},
                     long long cap = 100000000);

long long ipow(long long base, int exp);

}  // namespace loopblocks
