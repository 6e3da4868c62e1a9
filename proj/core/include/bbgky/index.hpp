#ifndef BBGKY_INDEX_HPP
#define BBGKY_INDEX_HPP

#include <string>
#include <string_view>
#include <vector>

#include "bbgky/errors.hpp"

namespace bbgky {

//A subsystem index.  Two kinds:
//  single  "A1", "F2"  one concrete subsystem; a bare letter "F" is the bound
//          occurrence of a family summation variable inside a commutator sum
//  family  {F}/F1...   an infinite family minus the excluded members; on an
//          operator it doubles as the summation binder (the family name is
//          also the bound variable, so at most one sum per letter in a term)
class Index {
 public:
  static Index single(std::string_view label);
  static Index family(char letter, std::vector<std::string> excluded = {});

  bool is_single() const { return !family_; }
  bool is_family() const { return family_; }
  //bound = single with no ordinal; stands for one running member of a family
  bool is_bound() const { return !family_ && ordinal_ == 0; }

  char letter() const { return letter_; }
  int ordinal() const { return ordinal_; }
  const std::vector<std::string>& excluded() const { return excluded_; }

  //"A1" for singles, "F" for bound singles and family letters
  std::string label() const;

  Index with_excluded(const std::vector<std::string>& more) const;
  bool excludes(std::string_view label) const;

  friend bool operator==(const Index& a, const Index& b);
  friend bool operator!=(const Index& a, const Index& b) { return !(a == b); }

 private:
  Index() = default;
  char letter_ = 0;
  int ordinal_ = 0;  //0 = none
  bool family_ = false;
  std::vector<std::string> excluded_;  //sorted single labels, families only
};

//total order used everywhere indices get sorted: ordinal singles first
//(lexicographic by letter then numeric ordinal), then bare letters and
//families by letter.  "F1" < "F2" < "F10" < "A"(bound) < "{A}".
int compare(const Index& a, const Index& b);
inline bool operator<(const Index& a, const Index& b) { return compare(a, b) < 0; }

//splits "A12" into ('A', 12); ordinal 0 when absent; rejects anything that is
//not one uppercase letter plus an optional positive integer
std::pair<char, int> split_label(std::string_view label);

int compare_labels(std::string_view a, std::string_view b);

//whether two indices can refer to the same concrete subsystem ("A1" vs the
//family {A}/A2 can, "A1" vs {A}/A1 cannot)
bool may_overlap(const Index& a, const Index& b);

//interaction operator index pair; order is the declaration order and fixes
//how V subscripts print
struct PairedIndex {
  Index first;
  Index second;

  PairedIndex(Index f, Index s);
};

bool operator==(const PairedIndex& a, const PairedIndex& b);
int compare(const PairedIndex& a, const PairedIndex& b);

struct InteractionOp {
  PairedIndex pair;
};

inline bool operator==(const InteractionOp& a, const InteractionOp& b) {
  return a.pair == b.pair;
}

}  // namespace bbgky

#endif
