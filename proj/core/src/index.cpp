#include "bbgky/index.hpp"

#include <algorithm>
#include <cctype>

namespace bbgky {

std::pair<char, int> split_label(std::string_view label) {
  if (label.empty() || !std::isupper(static_cast<unsigned char>(label[0])))
    throw StructuralError("bad index label '" + std::string(label) +
                          "': expected an uppercase letter plus optional ordinal");
  char letter = label[0];
  if (label.size() == 1) return {letter, 0};
  int ordinal = 0;
  for (size_t i = 1; i < label.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(label[i])))
      throw StructuralError("bad index label '" + std::string(label) + "'");
    ordinal = ordinal * 10 + (label[i] - '0');
    if (ordinal > 1000000)
      throw StructuralError("ordinal out of range in '" + std::string(label) + "'");
  }
  if (ordinal == 0)
    throw StructuralError("ordinal must be positive in '" + std::string(label) + "'");
  return {letter, ordinal};
}

int compare_labels(std::string_view a, std::string_view b) {
  auto [la, oa] = split_label(a);
  auto [lb, ob] = split_label(b);
  if (la != lb) return la < lb ? -1 : 1;
  if (oa != ob) return oa < ob ? -1 : 1;
  return 0;
}

Index Index::single(std::string_view label) {
  auto [letter, ordinal] = split_label(label);
  Index i;
  i.letter_ = letter;
  i.ordinal_ = ordinal;
  i.family_ = false;
  return i;
}

Index Index::family(char letter, std::vector<std::string> excluded) {
  if (!std::isupper(static_cast<unsigned char>(letter)))
    throw StructuralError(std::string("bad family letter '") + letter + "'");
  for (const auto& e : excluded) {
    auto [l, o] = split_label(e);
    if (l != letter)
      throw StructuralError("excluded label '" + e + "' does not belong to family '" +
                            std::string(1, letter) + "'");
    if (o == 0)
      throw StructuralError("excluded label '" + e + "' must carry an ordinal");
  }
  std::sort(excluded.begin(), excluded.end(),
            [](const auto& a, const auto& b) { return compare_labels(a, b) < 0; });
  auto dup = std::adjacent_find(excluded.begin(), excluded.end());
  if (dup != excluded.end())
    throw StructuralError("duplicate excluded label '" + *dup + "'");
  Index i;
  i.letter_ = letter;
  i.family_ = true;
  i.excluded_ = std::move(excluded);
  return i;
}

std::string Index::label() const {
  std::string s(1, letter_);
  if (ordinal_ > 0) s += std::to_string(ordinal_);
  return s;
}

Index Index::with_excluded(const std::vector<std::string>& more) const {
  if (!family_) throw StructuralError("with_excluded on a single index");
  std::vector<std::string> all = excluded_;
  for (const auto& e : more)
    if (!excludes(e)) all.push_back(e);
  return family(letter_, std::move(all));
}

bool Index::excludes(std::string_view label) const {
  for (const auto& e : excluded_)
    if (e == label) return true;
  return false;
}

bool operator==(const Index& a, const Index& b) {
  return a.family_ == b.family_ && a.letter_ == b.letter_ &&
         a.ordinal_ == b.ordinal_ && a.excluded_ == b.excluded_;
}

int compare(const Index& a, const Index& b) {
  //ordinal singles sort ahead of bare letters and families
  int ta = a.is_single() && a.ordinal() > 0 ? 0 : 1;
  int tb = b.is_single() && b.ordinal() > 0 ? 0 : 1;
  if (ta != tb) return ta - tb;
  if (a.letter() != b.letter()) return a.letter() < b.letter() ? -1 : 1;
  if (a.ordinal() != b.ordinal()) return a.ordinal() < b.ordinal() ? -1 : 1;
  if (a.is_family() != b.is_family()) return a.is_family() ? 1 : -1;
  if (a.excluded() != b.excluded()) return a.excluded() < b.excluded() ? -1 : 1;
  return 0;
}

bool may_overlap(const Index& a, const Index& b) {
  if (a.letter() != b.letter()) return false;
  if (a.is_single() && b.is_single()) {
    //two distinct ordinals never collide; a bound letter ranges over the
    //whole family, so it may hit any ordinal (binder exclusions are checked
    //by the caller through the family form of the index)
    if (a.ordinal() > 0 && b.ordinal() > 0) return a.ordinal() == b.ordinal();
    return true;
  }
  const Index& fam = a.is_family() ? a : b;
  const Index& other = a.is_family() ? b : a;
  if (other.is_family()) return true;  //same letter, both infinite
  if (other.ordinal() == 0) return true;
  return !fam.excludes(other.label());
}

PairedIndex::PairedIndex(Index f, Index s) : first(std::move(f)), second(std::move(s)) {
  if (first.letter() == second.letter())
    throw StructuralError("interaction pair must connect two different letters");
}

bool operator==(const PairedIndex& a, const PairedIndex& b) {
  return a.first == b.first && a.second == b.second;
}

int compare(const PairedIndex& a, const PairedIndex& b) {
  if (int c = compare(a.first, b.first)) return c;
  return compare(a.second, b.second);
}

}  // namespace bbgky
