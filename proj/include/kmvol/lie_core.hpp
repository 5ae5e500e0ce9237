#pragma once

// Exact Lie-algebraic inputs: the catalog of finite Cartan matrices and
// labels, symmetrization with the theta^2 = 1 normalization, exact inversion,
// and positive-root enumeration.
//
// Cartan convention throughout: A(i, j) = 2 a_i.a_j / a_j.a_j, so a column
// holding a -2 or -3 belongs to the shorter root. This is the transpose of
// the Kac/Bourbaki convention.

#include "kmvol/rational.hpp"

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kmvol {

enum class Family { A, B, C, D, E, F, G };
enum class Twist { untwisted, twisted };

char to_char(Family f);
bool is_simply_laced(Family f);

struct AlgebraId {
  Family family = Family::A;
  int rank = 1;
  Twist twist = Twist::untwisted;
  // Whether the over-extension "++" was spelled out. Display only: every
  // computation concerns the over-extended algebra.
  bool extended = true;

  // Ordering and equality ignore `extended`.
  friend bool operator==(const AlgebraId& a, const AlgebraId& b) {
    return a.family == b.family && a.rank == b.rank && a.twist == b.twist;
  }
  friend std::strong_ordering operator<=>(const AlgebraId& a, const AlgebraId& b) {
    if (auto c = a.family <=> b.family; c != 0) return c;
    if (auto c = a.rank <=> b.rank; c != 0) return c;
    return a.twist <=> b.twist;
  }
};

/// Largest rank the A-D families are generated for.
inline constexpr int kMaxClassicalRank = 32;

/// Throws UnknownAlgebra / TwistUnavailable when the id is out of range.
void validate(const AlgebraId& id);

/// "E8++", "B4(2)++", "C3" (the latter when `extended` is false).
std::string name(const AlgebraId& id);

struct AlgebraDatum {
  AlgebraId id;
  IntMatrix cartan;
  IntVector labels;  // the multiplier vector m entering the shape matrix
  std::string node_order_note;
  // Label list as printed in the literature when it differs from `labels`.
  std::optional<IntVector> printed_labels;
  // Untwisted algebra whose shape matrix this entry reproduces exactly.
  std::optional<AlgebraId> alias_of;
};

struct CartanData {
  AlgebraDatum datum;
  RationalVector norms;  // d_j = a_j.a_j
  RationalMatrix B;      // A * diag(d)
  RationalMatrix Binv;
  RationalVector nvec;   // n_j = m_j d_j
};

struct RootList {
  std::vector<IntVector> roots;  // simple-root coordinates, sorted by height
  IntVector heights;

  const IntVector& highest() const { return roots.back(); }
  std::size_t size() const { return roots.size(); }
};

/// Builds a datum from hand-supplied data after checking the Cartan-matrix
/// sign and zero-pattern rules.
AlgebraDatum make_datum(const AlgebraId& id, IntMatrix cartan, IntVector labels,
                        std::string note = {});

/// Built-in catalog entry.
AlgebraDatum catalog_entry(const AlgebraId& id);

/// User-supplied overrides of catalog entries, read from a plain-text file
/// with one record per line:
///   <family> <rank> <untwisted|twisted> <n*n Cartan entries, row-major> <n labels>
/// Blank lines and text after '#' are ignored.
class CatalogOverrides {
 public:
  static CatalogOverrides parse(std::string_view text);
  static CatalogOverrides load(const std::filesystem::path& path);

  AlgebraDatum entry(const AlgebraId& id) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<AlgebraId, AlgebraDatum> entries_;
};

CartanData symmetrize_and_normalize(const AlgebraDatum& datum);

/// Exact inverse by fraction-free Gauss-Jordan elimination.
RationalMatrix invert_exact(const RationalMatrix& m);

/// Symmetrizing vector d with A(i,j) d_j = A(j,i) d_i and d_0 = 1.
RationalVector symmetrizer(const IntMatrix& cartan);

RootList enumerate_positive_roots(const IntMatrix& cartan);
IntVector highest_root_marks(const IntMatrix& cartan);

}  // namespace kmvol
