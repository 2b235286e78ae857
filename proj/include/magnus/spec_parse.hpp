#pragma once

// The small text grammar for families and fields used on the command line.
//
//   scalar:p=1;N=4
//   matrix:rand(2x2,int<=3);N=4;seed=7;degrees=1,2
//   free:N=3;degrees=1,2
//   field:poly(X+x*Y;dim=2)
//
// Every family form accepts dir=forward|backward. Field terms are products
// of an optional rational, an optional power x^k and one named matrix:
// X (E_01), Y (E_10), H (E_00 - E_11), S (X + Y), I, or Eij with 1-based
// indices.

#include "magnus/expansion.hpp"
#include "magnus/poly_field.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace magnus {

enum class FamilyKind { Scalar, Matrix, Free };

struct FamilySpec {
  FamilyKind kind = FamilyKind::Scalar;
  int sites = 1;
  Rational p = 1;              ///< scalar value of L^(1)
  std::size_t dim = 2;         ///< matrix size
  long bound = 3;              ///< entries in [-bound, bound]
  std::uint64_t seed = 0;
  std::vector<int> degrees{1};
  std::optional<Direction> dir;
};

FamilySpec parse_family_spec(std::string_view text);

/// Scalar families are 1x1 matrices; matrix families draw L^(d)_n for each
/// listed degree from the spec's own seed, site by site.
SiteOperatorFamily<QMatrix> build_matrix_family(const FamilySpec &spec);
/// L^(d)_n as free letters: P_n for a linear family, L^(d)_n otherwise.
SiteOperatorFamily<FreeElement> build_free_family(const FamilySpec &spec);

Direction parse_direction(std::string_view text);

/// `field:poly(...)` or the bare polynomial.
PolyField parse_field_spec(std::string_view text);
/// Named matrix for the field grammar.
QMatrix named_matrix(std::string_view name, std::size_t dim);

} // namespace magnus
