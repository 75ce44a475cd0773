#pragma once

// Exact integer/rational vectors and the small amount of linear algebra the
// cone code needs (echelon forms, rank, null spaces).

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace entrocone {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVec = std::vector<Integer>;
using RatVec = std::vector<Rational>;

// Divide by the gcd of all entries. Zero vectors are left as they are.
void make_primitive(IntVec& v);

// make_primitive, then flip the sign so the first nonzero entry is positive.
void make_oriented(IntVec& v);

// Clear denominators and return the primitive integer multiple (positive
// scaling only, so the direction is preserved).
IntVec primitive_of(const RatVec& v);

IntVec to_int(const std::vector<long>& v);
RatVec to_rational(const IntVec& v);

Integer dot(const IntVec& a, const IntVec& b);
Rational dot(const IntVec& a, const RatVec& b);

bool is_zero(const IntVec& v);
int sign(const Integer& x);

std::string to_string(const IntVec& v, const char* sep = " ");

namespace linalg {

// Reduced row echelon form over Q. When `reverse` is set, columns are scanned
// from the last to the first, so pivots land on the highest-index columns.
struct Echelon {
    std::vector<RatVec> rows;           // nonzero rows only, one per pivot
    std::vector<std::size_t> pivots;    // pivot column of each row
};

Echelon rref(const std::vector<IntVec>& rows, std::size_t cols, bool reverse = false);

std::size_t rank(const std::vector<IntVec>& rows, std::size_t cols);

// Basis of {x : r.x = 0 for every row r}. With the default reverse pivoting
// the free coordinates are the lowest-index ones and basis vector k has a 1
// in the k-th free coordinate and 0 in the others.
struct Kernel {
    std::vector<IntVec> basis;
    std::vector<std::size_t> free_columns;
    std::vector<std::size_t> pivot_columns;
};

Kernel kernel(const std::vector<IntVec>& rows, std::size_t cols, bool reverse = true);

// Integer basis of the row space, in reduced echelon form (oriented primitive
// rows). Used as the canonical form of an equality system.
std::vector<IntVec> row_basis(const std::vector<IntVec>& rows, std::size_t cols,
                              bool reverse = true);

// Reduce v modulo the span of an echelon system: zero v at every pivot column.
// The result is primitive with its original orientation kept.
IntVec reduce_modulo(const IntVec& v, const Echelon& e);

// Solve M x = b for square invertible M (rows of M given); throws if singular.
RatVec solve(const std::vector<IntVec>& m, const RatVec& b);

}  // namespace linalg
}  // namespace entrocone
