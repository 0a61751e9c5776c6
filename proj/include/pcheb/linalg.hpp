#pragma once

#include <vector>

#include "pcheb/rational.hpp"

namespace pcheb {

using ModMatrix = std::vector<std::vector<long>>;  // rows
using QMatrix = std::vector<std::vector<Rat>>;

namespace modp {
// reduced row echelon form in place; returns pivot columns
std::vector<int> rref(ModMatrix& a, long p);
int rank(ModMatrix a, long p);
// basis of {x : A x = 0}, each vector of length cols
std::vector<std::vector<long>> kernel(const ModMatrix& a, int cols, long p);
long inv(long a, long p);
}  // namespace modp

namespace qmat {
QMatrix identity(int n);
QMatrix mul(const QMatrix& a, const QMatrix& b);
std::vector<Rat> mul_vec(const QMatrix& a, const std::vector<Rat>& v);
// throws std::invalid_argument on singular input
QMatrix inverse(const QMatrix& a);
Rat det(QMatrix a);
std::vector<std::vector<Rat>> kernel(QMatrix a, int cols);
}  // namespace qmat

}  // namespace pcheb
