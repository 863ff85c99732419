/**
 * Copyright 2026 The Vibro Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <memory>
#include <vector>

#include "vibro/core.hpp"

namespace vibro {

/// Factor G (n x r) with G G^T equal to the off-diagonal part, plus loop weights.
struct LowRankFactor {
  ComplexMatrix g;
  ComplexVector mu;
  int rank() const { return static_cast<int>(g.cols()); }
};

/// Nonnegative r-tuples with a fixed sum.
struct IntegerPartitionSet {
  int target{0};
  int parts{0};
  std::vector<IntVector> tuples;
};

/// All r-tuples of nonnegative integers summing to `target`.
IntegerPartitionSet integer_partitions(int target, int parts);
/// The subset of integer_partitions(target, parts) with every entry even.
IntegerPartitionSet even_partitions(int target, int parts);

/// Glynn formula in Gray-code order; n <= 20.
cplx permanent_exact(const ComplexMatrix& a);

/// Sum over perfect matchings; odd size gives 0; n <= 16.
cplx hafnian_exact(const ComplexMatrix& sigma);

/// Sum over matchings, unmatched vertices weighted by the diagonal; n <= 14.
cplx loop_hafnian_exact(const ComplexMatrix& sigma_tilde);

/// Loop hafnian of a matrix with off-diagonal G G^T and diagonal mu; rank <= 6.
cplx loop_hafnian_low_rank(const LowRankFactor& f);

/// Repeats row and column i of b n_i times (n_i = 0 deletes it).
ComplexMatrix repeat_rows_cols(const ComplexMatrix& b, const IntVector& n);

/// Takagi-based factor of a symmetric matrix, dropping singular values below 1e-10.
LowRankFactor low_rank_factor(const ComplexMatrix& sigma, const ComplexVector& mu);

/**
 * @brief Loop hafnian of a matrix built from vertex types.
 *
 * Type t appears reps[t] times; two distinct vertices of types s and t are joined
 * with weight sigma(s, t) and a vertex of type t carries loop weight mu(t). Exact,
 * by memoized recursion over the count vector; cost grows with prod(reps + 1).
 */
cplx loop_hafnian_repeated(const ComplexMatrix& sigma, const ComplexVector& mu,
                           const IntVector& reps);

/**
 * @brief Reusable memo table for loop_hafnian_repeated over many count vectors
 * sharing the same sigma and mu.
 */
class RepeatedLoopHafnian {
 public:
  RepeatedLoopHafnian(ComplexMatrix sigma, ComplexVector mu);
  cplx operator()(const IntVector& reps);
  std::size_t table_size() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

}  // namespace vibro
