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

#include "vibro/hafnian.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>

#include "vibro/gaussian.hpp"

namespace vibro {

namespace {

void partitions_rec(int remaining, int part, IntVector& cur, bool even_only,
                    std::vector<IntVector>& out) {
  const int parts = static_cast<int>(cur.size());
  if (part == parts - 1) {
    if (even_only && remaining % 2 != 0) return;
    cur[static_cast<std::size_t>(part)] = remaining;
    out.push_back(cur);
    return;
  }
  const int step = even_only ? 2 : 1;
  for (int v = 0; v <= remaining; v += step) {
    cur[static_cast<std::size_t>(part)] = v;
    partitions_rec(remaining - v, part + 1, cur, even_only, out);
  }
}

IntegerPartitionSet make_partitions(int target, int parts, bool even_only) {
  if (target < 0 || parts < 0) throw DomainError("integer_partitions: negative argument");
  IntegerPartitionSet set{target, parts, {}};
  if (parts == 0) {
    if (target == 0) set.tuples.emplace_back();
    return set;
  }
  IntVector cur(static_cast<std::size_t>(parts), 0);
  partitions_rec(target, 0, cur, even_only, set.tuples);
  return set;
}

cplx hafnian_rec(const ComplexMatrix& a, std::vector<int>& idx, int count) {
  if (count == 0) return 1.0;
  const int first = idx[0];
  cplx total = 0.0;
  for (int j = 1; j < count; ++j) {
    const int partner = idx[static_cast<std::size_t>(j)];
    // remove idx[0] and idx[j], recurse, restore
    std::vector<int> rest;
    rest.reserve(static_cast<std::size_t>(count - 2));
    for (int t = 1; t < count; ++t) {
      if (t != j) rest.push_back(idx[static_cast<std::size_t>(t)]);
    }
    total += a(first, partner) * hafnian_rec(a, rest, count - 2);
  }
  return total;
}

cplx loop_hafnian_rec(const ComplexMatrix& a, const std::vector<int>& idx) {
  const auto count = idx.size();
  if (count == 0) return 1.0;
  const int first = idx[0];
  std::vector<int> rest(idx.begin() + 1, idx.end());
  cplx total = a(first, first) * loop_hafnian_rec(a, rest);
  for (std::size_t j = 0; j < rest.size(); ++j) {
    std::vector<int> rr;
    rr.reserve(rest.size() - 1);
    for (std::size_t t = 0; t < rest.size(); ++t) {
      if (t != j) rr.push_back(rest[t]);
    }
    total += a(first, rest[j]) * loop_hafnian_rec(a, rr);
  }
  return total;
}

double double_factorial_odd(int e) {
  // (e - 1)!! for even e, with (a)!! = 1 for a <= 0
  double f = 1.0;
  for (int v = e - 1; v > 0; v -= 2) f *= v;
  return f;
}

struct VecHash {
  std::size_t operator()(const IntVector& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ULL;
    return h;
  }
};

}  // namespace

IntegerPartitionSet integer_partitions(int target, int parts) {
  return make_partitions(target, parts, false);
}

IntegerPartitionSet even_partitions(int target, int parts) {
  return make_partitions(target, parts, true);
}

cplx permanent_exact(const ComplexMatrix& a) {
  require_square(a, "permanent_exact");
  const int n = static_cast<int>(a.rows());
  if (n > 20) throw SizeError("permanent_exact: n > 20");
  if (n == 0) return 1.0;
  // Glynn: Per(A) = 2^{1-n} sum_delta (prod delta) prod_j sum_i delta_i a_ij, delta_0 = +1
  ComplexVector colsum = a.colwise().sum().transpose();
  std::vector<int> delta(static_cast<std::size_t>(n), 1);
  int sign = 1;
  cplx total = colsum.prod();
  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  for (std::uint64_t g = 1; g < steps; ++g) {
    // Gray code: flip bit of the lowest set bit of g
    const int bit = std::countr_zero(g);
    const int row = bit + 1;
    delta[static_cast<std::size_t>(row)] = -delta[static_cast<std::size_t>(row)];
    sign = -sign;
    colsum += (2.0 * delta[static_cast<std::size_t>(row)]) * a.row(row).transpose();
    total += static_cast<double>(sign) * colsum.prod();
  }
  return total / static_cast<double>(steps);
}

cplx hafnian_exact(const ComplexMatrix& sigma) {
  require_square(sigma, "hafnian_exact");
  const int n = static_cast<int>(sigma.rows());
  if (n > 16) throw SizeError("hafnian_exact: n > 16");
  if (n % 2 != 0) return 0.0;
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  return hafnian_rec(sigma, idx, n);
}

cplx loop_hafnian_exact(const ComplexMatrix& sigma_tilde) {
  require_square(sigma_tilde, "loop_hafnian_exact");
  const int n = static_cast<int>(sigma_tilde.rows());
  if (n > 14) throw SizeError("loop_hafnian_exact: n > 14");
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  return loop_hafnian_rec(sigma_tilde, idx);
}

cplx loop_hafnian_low_rank(const LowRankFactor& f) {
  const int n = static_cast<int>(f.g.rows());
  const int r = f.rank();
  if (f.mu.size() != n) throw DomainError("loop_hafnian_low_rank: mu length mismatch");
  if (r > 6) throw SizeError("loop_hafnian_low_rank: rank > 6");
  if (n > 255) throw SizeError("loop_hafnian_low_rank: n > 255");

  // Expand q(x) = prod_i (sum_j g_ij x_j + mu_i) one linear factor at a time.
  // Exponent tuples are packed 8 bits per variable.
  using Poly = std::unordered_map<std::uint64_t, cplx>;
  Poly poly{{0, 1.0}};
  for (int i = 0; i < n; ++i) {
    Poly next;
    next.reserve(poly.size() * static_cast<std::size_t>(r + 1));
    for (const auto& [key, coef] : poly) {
      next[key] += coef * f.mu(i);
      for (int j = 0; j < r; ++j) {
        next[key + (std::uint64_t{1} << (8 * j))] += coef * f.g(i, j);
      }
    }
    poly.swap(next);
  }
  // Wick: E[x^e] = prod (e_j - 1)!! over all-even exponent tuples
  cplx total = 0.0;
  for (const auto& [key, coef] : poly) {
    double weight = 1.0;
    bool even = true;
    for (int j = 0; j < r && even; ++j) {
      const int e = static_cast<int>((key >> (8 * j)) & 0xFF);
      if (e % 2 != 0) {
        even = false;
      } else {
        weight *= double_factorial_odd(e);
      }
    }
    if (even) total += coef * weight;
  }
  return total;
}

ComplexMatrix repeat_rows_cols(const ComplexMatrix& b, const IntVector& n) {
  require_square(b, "repeat_rows_cols");
  if (static_cast<Eigen::Index>(n.size()) != b.rows()) {
    throw DomainError("repeat_rows_cols: repetition vector length mismatch");
  }
  std::vector<int> idx;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] < 0) throw DomainError("repeat_rows_cols: negative repetition");
    for (int c = 0; c < n[i]; ++c) idx.push_back(static_cast<int>(i));
  }
  return b(idx, idx);
}

LowRankFactor low_rank_factor(const ComplexMatrix& sigma, const ComplexVector& mu) {
  require_square(sigma, "low_rank_factor");
  if (mu.size() != sigma.rows()) throw DomainError("low_rank_factor: mu length mismatch");
  const TakagiResult tk = takagi(sigma, 1e-10);
  int r = 0;
  while (r < tk.d.size() && tk.d(r) > 1e-10) ++r;
  ComplexMatrix g = tk.u.leftCols(r) * tk.d.head(r).cwiseSqrt().cast<cplx>().asDiagonal();
  const double res = max_abs(g * g.transpose() - sigma);
  if (res > 1e-8) {
    throw NumericError("low_rank_factor: residual " + std::to_string(res) + " exceeds 1e-8");
  }
  return LowRankFactor{g, mu};
}

struct RepeatedLoopHafnian::Impl {
  ComplexMatrix sigma;
  ComplexVector mu;
  std::unordered_map<IntVector, cplx, VecHash> memo;

  cplx eval(IntVector& v) {
    int i = -1;
    for (int t = static_cast<int>(v.size()) - 1; t >= 0; --t) {
      if (v[static_cast<std::size_t>(t)] > 0) {
        i = t;
        break;
      }
    }
    if (i < 0) return 1.0;
    if (auto it = memo.find(v); it != memo.end()) return it->second;
    const IntVector key = v;
    // vertex of type i: either a loop, or paired with one of the other vertices
    --v[static_cast<std::size_t>(i)];
    cplx total = mu(i) * eval(v);
    for (int j = 0; j < static_cast<int>(v.size()); ++j) {
      const int cnt = v[static_cast<std::size_t>(j)];
      if (cnt == 0 || sigma(i, j) == 0.0) continue;
      --v[static_cast<std::size_t>(j)];
      total += sigma(i, j) * static_cast<double>(cnt) * eval(v);
      ++v[static_cast<std::size_t>(j)];
    }
    ++v[static_cast<std::size_t>(i)];
    memo.emplace(key, total);
    return total;
  }
};

RepeatedLoopHafnian::RepeatedLoopHafnian(ComplexMatrix sigma, ComplexVector mu)
    : impl_(std::make_shared<Impl>()) {
  require_square(sigma, "RepeatedLoopHafnian");
  if (mu.size() != sigma.rows()) throw DomainError("RepeatedLoopHafnian: mu length mismatch");
  impl_->sigma = std::move(sigma);
  impl_->mu = std::move(mu);
}

cplx RepeatedLoopHafnian::operator()(const IntVector& reps) {
  if (static_cast<Eigen::Index>(reps.size()) != impl_->sigma.rows()) {
    throw DomainError("RepeatedLoopHafnian: repetition vector length mismatch");
  }
  for (int v : reps) {
    if (v < 0) throw DomainError("RepeatedLoopHafnian: negative repetition");
  }
  IntVector v = reps;
  return impl_->eval(v);
}

std::size_t RepeatedLoopHafnian::table_size() const { return impl_->memo.size(); }

cplx loop_hafnian_repeated(const ComplexMatrix& sigma, const ComplexVector& mu,
                           const IntVector& reps) {
  RepeatedLoopHafnian lh(sigma, mu);
  return lh(reps);
}

}  // namespace vibro
