#include "hyperarr/exactq.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>

#include "hyperarr/error.hpp"

namespace hyperarr {

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!digits(num) || !digits(den)) {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  BigInt d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  BigInt n(std::string(num), 10);
  if (text.front() == '-') n = -n;
  Rational q(n, d);
  q.canonicalize();
  return q;
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows) {
  RationalMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw DimensionError("ragged matrix rows");
    std::copy(rows[r].begin(), rows[r].end(), m.entries_.begin() + r * m.cols_);
  }
  return m;
}

RationalVector multiply(const RationalMatrix& m, const RationalVector& v) {
  if (v.size() != m.cols()) throw DimensionError("matrix-vector size mismatch");
  RationalVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Rational acc = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) acc += m(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

namespace {

void make_primitive(SparseRow& row) {
  if (row.empty()) return;
  BigInt g = abs(row.front().value);
  for (std::size_t i = 1; i < row.size() && g != 1; ++i) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), row[i].value.get_mpz_t());
  if (row.front().value < 0) g = -g;
  if (g != 1) {
    for (auto& e : row) mpz_divexact(e.value.get_mpz_t(), e.value.get_mpz_t(), g.get_mpz_t());
  }
}

// out = alpha * a - beta * b, merged by column; drops cancelled entries.
SparseRow combine(const BigInt& alpha, const SparseRow& a, const BigInt& beta, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  BigInt tmp;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].col < b[j].col)) {
      out.push_back({a[i].col, alpha * a[i].value});
      ++i;
    } else if (i == a.size() || b[j].col < a[i].col) {
      out.push_back({b[j].col, -beta * b[j].value});
      ++j;
    } else {
      tmp = alpha * a[i].value;
      mpz_submul(tmp.get_mpz_t(), beta.get_mpz_t(), b[j].value.get_mpz_t());
      if (tmp != 0) out.push_back({a[i].col, tmp});
      ++i;
      ++j;
    }
  }
  return out;
}

// Eliminates the entry of `row` at `col` using `pivot` (whose leading column is col).
void eliminate(SparseRow& row, const SparseRow& pivot, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const SparseEntry& e, std::size_t c) { return e.col < c; });
  if (it == row.end() || it->col != col) return;
  const BigInt& lead = pivot.front().value;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), lead.get_mpz_t(), it->value.get_mpz_t());
  BigInt alpha = lead / g;
  BigInt beta = it->value / g;
  row = combine(alpha, row, beta, pivot);
  make_primitive(row);
}

}  // namespace

void SparseMatrix::add_row(SparseRow row) {
  std::sort(row.begin(), row.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
  SparseRow clean;
  clean.reserve(row.size());
  for (auto& e : row) {
    if (e.col >= cols_) throw DimensionError("sparse entry column out of range");
    if (!clean.empty() && clean.back().col == e.col) {
      clean.back().value += e.value;
      if (clean.back().value == 0) clean.pop_back();
    } else if (e.value != 0) {
      clean.push_back(std::move(e));
    }
  }
  rows_.push_back(std::move(clean));
}

void SparseMatrix::add_row(const std::vector<std::pair<std::size_t, Rational>>& entries) {
  BigInt lcm = 1;
  for (const auto& [c, q] : entries) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  SparseRow row;
  row.reserve(entries.size());
  for (const auto& [c, q] : entries) {
    if (q == 0) continue;
    row.push_back({c, BigInt(q.get_num() * (lcm / q.get_den()))});
  }
  add_row(std::move(row));
}

SparseMatrix SparseMatrix::from_dense(const RationalMatrix& m) {
  SparseMatrix s(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<std::pair<std::size_t, Rational>> entries;
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0) entries.emplace_back(c, m(r, c));
    s.add_row(entries);
  }
  return s;
}

RationalMatrix SparseMatrix::to_dense() const {
  RationalMatrix m(rows_.size(), cols_);
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& e : rows_[r]) m(r, e.col) = Rational(e.value);
  return m;
}

Echelon::Echelon(std::size_t cols) : cols_(cols), pivot_of_col_(cols, -1) {}

bool Echelon::insert(SparseRow row) {
  make_primitive(row);
  while (!row.empty()) {
    const std::size_t lead = row.front().col;
    const int p = pivot_of_col_[lead];
    if (p < 0) {
      pivot_of_col_[lead] = static_cast<int>(rows_.size());
      rows_.push_back(std::move(row));
      return true;
    }
    const SparseRow& pivot = rows_[static_cast<std::size_t>(p)];
    // Keep the shorter-coefficient row as the pivot.
    if (mpz_sizeinbase(row.front().value.get_mpz_t(), 2) < mpz_sizeinbase(pivot.front().value.get_mpz_t(), 2) &&
        row.size() <= pivot.size()) {
      SparseRow old = std::move(rows_[static_cast<std::size_t>(p)]);
      rows_[static_cast<std::size_t>(p)] = std::move(row);
      row = std::move(old);
    }
    eliminate(row, rows_[static_cast<std::size_t>(p)], lead);
  }
  return false;
}

std::vector<RationalVector> Echelon::kernel() const {
  // Gauss-Jordan: clear every pivot column from the other pivot rows.
  std::vector<SparseRow> rref = rows_;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (col, row index)
  for (std::size_t c = 0; c < cols_; ++c)
    if (pivot_of_col_[c] >= 0) pivots.emplace_back(c, static_cast<std::size_t>(pivot_of_col_[c]));
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    const auto [col, pr] = *it;
    for (const auto& [other_col, orow] : pivots) {
      if (other_col >= col) break;
      eliminate(rref[orow], rref[pr], col);
    }
  }
  std::vector<RationalVector> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (pivot_of_col_[f] >= 0) continue;
    RationalVector v(cols_);
    v[f] = 1;
    for (const auto& [col, pr] : pivots) {
      const SparseRow& row = rref[pr];
      auto it = std::lower_bound(row.begin(), row.end(), f,
                                 [](const SparseEntry& e, std::size_t c) { return e.col < c; });
      if (it != row.end() && it->col == f) {
        v[col] = Rational(-it->value, row.front().value);
        v[col].canonicalize();
      }
    }
    for (const auto& x : v) {
      if (x != 0) {
        const Rational lead = x;
        for (auto& y : v) y /= lead;
        break;
      }
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

Echelon echelon_of(const SparseMatrix& m) {
  // Sparse rows first keeps the fill-in of the stored pivots low.
  std::vector<std::size_t> order(m.rows());
  std::iota(order.begin(), order.end(), 0);
  const auto& rows = m.row_data();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const std::size_t la = rows[a].empty() ? m.cols() : rows[a].front().col;
    const std::size_t lb = rows[b].empty() ? m.cols() : rows[b].front().col;
    if (la != lb) return la < lb;
    return rows[a].size() < rows[b].size();
  });
  Echelon e(m.cols());
  for (std::size_t i : order)
    if (!rows[i].empty()) e.insert(rows[i]);
  return e;
}

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

std::size_t rank(const RationalMatrix& m) { return rank(SparseMatrix::from_dense(m)); }

std::size_t rank(const SparseMatrix& m, const EliminationOptions& options) {
  if (options.modular_prefilter) {
    const std::size_t bound = std::min(m.rows(), m.cols());
    const std::size_t rp = rank_mod_prime(m, random_prime_62(options.prime_seed));
    if (rp == bound) return rp;
  }
  return echelon_of(m).rank();
}

std::vector<RationalVector> nullspace(const RationalMatrix& m) { return nullspace(SparseMatrix::from_dense(m)); }

std::vector<RationalVector> nullspace(const SparseMatrix& m) { return echelon_of(m).kernel(); }

Rational determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Clear denominators row by row; remember the scale.
  std::vector<BigInt> a(n * n);
  BigInt scale = 1;
  for (std::size_t r = 0; r < n; ++r) {
    BigInt lcm = 1;
    for (std::size_t c = 0; c < n; ++c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(r, c).get_den_mpz_t());
    scale *= lcm;
    for (std::size_t c = 0; c < n; ++c) a[r * n + c] = m(r, c).get_num() * (lcm / m(r, c).get_den());
  }
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t best = n;
    for (std::size_t r = k; r < n; ++r) {
      if (a[r * n + k] == 0) continue;
      if (best == n || mpz_sizeinbase(a[r * n + k].get_mpz_t(), 2) < mpz_sizeinbase(a[best * n + k].get_mpz_t(), 2))
        best = r;
    }
    if (best == n) return 0;
    if (best != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[best * n + c]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = a[k * n + k] * a[i * n + j];
        mpz_submul(t.get_mpz_t(), a[i * n + k].get_mpz_t(), a[k * n + j].get_mpz_t());
        mpz_divexact(a[i * n + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * n + k] = 0;
    }
    prev = a[k * n + k];
  }
  Rational det(a[n * n - 1] * sign, scale);
  det.canonicalize();
  return det;
}

std::uint64_t random_prime_62(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BigInt candidate;
  const std::uint64_t x = (rng() >> 2) | (std::uint64_t{1} << 61);
  mpz_set_ui(candidate.get_mpz_t(), static_cast<unsigned long>(x));
  mpz_nextprime(candidate.get_mpz_t(), candidate.get_mpz_t());
  return static_cast<std::uint64_t>(candidate.get_ui());
}

std::size_t rank_mod_prime(const SparseMatrix& m, std::uint64_t p) {
  const std::size_t cols = m.cols();
  std::vector<std::vector<std::uint64_t>> pivots(cols);
  std::size_t rk = 0;
  std::vector<std::uint64_t> row(cols);
  BigInt tmp;
  for (const auto& srow : m.row_data()) {
    std::fill(row.begin(), row.end(), 0);
    for (const auto& e : srow) {
      mpz_fdiv_r_ui(tmp.get_mpz_t(), e.value.get_mpz_t(), static_cast<unsigned long>(p));
      row[e.col] = tmp.get_ui();
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (row[c] == 0) continue;
      if (pivots[c].empty()) {
        const std::uint64_t inv = powmod(row[c], p - 2, p);
        for (std::size_t j = c; j < cols; ++j) row[j] = mulmod(row[j], inv, p);
        pivots[c] = row;
        ++rk;
        break;
      }
      const std::uint64_t f = row[c];
      const auto& pr = pivots[c];
      for (std::size_t j = c; j < cols; ++j) {
        if (pr[j] == 0) continue;
        const std::uint64_t s = mulmod(f, pr[j], p);
        row[j] = row[j] >= s ? row[j] - s : row[j] + p - s;
      }
    }
  }
  return rk;
}

std::vector<BigInt> primitive_integer_vector(std::span<const Rational> v) {
  BigInt lcm = 1;
  for (const auto& q : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  std::vector<BigInt> out;
  out.reserve(v.size());
  BigInt g = 0;
  for (const auto& q : v) {
    out.push_back(q.get_num() * (lcm / q.get_den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g == 0) return out;
  auto first = std::find_if(out.begin(), out.end(), [](const BigInt& x) { return x != 0; });
  if (*first < 0) g = -g;
  for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return out;
}

}  // namespace hyperarr
