#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gzc/errors.hpp"

namespace gzc {

inline constexpr int kFieldSizeGuard = 1 << 16;

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// F_p polynomials, coefficient vectors low degree first, no trailing zeros
namespace poly {

using Poly = std::vector<int>;

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline Poly decode(int code, int p, int len) {
  Poly f(len);
  for (int i = 0; i < len; ++i, code /= p) f[i] = code % p;
  return f;
}

inline int modinv(int a, int p) {
  int r = 1, b = a % p, e = p - 2;
  for (; e; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

inline Poly mod(Poly a, const Poly& m, int p) {
  trim(a);
  int dm = int(m.size()) - 1;
  int lead = modinv(m.back(), p);
  while (int(a.size()) - 1 >= dm) {
    int c = a.back() * lead % p;
    int sh = int(a.size()) - 1 - dm;
    for (int i = 0; i <= dm; ++i) a[sh + i] = ((a[sh + i] - c * m[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return mod(r, m, p);
}

// trial division by every monic polynomial of degree <= deg/2
inline bool irreducible(const Poly& f, int p) {
  int e = int(f.size()) - 1;
  for (int d = 1; 2 * d <= e; ++d) {
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int code = 0; code < count; ++code) {
      Poly g = decode(code, p, d);
      g.push_back(1);
      if (mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace poly

class Field {
 public:
  Field(int p, int e) : p_(p), e_(e) {
    if (!is_prime(p)) throw ValidationError("characteristic " + std::to_string(p) + " is not prime");
    if (e < 1) throw ValidationError("field degree must be positive");
    std::uint64_t size = 1;
    for (int i = 0; i < e; ++i) {
      size *= std::uint64_t(p);
      guard(size, "field size", kFieldSizeGuard);
    }
    size_ = int(size);
    find_modulus();
    build_tables();
  }

  int p() const { return p_; }
  int degree() const { return e_; }
  int size() const { return size_; }
  const poly::Poly& modulus() const { return modulus_; }
  int generator() const { return exp_[1 % (size_ - 1 ? size_ - 1 : 1)]; }

  int add(int a, int b) const {
    if (p_ == 2) return a ^ b;
    if (!addtab_.empty()) return addtab_[std::size_t(a) * size_ + b];
    return add_slow(a, b);
  }
  int neg(int a) const {
    if (p_ == 2) return a;
    int r = 0;
    for (int i = 0, pw = 1; i < e_; ++i, pw *= p_) {
      int d = (a / pw) % p_;
      r += ((p_ - d) % p_) * pw;
    }
    return r;
  }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int mul(int a, int b) const {
    if (a == 0 || b == 0) return 0;
    int s = log_[a] + log_[b];
    if (s >= size_ - 1) s -= size_ - 1;
    return exp_[s];
  }
  int inv(int a) const {
    if (a == 0) throw ValidationError("division by zero in F_" + std::to_string(size_));
    return exp_[(size_ - 1 - log_[a]) % (size_ - 1)];
  }
  int div(int a, int b) const { return mul(a, inv(b)); }
  int pow(int a, std::uint64_t k) const {
    if (k == 0) return 1;
    if (a == 0) return 0;
    return exp_[std::uint64_t(log_[a]) * (k % std::uint64_t(size_ - 1)) % std::uint64_t(size_ - 1)];
  }
  int log(int a) const { return log_[a]; }
  int exp(int k) const { return exp_[((k % (size_ - 1)) + size_ - 1) % (size_ - 1)]; }

  // coordinates over F_p in the power basis
  std::vector<int> digits(int a) const {
    std::vector<int> d(e_);
    for (int i = 0; i < e_; ++i, a /= p_) d[i] = a % p_;
    return d;
  }
  int from_digits(const std::vector<int>& d) const {
    int r = 0;
    for (int i = e_ - 1; i >= 0; --i) r = r * p_ + d[i];
    return r;
  }
  bool contains_subfield(int f) const { return f > 0 && e_ % f == 0; }
  std::string name() const { return "F_" + std::to_string(size_); }

 private:
  int add_slow(int a, int b) const {
    int r = 0;
    for (int pw = 1, i = 0; i < e_; ++i, pw *= p_) r += (((a / pw) % p_ + (b / pw) % p_) % p_) * pw;
    return r;
  }

  void find_modulus() {
    int count = size_;
    for (int code = 0; code < count; ++code) {
      poly::Poly f = poly::decode(code, p_, e_);
      f.push_back(1);
      if (e_ == 1 || poly::irreducible(f, p_)) {
        modulus_ = f;
        return;
      }
    }
    throw ConsistencyError("no irreducible polynomial found");
  }

  void build_tables() {
    log_.assign(size_, 0);
    exp_.assign(size_, 0);
    if (size_ == 2) {
      exp_[0] = 1;
      exp_[1] = 1;
    } else {
      bool ok = false;
      for (int g = 2; g < size_ && !ok; ++g) ok = try_generator(g);
      if (!ok) throw ConsistencyError("no primitive element found");
    }
    if (p_ != 2 && size_ <= 256) {
      addtab_.resize(std::size_t(size_) * size_);
      for (int a = 0; a < size_; ++a)
        for (int b = 0; b < size_; ++b) addtab_[std::size_t(a) * size_ + b] = add_slow(a, b);
    }
  }

  bool try_generator(int g) {
    poly::Poly pg = poly::decode(g, p_, e_);
    poly::trim(pg);
    poly::Poly cur{1};
    std::vector<int> seen(size_, -1);
    for (int k = 0; k < size_ - 1; ++k) {
      poly::Poly c = cur;
      c.resize(e_, 0);
      int code = 0;
      for (int i = e_ - 1; i >= 0; --i) code = code * p_ + c[i];
      if (seen[code] >= 0) return false;
      seen[code] = k;
      exp_[k] = code;
      cur = poly::mulmod(cur, pg, modulus_, p_);
    }
    for (int k = 0; k < size_ - 1; ++k) log_[exp_[k]] = k;
    exp_[size_ - 1] = exp_[0];
    return true;
  }

  int p_, e_, size_ = 0;
  poly::Poly modulus_;
  std::vector<int> log_, exp_, addtab_;
};

using FieldPtr = std::shared_ptr<const Field>;

inline FieldPtr make_field(int p, int e = 1) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, e}];
  if (!slot) slot = std::make_shared<const Field>(p, e);
  return slot;
}

// q = p^f; returns (p, f)
inline std::pair<int, int> prime_power(int q) {
  if (q < 2) throw ValidationError("q = " + std::to_string(q) + " is not a prime power");
  int p = 2;
  while (q % p) ++p;
  int f = 0, r = q;
  while (r % p == 0) r /= p, ++f;
  if (r != 1) throw ValidationError("q = " + std::to_string(q) + " is not a prime power");
  return {p, f};
}

inline FieldPtr field_of_order(int q) {
  auto [p, f] = prime_power(q);
  return make_field(p, f);
}

// image of every element of `small` inside `big`, via the smallest root of the defining polynomial
inline std::vector<int> embedding(const FieldPtr& small, const FieldPtr& big) {
  if (small->p() != big->p() || big->degree() % small->degree())
    throw ValidationError(small->name() + " does not embed in " + big->name());
  const auto& m = small->modulus();
  int root = -1;
  for (int r = 0; r < big->size() && root < 0; ++r) {
    int v = 0;
    for (int i = int(m.size()) - 1; i >= 0; --i) v = big->add(big->mul(v, r), m[i]);
    if (v == 0) root = r;
  }
  if (root < 0) throw ConsistencyError("defining polynomial has no root in the extension");
  std::vector<int> img(small->size());
  for (int a = 0; a < small->size(); ++a) {
    auto d = small->digits(a);
    int v = 0;
    for (int i = small->degree() - 1; i >= 0; --i) v = big->add(big->mul(v, root), d[i]);
    img[a] = v;
  }
  return img;
}

struct Mat {
  FieldPtr F;
  int r = 0, c = 0;
  std::vector<int> a;

  Mat() = default;
  Mat(FieldPtr f, int rows, int cols) : F(std::move(f)), r(rows), c(cols), a(std::size_t(rows) * cols, 0) {}

  int& operator()(int i, int j) { return a[std::size_t(i) * c + j]; }
  int operator()(int i, int j) const { return a[std::size_t(i) * c + j]; }
  friend bool operator==(const Mat& x, const Mat& y) { return x.r == y.r && x.c == y.c && x.a == y.a; }
  friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }
  friend bool operator<(const Mat& x, const Mat& y) {
    return std::tie(x.r, x.c, x.a) < std::tie(y.r, y.c, y.a);
  }
};

inline Mat identity(const FieldPtr& F, int n) {
  Mat m(F, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

inline Mat from_rows(const FieldPtr& F, const std::vector<std::vector<int>>& rows) {
  int r = int(rows.size()), c = r ? int(rows[0].size()) : 0;
  Mat m(F, r, c);
  for (int i = 0; i < r; ++i) {
    if (int(rows[i].size()) != c) throw ValidationError("ragged matrix rows");
    for (int j = 0; j < c; ++j) {
      if (rows[i][j] < 0 || rows[i][j] >= F->size()) throw ValidationError("entry outside the field");
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

inline void check_same_field(const Mat& x, const Mat& y) {
  if (x.F.get() != y.F.get()) throw ValidationError("matrices over different fields");
}

inline Mat operator*(const Mat& x, const Mat& y) {
  check_same_field(x, y);
  if (x.c != y.r) throw ValidationError("matrix dimension mismatch");
  const Field& F = *x.F;
  Mat m(x.F, x.r, y.c);
  for (int i = 0; i < x.r; ++i)
    for (int k = 0; k < x.c; ++k) {
      int v = x(i, k);
      if (!v) continue;
      for (int j = 0; j < y.c; ++j)
        if (y(k, j)) m(i, j) = F.add(m(i, j), F.mul(v, y(k, j)));
    }
  return m;
}

inline Mat operator+(const Mat& x, const Mat& y) {
  check_same_field(x, y);
  if (x.r != y.r || x.c != y.c) throw ValidationError("matrix dimension mismatch");
  Mat m = x;
  for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] = x.F->add(x.a[i], y.a[i]);
  return m;
}

inline Mat operator-(const Mat& x, const Mat& y) {
  check_same_field(x, y);
  if (x.r != y.r || x.c != y.c) throw ValidationError("matrix dimension mismatch");
  Mat m = x;
  for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] = x.F->sub(x.a[i], y.a[i]);
  return m;
}

inline Mat scale(int s, const Mat& x) {
  Mat m = x;
  for (auto& v : m.a) v = x.F->mul(s, v);
  return m;
}

inline Mat transpose(const Mat& x) {
  Mat m(x.F, x.c, x.r);
  for (int i = 0; i < x.r; ++i)
    for (int j = 0; j < x.c; ++j) m(j, i) = x(i, j);
  return m;
}

inline Mat kron(const Mat& x, const Mat& y) {
  check_same_field(x, y);
  Mat m(x.F, x.r * y.r, x.c * y.c);
  for (int i = 0; i < x.r; ++i)
    for (int j = 0; j < x.c; ++j)
      for (int k = 0; k < y.r; ++k)
        for (int l = 0; l < y.c; ++l) m(i * y.r + k, j * y.c + l) = x.F->mul(x(i, j), y(k, l));
  return m;
}

// entrywise x -> x^q
inline Mat twist(const Mat& x, int q) {
  Mat m = x;
  for (auto& v : m.a) v = x.F->pow(v, std::uint64_t(q));
  return m;
}

inline Mat block(const Mat& x, int r0, int c0, int rows, int cols) {
  Mat m(x.F, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = x(r0 + i, c0 + j);
  return m;
}

inline Mat columns(const Mat& x, const std::vector<int>& cols) {
  Mat m(x.F, x.r, int(cols.size()));
  for (int i = 0; i < x.r; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m(i, int(j)) = x(i, cols[j]);
  return m;
}

inline Mat hcat(const Mat& x, const Mat& y) {
  if (x.r != y.r) throw ValidationError("hcat row mismatch");
  Mat m(x.F ? x.F : y.F, x.r, x.c + y.c);
  for (int i = 0; i < x.r; ++i) {
    for (int j = 0; j < x.c; ++j) m(i, j) = x(i, j);
    for (int j = 0; j < y.c; ++j) m(i, x.c + j) = y(i, j);
  }
  return m;
}

inline Mat vcat(const Mat& x, const Mat& y) {
  if (x.c != y.c) throw ValidationError("vcat column mismatch");
  Mat m(x.F ? x.F : y.F, x.r + y.r, x.c);
  for (int i = 0; i < x.r; ++i)
    for (int j = 0; j < x.c; ++j) m(i, j) = x(i, j);
  for (int i = 0; i < y.r; ++i)
    for (int j = 0; j < x.c; ++j) m(x.r + i, j) = y(i, j);
  return m;
}

inline Mat change_field(const Mat& x, const FieldPtr& big, const std::vector<int>& emb) {
  Mat m(big, x.r, x.c);
  for (std::size_t i = 0; i < x.a.size(); ++i) m.a[i] = emb[x.a[i]];
  return m;
}

// reduced row echelon form in place; returns pivot columns
inline std::vector<int> rref(Mat& m) {
  const Field& F = *m.F;
  std::vector<int> piv;
  int row = 0;
  for (int col = 0; col < m.c && row < m.r; ++col) {
    int sel = -1;
    for (int i = row; i < m.r; ++i)
      if (m(i, col)) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != row)
      for (int j = 0; j < m.c; ++j) std::swap(m(sel, j), m(row, j));
    int iv = F.inv(m(row, col));
    for (int j = 0; j < m.c; ++j) m(row, j) = F.mul(iv, m(row, j));
    for (int i = 0; i < m.r; ++i) {
      if (i == row || !m(i, col)) continue;
      int f = m(i, col);
      for (int j = 0; j < m.c; ++j) m(i, j) = F.sub(m(i, j), F.mul(f, m(row, j)));
    }
    piv.push_back(col);
    ++row;
  }
  return piv;
}

inline int rank(Mat m) { return int(rref(m).size()); }

inline bool is_invertible(const Mat& m) { return m.r == m.c && rank(m) == m.r; }

inline int det(Mat m) {
  if (m.r != m.c) throw ValidationError("det of a non-square matrix");
  const Field& F = *m.F;
  int d = 1;
  for (int col = 0; col < m.c; ++col) {
    int sel = -1;
    for (int i = col; i < m.r; ++i)
      if (m(i, col)) {
        sel = i;
        break;
      }
    if (sel < 0) return 0;
    if (sel != col) {
      for (int j = 0; j < m.c; ++j) std::swap(m(sel, j), m(col, j));
      d = F.neg(d);
    }
    d = F.mul(d, m(col, col));
    int iv = F.inv(m(col, col));
    for (int i = col + 1; i < m.r; ++i) {
      if (!m(i, col)) continue;
      int f = F.mul(m(i, col), iv);
      for (int j = col; j < m.c; ++j) m(i, j) = F.sub(m(i, j), F.mul(f, m(col, j)));
    }
  }
  return d;
}

inline Mat inverse(const Mat& m) {
  if (m.r != m.c) throw ValidationError("inverse of a non-square matrix");
  if (m.r == 0) return m;
  Mat aug = hcat(m, identity(m.F, m.r));
  auto piv = rref(aug);
  if (int(piv.size()) < m.r || piv[m.r - 1] != m.r - 1) throw ValidationError("singular matrix");
  return block(aug, 0, m.r, m.r, m.r);
}

// columns form a basis of the right kernel
inline Mat kernel(const Mat& m) {
  Mat e = m;
  auto piv = rref(e);
  std::vector<char> is_piv(m.c, 0);
  for (int c : piv) is_piv[c] = 1;
  std::vector<int> free;
  for (int j = 0; j < m.c; ++j)
    if (!is_piv[j]) free.push_back(j);
  Mat k(m.F, m.c, int(free.size()));
  for (std::size_t t = 0; t < free.size(); ++t) {
    k(free[t], int(t)) = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) k(piv[i], int(t)) = m.F->neg(e(int(i), free[t]));
  }
  return k;
}

// basis of the column space, as the pivot columns of the reduced column echelon form
inline Mat column_echelon(const Mat& m) {
  Mat t = transpose(m);
  auto piv = rref(t);
  return transpose(block(t, 0, 0, int(piv.size()), t.c));
}

inline int span_dim(const Mat& m) { return rank(m); }

// dim(span x ∩ span y)
inline int intersection_dim(const Mat& x, const Mat& y) {
  return rank(x) + rank(y) - rank(hcat(x, y));
}

inline bool contained_in(const Mat& x, const Mat& y) { return rank(hcat(y, x)) == rank(y); }

inline Mat permutation_matrix(const FieldPtr& F, const std::vector<int>& perm) {
  int n = int(perm.size());
  Mat m(F, n, n);
  for (int j = 0; j < n; ++j) m(perm[j], j) = 1;
  return m;
}

inline std::string to_string(const Mat& m) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < m.r; ++i) {
    if (i) os << ";";
    for (int j = 0; j < m.c; ++j) os << (j ? " " : "") << m(i, j);
  }
  os << "]";
  return os.str();
}

}  // namespace gzc
