#pragma once

// Exact matrices over Q(zeta_N) with linear-map semantics: a Mat with r rows
// and c cols is a map from a c-dimensional space to an r-dimensional one,
// column j being the image of the j-th basis vector.  Entries are stored per
// column as sorted (row, value) pairs with zeros dropped, so the structure
// tensors of large Hopf algebras stay cheap; all operations are exact.
//
// Kernel and image bases are returned in reduced column echelon form, which
// is a normal form: two subspaces are equal iff their bases compare equal.

#include "hopfkit/cyclotomic.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hopfkit {

struct SingularMatrixError : std::domain_error {
  SingularMatrixError() : std::domain_error("matrix is singular") {}
};

struct Entry {
  int row;
  Cyc val;
};

using SVec = std::vector<Entry>;  // sorted by row, all values nonzero

inline SVec svec_scaled(const SVec& v, const Cyc& s) {
  SVec out;
  if (s.is_zero()) return out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back({e.row, e.val * s});
  return out;
}

// a + s*b
inline SVec svec_axpy(const SVec& a, const Cyc& s, const SVec& b) {
  SVec out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].row < b[j].row)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].row < a[i].row) {
      Cyc v = s * b[j].val;
      if (!v.is_zero()) out.push_back({b[j].row, std::move(v)});
      ++j;
    } else {
      Cyc v = a[i].val + s * b[j].val;
      if (!v.is_zero()) out.push_back({a[i].row, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

inline Cyc svec_at(const SVec& v, int row) {
  auto it = std::lower_bound(v.begin(), v.end(), row,
                             [](const Entry& e, int r) { return e.row < r; });
  if (it != v.end() && it->row == row) return it->val;
  return Cyc();
}

class Mat {
 public:
  Mat() : rows_(0), cols_(0), order_(1) {}
  Mat(int rows, int cols, long order = 1)
      : rows_(rows), cols_(cols), order_(order), data_(static_cast<size_t>(cols)) {}

  static Mat identity(int n, long order = 1) {
    Mat m(n, n, order);
    for (int i = 0; i < n; ++i) m.data_[static_cast<size_t>(i)].push_back({i, Cyc::one(order)});
    return m;
  }
  static Mat zero(int rows, int cols, long order = 1) { return Mat(rows, cols, order); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  long order() const { return order_; }

  const SVec& col(int j) const { return data_[static_cast<size_t>(j)]; }
  SVec& col_mutable(int j) { return data_[static_cast<size_t>(j)]; }

  Cyc at(int r, int c) const { return svec_at(col(c), r).lifted_to(order_); }

  void set(int r, int c, Cyc v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("Mat::set");
    v = v.lifted_to(lcm_long(v.order(), order_));
    if (v.order() != order_) lift_in_place(v.order());
    auto& column = data_[static_cast<size_t>(c)];
    auto it = std::lower_bound(column.begin(), column.end(), r,
                               [](const Entry& e, int row) { return e.row < row; });
    if (it != column.end() && it->row == r) {
      if (v.is_zero())
        column.erase(it);
      else
        it->val = std::move(v);
    } else if (!v.is_zero()) {
      column.insert(it, {r, std::move(v)});
    }
  }

  void add_to(int r, int c, const Cyc& v) { set(r, c, at(r, c) + v); }

  Mat lifted_to(long m) const {
    if (m == order_) return *this;
    Mat out(rows_, cols_, m);
    for (int j = 0; j < cols_; ++j) {
      out.data_[static_cast<size_t>(j)].reserve(col(j).size());
      for (const auto& e : col(j)) out.data_[static_cast<size_t>(j)].push_back({e.row, e.val.lifted_to(m)});
    }
    return out;
  }

  size_t nnz() const {
    size_t n = 0;
    for (const auto& c : data_) n += c.size();
    return n;
  }
  bool is_zero_mat() const { return nnz() == 0; }

  friend Mat operator+(const Mat& a, const Mat& b) {
    auto [x, y] = aligned(a, b);
    require_same_shape(x, y);
    Mat out(x.rows_, x.cols_, x.order_);
    Cyc one = Cyc::one(x.order_);
    for (int j = 0; j < x.cols_; ++j) out.data_[static_cast<size_t>(j)] = svec_axpy(x.col(j), one, y.col(j));
    return out;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    auto [x, y] = aligned(a, b);
    require_same_shape(x, y);
    Mat out(x.rows_, x.cols_, x.order_);
    Cyc minus_one = -Cyc::one(x.order_);
    for (int j = 0; j < x.cols_; ++j) out.data_[static_cast<size_t>(j)] = svec_axpy(x.col(j), minus_one, y.col(j));
    return out;
  }
  friend Mat operator*(const Cyc& s, const Mat& a) {
    Mat out(a.rows_, a.cols_, lcm_long(s.order(), a.order_));
    Cyc sl = s.lifted_to(out.order_);
    for (int j = 0; j < a.cols_; ++j) {
      for (const auto& e : a.col(j)) {
        Cyc v = sl * e.val;
        if (!v.is_zero()) out.data_[static_cast<size_t>(j)].push_back({e.row, std::move(v)});
      }
    }
    return out;
  }

  // matrix product = composition of linear maps
  friend Mat operator*(const Mat& a, const Mat& b) {
    auto [x, y] = aligned(a, b);
    if (x.cols_ != y.rows_) throw std::invalid_argument("Mat::operator*: dimension mismatch");
    Mat out(x.rows_, y.cols_, x.order_);
    for (int j = 0; j < y.cols_; ++j) out.data_[static_cast<size_t>(j)] = x.apply(y.col(j));
    return out;
  }

  // image of a sparse vector under this map
  SVec apply(const SVec& v) const {
    SVec acc;
    for (const auto& e : v) acc = svec_axpy(acc, e.val, col(e.row));
    return acc;
  }

  // Kronecker product; (i,k)(j,l) -> row i*rows(B)+k, col j*cols(B)+l
  static Mat kron(const Mat& a, const Mat& b) {
    long ord = lcm_long(a.order_, b.order_);
    Mat out(a.rows_ * b.rows_, a.cols_ * b.cols_, ord);
    for (int j = 0; j < a.cols_; ++j) {
      for (int l = 0; l < b.cols_; ++l) {
        SVec& c = out.data_[static_cast<size_t>(j) * static_cast<size_t>(b.cols_) + static_cast<size_t>(l)];
        for (const auto& ea : a.col(j))
          for (const auto& eb : b.col(l)) {
            Cyc v = ea.val.lifted_to(ord) * eb.val.lifted_to(ord);
            if (!v.is_zero()) c.push_back({ea.row * b.rows_ + eb.row, std::move(v)});
          }
      }
    }
    return out;
  }

  // kron(A,B) * M without materializing kron(A,B)
  static Mat kron_apply(const Mat& a, const Mat& b, const Mat& m) {
    if (a.cols_ * b.cols_ != m.rows_) throw std::invalid_argument("Mat::kron_apply: dimension mismatch");
    long ord = lcm_long(lcm_long(a.order_, b.order_), m.order_);
    Mat out(a.rows_ * b.rows_, m.cols_, ord);
    for (int j = 0; j < m.cols_; ++j) {
      SVec acc;
      for (const auto& e : m.col(j)) {
        int ja = e.row / b.cols_;
        int jb = e.row % b.cols_;
        SVec term;
        for (const auto& ea : a.col(ja))
          for (const auto& eb : b.col(jb)) {
            Cyc v = ea.val.lifted_to(ord) * eb.val.lifted_to(ord);
            if (!v.is_zero()) term.push_back({ea.row * b.rows_ + eb.row, std::move(v)});
          }
        std::sort(term.begin(), term.end(), [](const Entry& x, const Entry& y) { return x.row < y.row; });
        acc = svec_axpy(acc, e.val.lifted_to(ord), term);
      }
      out.data_[static_cast<size_t>(j)] = std::move(acc);
    }
    return out;
  }

  Mat transpose() const {
    Mat out(cols_, rows_, order_);
    for (int j = 0; j < cols_; ++j)
      for (const auto& e : col(j)) out.data_[static_cast<size_t>(e.row)].push_back({j, e.val});
    for (auto& c : out.data_)
      std::sort(c.begin(), c.end(), [](const Entry& x, const Entry& y) { return x.row < y.row; });
    return out;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    auto [x, y] = aligned(a, b);
    for (int j = 0; j < x.cols_; ++j) {
      const SVec& u = x.col(j);
      const SVec& v = y.col(j);
      if (u.size() != v.size()) return false;
      for (size_t i = 0; i < u.size(); ++i)
        if (u[i].row != v[i].row || u[i].val != v[i].val) return false;
    }
    return true;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  // -- elimination (definitions follow the Echelon struct below) -------------

  struct Echelon;
  Echelon column_echelon_with_transform() const;
  Mat image() const;
  Mat kernel() const;
  Mat inverse() const;
  std::optional<Mat> solve(const Mat& rhs) const;

  int rank() const {
    // same elimination without the transform bookkeeping
    Mat e = *this;
    int cur = 0;
    for (int row = 0; row < rows_ && cur < cols_; ++row) {
      int pivot = -1;
      for (int j = cur; j < cols_; ++j)
        if (!svec_at(e.col(j), row).is_zero()) {
          pivot = j;
          break;
        }
      if (pivot < 0) continue;
      std::swap(e.data_[static_cast<size_t>(cur)], e.data_[static_cast<size_t>(pivot)]);
      Cyc scale = svec_at(e.col(cur), row).lifted_to(e.order_).inv();
      if (!scale.is_one()) e.data_[static_cast<size_t>(cur)] = svec_scaled(e.col(cur), scale);
      for (int j = cur + 1; j < cols_; ++j) {
        Cyc v = svec_at(e.col(j), row);
        if (v.is_zero()) continue;
        e.data_[static_cast<size_t>(j)] = svec_axpy(e.col(j), -v.lifted_to(e.order_), e.col(cur));
      }
      ++cur;
    }
    return cur;
  }

  // horizontal concatenation [a | b]
  static Mat hcat(const Mat& a, const Mat& b) {
    auto [x, y] = aligned(a, b);
    if (x.rows_ != y.rows_) throw std::invalid_argument("Mat::hcat: row mismatch");
    Mat out(x.rows_, x.cols_ + y.cols_, x.order_);
    for (int j = 0; j < x.cols_; ++j) out.data_[static_cast<size_t>(j)] = x.col(j);
    for (int j = 0; j < y.cols_; ++j) out.data_[static_cast<size_t>(x.cols_ + j)] = y.col(j);
    return out;
  }

 private:
  int rows_, cols_;
  long order_;
  std::vector<SVec> data_;

  static void require_same_shape(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("Mat: shape mismatch");
  }

  static std::pair<Mat, Mat> aligned(const Mat& a, const Mat& b) {
    if (a.order_ == b.order_) return {a, b};
    long m = lcm_long(a.order_, b.order_);
    return {a.lifted_to(m), b.lifted_to(m)};
  }

  void lift_in_place(long m) {
    if (m == order_) return;
    *this = lifted_to(m);
  }
};

struct Mat::Echelon {
  Mat e;                        // a * t == e, with e in reduced column echelon form
  Mat t;                        // invertible record of the column operations
  std::vector<int> pivot_rows;  // pivot row of echelon column i
  int rank = 0;
};

inline Mat::Echelon Mat::column_echelon_with_transform() const {
  Echelon r;
  r.e = *this;
  r.t = identity(cols_, order_);
  int cur = 0;
  for (int row = 0; row < rows_ && cur < cols_; ++row) {
    int pivot = -1;
    for (int j = cur; j < cols_; ++j) {
      if (!svec_at(r.e.col(j), row).is_zero()) {
        pivot = j;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(r.e.data_[static_cast<size_t>(cur)], r.e.data_[static_cast<size_t>(pivot)]);
    std::swap(r.t.data_[static_cast<size_t>(cur)], r.t.data_[static_cast<size_t>(pivot)]);
    Cyc lead = svec_at(r.e.col(cur), row).lifted_to(r.e.order_);
    Cyc scale = lead.inv();
    if (!scale.is_one()) {
      r.e.data_[static_cast<size_t>(cur)] = svec_scaled(r.e.col(cur), scale);
      r.t.data_[static_cast<size_t>(cur)] = svec_scaled(r.t.col(cur), scale);
    }
    for (int j = 0; j < cols_; ++j) {
      if (j == cur) continue;
      Cyc v = svec_at(r.e.col(j), row);
      if (v.is_zero()) continue;
      Cyc coeff = -v.lifted_to(r.e.order_);
      r.e.data_[static_cast<size_t>(j)] = svec_axpy(r.e.col(j), coeff, r.e.col(cur));
      r.t.data_[static_cast<size_t>(j)] = svec_axpy(r.t.col(j), coeff, r.t.col(cur));
    }
    r.pivot_rows.push_back(row);
    ++cur;
  }
  r.rank = cur;
  return r;
}

// canonical basis of the column span
inline Mat Mat::image() const {
  Echelon ech = column_echelon_with_transform();
  Mat out(rows_, ech.rank, order_);
  for (int j = 0; j < ech.rank; ++j) out.data_[static_cast<size_t>(j)] = ech.e.col(j);
  return out;
}

// canonical basis of the null space
inline Mat Mat::kernel() const {
  Echelon ech = column_echelon_with_transform();
  Mat raw(cols_, cols_ - ech.rank, order_);
  for (int j = ech.rank; j < cols_; ++j)
    raw.data_[static_cast<size_t>(j - ech.rank)] = ech.t.col(j);
  Mat canon = raw.image();
  if (canon.cols() != cols_ - ech.rank) throw std::logic_error("Mat::kernel: rank-nullity violated");
  return canon;
}

inline Mat Mat::inverse() const {
  if (rows_ != cols_) throw SingularMatrixError();
  Echelon ech = column_echelon_with_transform();
  if (ech.rank != cols_) throw SingularMatrixError();
  return ech.t;
}

// one solution X of this * X = rhs, or nullopt if inconsistent
inline std::optional<Mat> Mat::solve(const Mat& rhs) const {
  auto [x, y] = aligned(*this, rhs);
  if (x.rows_ != y.rows_) throw std::invalid_argument("Mat::solve: dimension mismatch");
  Echelon ech = x.column_echelon_with_transform();
  Mat out(x.cols_, y.cols_, x.order_);
  for (int j = 0; j < y.cols_; ++j) {
    SVec coords;  // coefficients on the echelon columns
    for (int c = 0; c < ech.rank; ++c) {
      Cyc v = svec_at(y.col(j), ech.pivot_rows[static_cast<size_t>(c)]);
      if (!v.is_zero()) coords.push_back({c, v.lifted_to(x.order_)});
    }
    SVec image = ech.e.apply(coords);
    SVec diff = svec_axpy(image, -Cyc::one(x.order_), y.col(j));
    if (!diff.empty()) return std::nullopt;
    out.data_[static_cast<size_t>(j)] = ech.t.apply(coords);
  }
  return out;
}

// swap map V (x) W -> W (x) V in the fixed Kronecker index convention
inline Mat swap_map(int dim_v, int dim_w, long order = 1) {
  Mat s(dim_w * dim_v, dim_v * dim_w, order);
  for (int i = 0; i < dim_v; ++i)
    for (int k = 0; k < dim_w; ++k) s.set(k * dim_v + i, i * dim_w + k, Cyc::one(order));
  return s;
}

}  // namespace hopfkit
