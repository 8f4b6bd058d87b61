#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "toricsplit/error.hpp"
#include "toricsplit/matrix.hpp"

namespace toricsplit {

/// Integral symmetric bilinear form given by its Gram matrix.
class IntSymForm {
 public:
  IntSymForm() = default;
  explicit IntSymForm(IntMatrix gram, std::vector<std::string> labels = {})
      : gram_(std::move(gram)), labels_(std::move(labels)) {
    require(gram_.is_symmetric(), ErrorKind::Input, "Gram matrix is not symmetric");
    require(labels_.empty() || labels_.size() == gram_.rows(), ErrorKind::Input,
            "label count does not match the Gram matrix");
  }
  IntSymForm(std::initializer_list<std::initializer_list<Integer>> init) : IntSymForm(IntMatrix(init)) {}

  const IntMatrix& gram() const noexcept { return gram_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t dimension() const noexcept { return gram_.rows(); }
  std::size_t rank() const { return toricsplit::rank(gram_); }
  const Integer& operator()(std::size_t i, std::size_t j) const { return gram_(i, j); }

  Integer pair(const IntVector& u, const IntVector& v) const { return bilinear(gram_, u, v); }
  Integer norm(const IntVector& v) const { return bilinear(gram_, v, v); }

  /// Gram matrix of the rows of `basis`.
  IntSymForm restrict_to(const IntMatrix& basis) const { return IntSymForm(congruence(basis, gram_)); }

  friend bool operator==(const IntSymForm& a, const IntSymForm& b) { return a.gram_ == b.gram_; }

 private:
  IntMatrix gram_;
  std::vector<std::string> labels_;
};

inline IntSymForm direct_sum(const IntSymForm& a, const IntSymForm& b) {
  const std::size_t n = a.dimension(), m = b.dimension();
  IntMatrix g(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = a(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = b(i, j);
  return IntSymForm(std::move(g));
}

inline IntSymForm hyperbolic_plane() { return IntSymForm{{0, 1}, {1, 0}}; }

inline IntSymForm diagonal_form(const std::vector<long>& entries) {
  IntMatrix g(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) g(i, i) = entries[i];
  return IntSymForm(std::move(g));
}

/// Gram matrix of E8 in the Bourbaki simple-root labelling.
inline IntSymForm e8_form() {
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = 2;
  const std::pair<std::size_t, std::size_t> edges[] = {{0, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}};
  for (auto [a, b] : edges) g(a, b) = g(b, a) = -1;
  return IntSymForm(std::move(g));
}

/// Rows are the generators, in the parent's coordinates.
struct Sublattice {
  IntMatrix generators;
  bool saturated = false;

  std::size_t rank() const noexcept { return generators.rows(); }
  bool empty() const noexcept { return generators.rows() == 0; }
};

inline Sublattice make_sublattice(IntMatrix generators) {
  require(toricsplit::rank(generators) == generators.rows(), ErrorKind::Hypothesis,
          "sublattice generators are linearly dependent");
  const bool sat = is_saturated(generators);
  return Sublattice{std::move(generators), sat};
}

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;

  int value() const noexcept { return positive - negative; }
  bool definite() const noexcept { return zero == 0 && (positive == 0 || negative == 0); }
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Inertia by exact congruence diagonalisation over Q. Pivots on the smallest
/// active index with a nonzero diagonal; when every active diagonal vanishes
/// the first nonzero off-diagonal (i, j) is folded in via e_i <- e_i + e_j.
inline Signature signature(const IntSymForm& form) {
  RatMatrix a = to_rational(form.gram());
  const std::size_t n = a.rows();
  std::vector<bool> active(n, true);
  std::size_t remaining = n;
  Signature sig;
  while (remaining > 0) {
    std::size_t pivot = n;
    for (std::size_t i = 0; i < n && pivot == n; ++i)
      if (active[i] && a(i, i) != 0) pivot = i;
    if (pivot == n) {
      std::size_t pi = n, pj = n;
      for (std::size_t i = 0; i < n && pi == n; ++i) {
        if (!active[i]) continue;
        for (std::size_t j = i + 1; j < n; ++j)
          if (active[j] && a(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      }
      if (pi == n) break;
      for (std::size_t k = 0; k < n; ++k) a(pi, k) += a(pj, k);
      for (std::size_t k = 0; k < n; ++k) a(k, pi) += a(k, pj);
      pivot = pi;
    }
    const Rational d = a(pivot, pivot);
    (d > 0 ? sig.positive : sig.negative) += 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || i == pivot || a(i, pivot) == 0) continue;
      const Rational f = a(i, pivot) / d;
      for (std::size_t j = 0; j < n; ++j)
        if (active[j]) a(i, j) -= f * a(pivot, j);
    }
    for (std::size_t i = 0; i < n; ++i)
      if (active[i] && i != pivot) a(pivot, i) = a(i, pivot) = 0;
    active[pivot] = false;
    --remaining;
  }
  sig.zero = static_cast<int>(remaining);
  return sig;
}

inline bool is_even(const IntSymForm& form) {
  for (std::size_t i = 0; i < form.dimension(); ++i)
    if (form(i, i) % 2 != 0) return false;
  return true;
}

inline Integer determinant(const IntSymForm& form) { return determinant(form.gram()); }

inline bool is_unimodular(const IntSymForm& form) { return abs(determinant(form.gram())) == 1; }

/// E = { v : <v, f> = 0 for all f in F }, as a saturated basis.
inline Sublattice orthogonal_complement(const IntSymForm& form, const Sublattice& sub) {
  if (sub.empty()) return Sublattice{IntMatrix::identity(form.dimension()), true};
  require(sub.generators.cols() == form.dimension(), ErrorKind::Input,
          "sublattice generators have the wrong length");
  require(toricsplit::rank(sub.generators) == sub.rank(), ErrorKind::Hypothesis,
          "sublattice generators are linearly dependent");
  return Sublattice{integer_kernel(sub.generators * form.gram()), true};
}

// ---------------------------------------------------------------------------
// Isotropic vectors and hyperbolic planes

enum class SearchStatus { Found, Definite, NotFound, SearchExhausted };

struct IsotropicResult {
  SearchStatus status = SearchStatus::NotFound;
  IntVector vector;  // primitive, first nonzero entry positive; empty unless Found
};

struct IsotropicSearchOptions {
  int max_radius = 12;
  /// Largest support (number of nonzero coordinates) enumerated.
  std::size_t max_support = 5;
  bool size_reduce = true;
};

namespace detail {

/// Greedy size reduction e_i <- e_i +- e_j while it shrinks (sum |G_ii|, sum |G_ij|)
/// lexicographically. Returns the unimodular basis change T (rows); the
/// reduced Gram is T G T^T.
inline IntMatrix size_reduce(const IntMatrix& gram) {
  const std::size_t n = gram.rows();
  IntMatrix g = gram;
  IntMatrix t = IntMatrix::identity(n);
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || g(i, j) == 0) continue;
        for (int s : {-1, 1}) {
          const Integer new_diag = g(i, i) + 2 * s * g(i, j) + g(j, j);
          Integer delta_diag = abs(new_diag) - abs(g(i, i));
          Integer delta_off = 0;
          for (std::size_t k = 0; k < n; ++k) {
            if (k == i) continue;
            delta_off += abs(g(k, i) + s * g(k, j)) - abs(g(k, i));
          }
          if (delta_diag < 0 || (delta_diag == 0 && delta_off < 0)) {
            for (std::size_t k = 0; k < n; ++k) t(i, k) += s * t(j, k);
            for (std::size_t k = 0; k < n; ++k)
              if (k != i) g(i, k) = g(k, i) = g(k, i) + s * g(k, j);
            g(i, i) = new_diag;
            improved = true;
            break;
          }
        }
      }
  }
  return t;
}

inline void normalize_sign(IntVector& v) {
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    return;
  }
}

/// Coefficient values in enumeration order: 1, -1, 2, -2, ...
inline std::vector<std::int64_t> coefficient_values(int radius) {
  std::vector<std::int64_t> out;
  for (int r = 1; r <= radius; ++r) {
    out.push_back(r);
    out.push_back(-r);
  }
  return out;
}

/// Visits every vector supported on exactly `support` coordinates with
/// max |c_i| == radius; stops early when `visit` returns true.
template <typename Visit>
bool enumerate_shell(std::size_t n, std::size_t support, int radius, Visit&& visit) {
  if (support == 0 || support > n) return false;
  const auto values = coefficient_values(radius);
  std::vector<std::size_t> idx(support);
  for (std::size_t i = 0; i < support; ++i) idx[i] = i;
  std::vector<std::size_t> digit(support, 0);
  std::vector<std::int64_t> coef(n, 0);
  while (true) {
    std::fill(digit.begin(), digit.end(), 0);
    while (true) {
      bool on_shell = false;
      for (std::size_t s = 0; s < support; ++s) {
        coef[idx[s]] = values[digit[s]];
        if (values[digit[s]] == radius || values[digit[s]] == -radius) on_shell = true;
      }
      if (on_shell && visit(coef)) return true;
      std::size_t pos = support;
      while (pos > 0 && digit[pos - 1] + 1 == values.size()) digit[--pos] = 0;
      if (pos == 0) break;
      ++digit[pos - 1];
    }
    for (auto i : idx) coef[i] = 0;
    std::size_t pos = support;
    while (pos > 0 && idx[pos - 1] == n - support + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < support; ++i) idx[i] = idx[i - 1] + 1;
  }
  return false;
}

/// Box search for a primitive isotropic vector accepted by `accept`, in the
/// coordinates of a size-reduced basis. Vectors are returned in the input
/// coordinates.
template <typename Accept>
IsotropicResult isotropic_search(const IntSymForm& form, const IsotropicSearchOptions& opts, Accept&& accept) {
  const std::size_t n = form.dimension();
  IsotropicResult result;
  if (n == 0) return result;
  if (signature(form).definite()) {
    result.status = SearchStatus::Definite;
    return result;
  }
  const IntMatrix t = opts.size_reduce ? size_reduce(form.gram()) : IntMatrix::identity(n);
  const IntMatrix reduced = congruence(t, form.gram());

  // Fast path on machine integers when the reduced entries are small.
  bool small = true;
  std::vector<std::int64_t> g64(n * n);
  for (std::size_t i = 0; i < n && small; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (abs(reduced(i, j)) > Integer(1) << 40) {
        small = false;
        break;
      }
      g64[i * n + j] = reduced(i, j).convert_to<std::int64_t>();
    }

  std::vector<std::size_t> support_idx;
  auto visit = [&](const std::vector<std::int64_t>& c) {
    support_idx.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (c[i] != 0) support_idx.push_back(i);
    if (small) {
      __int128 q = 0;
      for (auto i : support_idx)
        for (auto j : support_idx) q += static_cast<__int128>(c[i]) * c[j] * g64[i * n + j];
      if (q != 0) return false;
    } else {
      Integer q = 0;
      for (auto i : support_idx)
        for (auto j : support_idx) q += Integer(c[i]) * c[j] * reduced(i, j);
      if (q != 0) return false;
    }
    std::int64_t g = 0;
    for (auto i : support_idx) g = gcd64(g, c[i]);
    if (g != 1) return false;
    IntVector coords(n, Integer(0));
    for (auto i : support_idx) coords[i] = c[i];
    IntVector v = row_times(coords, t);
    normalize_sign(v);
    if (!accept(v)) return false;
    result.vector = std::move(v);
    return true;
  };

  const std::size_t max_support = std::min(opts.max_support, n);
  for (int radius = 1; radius <= opts.max_radius; ++radius)
    for (std::size_t support = 1; support <= max_support; ++support)
      if (enumerate_shell(n, support, radius, visit)) {
        result.status = SearchStatus::Found;
        return result;
      }
  // Indefinite forms of rank >= 5 are isotropic over Q, so running out is a search failure.
  result.status = form.rank() >= 5 && n >= 5 ? SearchStatus::SearchExhausted : SearchStatus::NotFound;
  return result;
}

}  // namespace detail

inline IsotropicResult find_isotropic(const IntSymForm& form, const IsotropicSearchOptions& opts = {}) {
  return detail::isotropic_search(form, opts, [](const IntVector&) { return true; });
}

struct HyperbolicPair {
  IntVector x;
  IntVector y;
  int c = 0;  // <y, y>
};

/// Completes a primitive isotropic x to a pair with <x,y> = 1 and <y,y> in {0, 1}.
inline HyperbolicPair hyperbolic_pair(const IntSymForm& form, const IntVector& x) {
  require(x.size() == form.dimension(), ErrorKind::Input, "vector length does not match the form");
  require(form.norm(x) == 0, ErrorKind::Hypothesis, "vector is not isotropic");
  require(content(x) == 1, ErrorKind::Hypothesis, "vector is not primitive");
  const IntVector w = times_column(form.gram(), x);
  IntVector y = solve_unit_pairing(w);
  require(!y.empty(), ErrorKind::Hypothesis,
          "no y with <x,y> = 1 (form is not unimodular along x)");
  const Integer shift = floor_div(form.norm(y), 2);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= shift * x[i];
  const Integer c = form.norm(y);
  require(c == 0 || c == 1, ErrorKind::Internal, "hyperbolic pair normalisation failed");
  return HyperbolicPair{x, std::move(y), c == 1 ? 1 : 0};
}

// ---------------------------------------------------------------------------
// Hyperbolic splitting

enum class Terminal { Empty, Definite, SmallRank, Anisotropic };

inline const char* to_string(Terminal t) {
  switch (t) {
    case Terminal::Empty: return "empty";
    case Terminal::Definite: return "definite";
    case Terminal::SmallRank: return "small-rank";
    case Terminal::Anisotropic: return "anisotropic";
  }
  return "?";
}

struct SplitResult {
  std::vector<HyperbolicPair> planes;  // parent coordinates
  IntSymForm residual;                 // Gram of A
  IntMatrix residual_basis;            // rows, parent coordinates
  IntMatrix complement_basis;          // E = F^perp, rows, parent coordinates
  /// Rows x_1, y_1, ..., x_s, y_s, A-basis in E coordinates; |det| = 1 and
  /// T G_E T^T is block diagonal.
  IntMatrix transform;
  IntSymForm complement_form;          // G_E
  /// Rank hypothesis rank H >= max(4 rank F, 2 rank F + 5) at entry.
  bool rank_hypothesis = false;
  /// Residual-rank threshold max(3 rank F, rank F + 5) below which the
  /// inductive argument stops.
  std::size_t stop_rank = 0;
  /// Planes split while the residual rank was still >= stop_rank.
  std::size_t threshold_planes = 0;
  Terminal threshold_terminal = Terminal::Empty;
  Terminal terminal = Terminal::Empty;
};

struct SplitOptions {
  IsotropicSearchOptions search;
};

/// Orthogonal splitting E = A + (+) planes(0 1; 1 c_i) of E = F^perp inside
/// the unimodular lattice H. Keeps splitting while isotropic vectors turn up,
/// also recording where the rank-threshold argument would stop.
inline SplitResult split_decomposition(const IntSymForm& h, const Sublattice& f = {},
                                       const SplitOptions& opts = {}) {
  require(is_unimodular(h), ErrorKind::Hypothesis, "form is not unimodular");
  const std::size_t rank_f = f.rank();
  if (!f.empty()) {
    require(f.generators.cols() == h.dimension(), ErrorKind::Input,
            "sublattice generators have the wrong length");
    require(toricsplit::rank(f.generators) == rank_f, ErrorKind::Hypothesis,
            "sublattice generators are linearly dependent");
    require(toricsplit::rank(congruence(f.generators, h.gram())) == rank_f, ErrorKind::Hypothesis,
            "F -> Hom(F, Z) is not injective");
    require(is_saturated(f.generators), ErrorKind::Hypothesis, "H/F has torsion");
  }

  SplitResult out;
  out.rank_hypothesis = h.dimension() >= std::max(4 * rank_f, 2 * rank_f + 5);
  out.stop_rank = std::max(3 * rank_f, rank_f + 5);
  out.complement_basis = orthogonal_complement(h, f).generators;
  out.complement_form = h.restrict_to(out.complement_basis);
  const IntSymForm& e = out.complement_form;

  IntMatrix residual = IntMatrix::identity(e.dimension());  // rows in E coordinates
  std::vector<HyperbolicPair> planes_e;
  bool threshold_done = false;
  auto record_threshold = [&](Terminal t) {
    if (threshold_done) return;
    out.threshold_planes = planes_e.size();
    out.threshold_terminal = t;
    threshold_done = true;
  };

  while (true) {
    const std::size_t r = residual.rows();
    if (r == 0) {
      record_threshold(Terminal::Empty);
      out.terminal = Terminal::Empty;
      break;
    }
    const IntSymForm gr = e.restrict_to(residual);
    if (r < out.stop_rank) record_threshold(Terminal::SmallRank);
    if (signature(gr).definite()) {
      record_threshold(Terminal::Definite);
      out.terminal = Terminal::Definite;
      break;
    }
    auto found = detail::isotropic_search(gr, opts.search, [&](const IntVector& v) {
      return content(times_column(gr.gram(), v)) == 1;
    });
    if (found.status == SearchStatus::SearchExhausted)
      fail(ErrorKind::SearchExhausted, "isotropic search exhausted on an indefinite residual of rank " +
                                           std::to_string(r));
    if (found.status != SearchStatus::Found) {
      record_threshold(Terminal::Anisotropic);
      out.terminal = Terminal::Anisotropic;
      break;
    }
    const HyperbolicPair local = hyperbolic_pair(gr, found.vector);
    planes_e.push_back({row_times(local.x, residual), row_times(local.y, residual), local.c});

    // Complement of the plane inside the residual.
    IntMatrix constraints(2, r);
    const IntVector gx = times_column(gr.gram(), local.x);
    const IntVector gy = times_column(gr.gram(), local.y);
    for (std::size_t j = 0; j < r; ++j) {
      constraints(0, j) = gx[j];
      constraints(1, j) = gy[j];
    }
    residual = integer_kernel(constraints) * residual;
  }

  // Reassembly: T G_E T^T must be the block diagonal planes (+) A.
  const std::size_t n = e.dimension();
  out.transform = IntMatrix(n, n);
  std::size_t row = 0;
  for (const auto& p : planes_e) {
    out.transform.set_row(row++, p.x);
    out.transform.set_row(row++, p.y);
  }
  for (std::size_t i = 0; i < residual.rows(); ++i) out.transform.set_row(row++, residual.row(i));
  require(row == n, ErrorKind::Internal, "split transform has the wrong size");
  require(abs(determinant(out.transform)) == 1, ErrorKind::Internal, "split transform is not unimodular");
  const IntMatrix blocks = congruence(out.transform, e.gram());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t plane_rows = 2 * planes_e.size();
      Integer expected = blocks(i, j);
      if (i < plane_rows || j < plane_rows) {
        if (i / 2 != j / 2 || i >= plane_rows || j >= plane_rows) {
          expected = 0;
        } else if (i != j) {
          expected = 1;
        } else {
          expected = i % 2 == 0 ? 0 : planes_e[i / 2].c;
        }
      }
      require(blocks(i, j) == expected, ErrorKind::Internal, "split reassembly check failed");
    }

  out.residual = e.restrict_to(residual);
  out.residual_basis = residual * out.complement_basis;
  for (const auto& p : planes_e)
    out.planes.push_back({row_times(p.x, out.complement_basis), row_times(p.y, out.complement_basis), p.c});
  return out;
}

// ---------------------------------------------------------------------------
// Text format: line 1 = row count r; then r lines of integers.

inline IntMatrix parse_matrix_text(const std::string& text, bool square) {
  std::istringstream in(text);
  long rows = -1;
  require(static_cast<bool>(in >> rows) && rows >= 0, ErrorKind::Input, "matrix file: bad row count");
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<Integer>> data;
  while (static_cast<long>(data.size()) < rows && std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<Integer> row;
    std::string tok;
    while (ls >> tok) {
      try {
        row.emplace_back(tok);
      } catch (const std::exception&) {
        fail(ErrorKind::Input, "matrix file: bad integer '" + tok + "'");
      }
    }
    if (row.empty()) continue;
    data.push_back(std::move(row));
  }
  require(static_cast<long>(data.size()) == rows, ErrorKind::Input, "matrix file: too few rows");
  std::string rest;
  require(!(in >> rest), ErrorKind::Input, "matrix file: trailing data");
  const std::size_t cols = data.empty() ? 0 : data[0].size();
  for (const auto& r : data) require(r.size() == cols, ErrorKind::Input, "matrix file: ragged rows");
  if (square) require(cols == data.size(), ErrorKind::Input, "matrix file: Gram matrix is not square");
  return IntMatrix::from_rows(data, cols);
}

inline IntSymForm parse_gram(const std::string& text) {
  IntMatrix g = parse_matrix_text(text, true);
  require(g.is_symmetric(), ErrorKind::Input, "matrix file: Gram matrix is not symmetric");
  return IntSymForm(std::move(g));
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::Input, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string format_matrix_text(const IntMatrix& m) {
  std::ostringstream out;
  out << m.rows() << '\n' << m;
  return out.str();
}

}  // namespace toricsplit
