#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "toricsplit/fan.hpp"
#include "toricsplit/matrix.hpp"

namespace toricsplit {

/// Exponent vector over the ring's free variables.
using Exponent = std::vector<int>;

namespace detail {

/// Graded reverse lexicographic order on equal-degree exponents: a > b iff the
/// last nonzero entry of a - b is negative.
inline bool grevlex_greater(const Exponent& a, const Exponent& b) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

inline void enumerate_monomials(std::size_t vars, int degree, std::size_t pos, Exponent& current,
                                std::vector<Exponent>& out) {
  if (pos + 1 == vars) {
    current[pos] = degree;
    out.push_back(current);
    return;
  }
  for (int e = degree; e >= 0; --e) {
    current[pos] = e;
    enumerate_monomials(vars, degree - e, pos + 1, current, out);
  }
  current[pos] = 0;
}

/// Homogeneous polynomial over the free variables.
using Polynomial = std::map<Exponent, Rational>;

inline Polynomial multiply_linear(const Polynomial& p, const IntVector& linear) {
  Polynomial out;
  for (const auto& [exp, coef] : p)
    for (std::size_t j = 0; j < linear.size(); ++j) {
      if (linear[j] == 0) continue;
      Exponent e = exp;
      ++e[j];
      out[e] += coef * Rational(linear[j]);
    }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

inline std::set<std::uint64_t> faces(const Fan& fan) {
  require(fan.num_rays() <= 64, ErrorKind::Input, "at most 64 rays are supported");
  std::set<std::uint64_t> out;
  for (const auto& cone : fan.max_cones) {
    const std::size_t k = cone.size();
    for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << k); ++sub) {
      std::uint64_t mask = 0;
      for (std::size_t b = 0; b < k; ++b)
        if (sub >> b & 1U) mask |= std::uint64_t{1} << cone[b];
      out.insert(mask);
    }
  }
  return out;
}

/// Minimal non-faces of the fan's simplicial complex, as sorted ray lists.
inline std::vector<Cone> minimal_nonfaces(const Fan& fan) {
  const auto face_set = faces(fan);
  const std::size_t n = fan.num_rays();
  std::vector<Cone> out;
  for (std::size_t size = 1; size <= static_cast<std::size_t>(fan.dim) + 1 && size <= n; ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      std::uint64_t mask = 0;
      for (auto i : idx) mask |= std::uint64_t{1} << i;
      if (!face_set.count(mask)) {
        bool minimal = true;
        for (auto i : idx)
          if (!face_set.count(mask & ~(std::uint64_t{1} << i))) {
            minimal = false;
            break;
          }
        if (minimal) out.emplace_back(idx.begin(), idx.end());
      }
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == n - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < size; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return out;
}

inline void require_smooth_complete(const Fan& fan) {
  const auto smooth = validate_smooth(fan);
  require(smooth.smooth, ErrorKind::NotSmooth, "fan is not smooth");
  for (const auto& [wall, cones] : wall_incidence(fan))
    require(cones.size() == 2, ErrorKind::NotComplete, "fan is not complete (unpaired wall)");
}


/// Standard monomials need not span H^{2k}(X; Z) (on F_2, x3^2 = 2 pt). Picks
/// monomials forming a Z-basis of the lattice spanned by all monomials,
/// trying the standard ones first, then the rest in grevlex order.
inline std::vector<std::size_t> integral_monomial_basis(const std::vector<std::vector<Rational>>& coords,
                                                        const std::vector<std::size_t>& standard) {
  const std::size_t n = coords.size(), r = standard.size();
  Integer denom = 1;
  for (const auto& v : coords)
    for (const auto& x : v) denom = lcm(denom, denominator(x));
  IntMatrix scaled(n, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) scaled(i, j) = numerator(coords[i][j] * Rational(denom));
  // Coordinates over a Z-basis of the lattice; rows of `local` span Z^r.
  const RatMatrix to_local = inverse(to_rational(lattice_basis(scaled)));
  IntMatrix local(n, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Rational x = 0;
      for (std::size_t k = 0; k < r; ++k) x += Rational(scaled(i, k)) * to_local(k, j);
      local(i, j) = to_integer(x, "lattice coordinate");
    }

  std::vector<std::size_t> order = standard;
  for (std::size_t i = 0; i < n; ++i)
    if (!std::binary_search(standard.begin(), standard.end(), i)) order.push_back(i);

  std::vector<std::size_t> chosen;
  std::size_t budget = 200000;
  std::function<bool(std::size_t)> extend = [&](std::size_t from) {
    if (chosen.size() == r) return true;
    for (std::size_t p = from; p + (r - chosen.size()) <= order.size(); ++p) {
      require(budget-- > 0, ErrorKind::Internal, "no integral monomial basis found");
      chosen.push_back(order[p]);
      IntMatrix sub(chosen.size(), r);
      for (std::size_t i = 0; i < chosen.size(); ++i)
        for (std::size_t j = 0; j < r; ++j) sub(i, j) = local(chosen[i], j);
      if (is_saturated(sub) && extend(p + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  require(extend(0), ErrorKind::Internal, "no integral monomial basis found");
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

/// Integer coordinates of each monomial over the monomials `basis`.
inline std::vector<IntVector> rebase_coordinates(const std::vector<std::vector<Rational>>& coords,
                                                 const std::vector<std::size_t>& basis) {
  const std::size_t r = basis.size();
  RatMatrix b(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) b(i, j) = coords[basis[i]][j];
  const RatMatrix inv = inverse(b);
  std::vector<IntVector> out;
  for (const auto& v : coords) {
    IntVector nf(r, Integer(0));
    for (std::size_t j = 0; j < r; ++j) {
      Rational x = 0;
      for (std::size_t k = 0; k < r; ++k) x += v[k] * inv(k, j);
      nf[j] = to_integer(x, "structure constant");
    }
    out.push_back(std::move(nf));
  }
  return out;
}

}  // namespace detail

/// Betti numbers b_0..b_{2 dim}; b_{2k} is the k-th entry of the h-vector.
inline std::vector<Integer> betti(const Fan& fan) {
  detail::require_smooth_complete(fan);
  const auto face_set = detail::faces(fan);
  const auto d = static_cast<unsigned>(fan.dim);
  std::vector<Integer> f(d + 1, Integer(0));  // f[i] = faces with i rays
  for (auto mask : face_set) f[static_cast<std::size_t>(__builtin_popcountll(mask))] += 1;
  std::vector<Integer> out(2 * d + 1, Integer(0));
  for (unsigned k = 0; k <= d; ++k) {
    Integer h = 0;
    for (unsigned i = 0; i <= k; ++i) {
      Integer term = f[i] * binomial(d - i, d - k);
      h += ((k - i) % 2 == 0) ? term : Integer(-term);
    }
    out[2 * k] = h;
  }
  return out;
}

class CohomologyClass;

/// H*(X, Z) = Z[x_rho] / (Stanley-Reisner + linear relations).
///
/// The rays of the first max cone are eliminated through the linear
/// relations (their matrix is unimodular), leaving one free variable per
/// remaining ray, in input order. Each graded piece is the quotient of the
/// free monomials by the degree-k part of the substituted Stanley-Reisner
/// ideal; the basis is the set of grevlex-standard monomials, read off a
/// reduced echelon form of the ideal's degree-k span.
class CohomologyRing : public std::enable_shared_from_this<CohomologyRing> {
 public:
  static std::shared_ptr<const CohomologyRing> build(const Fan& fan);

  const Fan& fan() const noexcept { return fan_; }
  int dim() const noexcept { return fan_.dim; }
  std::size_t num_vars() const noexcept { return free_rays_.size(); }
  /// Ray index carried by each free variable.
  const std::vector<std::size_t>& free_rays() const noexcept { return free_rays_; }
  /// x_rho as an integer linear form in the free variables.
  const IntVector& ray_form(std::size_t ray) const { return ray_forms_.at(ray); }

  std::size_t rank(int k) const { return graded_.at(static_cast<std::size_t>(k)).basis.size(); }
  std::vector<std::size_t> ranks() const {
    std::vector<std::size_t> out;
    for (int k = 0; k <= dim(); ++k) out.push_back(rank(k));
    return out;
  }

  /// Basis monomials of degree k (descending grevlex).
  std::vector<Exponent> basis(int k) const {
    const auto& g = graded_.at(static_cast<std::size_t>(k));
    std::vector<Exponent> out;
    for (auto idx : g.basis) out.push_back(g.monomials[idx]);
    return out;
  }

  std::string monomial_label(const Exponent& e) const {
    std::string out;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      if (!out.empty()) out += "*";
      out += "x" + std::to_string(free_rays_[j]);
      if (e[j] > 1) out += "^" + std::to_string(e[j]);
    }
    return out.empty() ? "1" : out;
  }

  /// Normal form (integer coordinates over basis(k)) of a degree-k monomial.
  const IntVector& normal_form(const Exponent& e) const {
    int k = 0;
    for (int x : e) k += x;
    require(k >= 0 && k <= dim(), ErrorKind::Internal, "monomial degree out of range");
    const auto& g = graded_[static_cast<std::size_t>(k)];
    return g.normal_forms[g.index.at(e)];
  }

  /// Coefficient of [pt] in the normal form of any max-cone monomial.
  const Integer& point_scale() const noexcept { return point_scale_; }

  CohomologyClass zero() const;
  CohomologyClass one() const;
  CohomologyClass ray_class(std::size_t ray) const;
  CohomologyClass divisor_class(const DivisorClass& alpha) const;
  /// Normal form of the product of the rays of a cone.
  CohomologyClass cone_monomial(const Cone& cone) const;
  CohomologyClass basis_class(int k, std::size_t i) const;

  /// Pairing matrix evaluate(m_i * m_j) between basis(k) and basis(dim - k).
  IntMatrix pairing_matrix(int k) const;

 private:
  struct Graded {
    std::vector<Exponent> monomials;
    std::map<Exponent, std::size_t> index;
    std::vector<std::size_t> basis;       // indices into monomials
    std::vector<IntVector> normal_forms;  // per monomial, over basis
  };

  CohomologyRing() = default;

  Fan fan_;
  std::vector<std::size_t> free_rays_;
  std::vector<IntVector> ray_forms_;
  std::vector<Graded> graded_;
  Integer point_scale_ = 1;
};

/// Element of H*(X) stored per complex degree as coordinates over the ring's
/// graded basis. Mixed-degree classes (Chern, L) live in the same type.
class CohomologyClass {
 public:
  CohomologyClass() = default;
  explicit CohomologyClass(std::shared_ptr<const CohomologyRing> ring) : ring_(std::move(ring)) {
    for (int k = 0; k <= ring_->dim(); ++k) parts_.emplace_back(ring_->rank(k), Rational(0));
  }

  const CohomologyRing& ring() const { return *ring_; }
  const std::shared_ptr<const CohomologyRing>& ring_ptr() const noexcept { return ring_; }

  const std::vector<Rational>& part(int k) const { return parts_.at(static_cast<std::size_t>(k)); }
  std::vector<Rational>& part(int k) { return parts_.at(static_cast<std::size_t>(k)); }

  bool is_zero() const {
    for (const auto& p : parts_)
      for (const auto& c : p)
        if (c != 0) return false;
    return true;
  }

  /// Degree-k component only.
  CohomologyClass component(int k) const {
    CohomologyClass out(ring_);
    out.part(k) = part(k);
    return out;
  }

  /// Integer coordinates of the degree-k component.
  IntVector integral_part(int k) const {
    IntVector out;
    for (const auto& c : part(k)) out.push_back(to_integer(c, "integral class"));
    return out;
  }

  CohomologyClass& operator+=(const CohomologyClass& other) {
    check_same_ring(other);
    for (std::size_t k = 0; k < parts_.size(); ++k)
      for (std::size_t i = 0; i < parts_[k].size(); ++i) parts_[k][i] += other.parts_[k][i];
    return *this;
  }
  CohomologyClass& operator-=(const CohomologyClass& other) {
    check_same_ring(other);
    for (std::size_t k = 0; k < parts_.size(); ++k)
      for (std::size_t i = 0; i < parts_[k].size(); ++i) parts_[k][i] -= other.parts_[k][i];
    return *this;
  }
  CohomologyClass& operator*=(const Rational& s) {
    for (auto& p : parts_)
      for (auto& c : p) c *= s;
    return *this;
  }

  friend CohomologyClass operator+(CohomologyClass a, const CohomologyClass& b) { return a += b; }
  friend CohomologyClass operator-(CohomologyClass a, const CohomologyClass& b) { return a -= b; }
  friend CohomologyClass operator*(const Rational& s, CohomologyClass a) { return a *= s; }

  /// Cup product, truncated above the top degree.
  friend CohomologyClass operator*(const CohomologyClass& a, const CohomologyClass& b) {
    a.check_same_ring(b);
    const CohomologyRing& ring = *a.ring_;
    CohomologyClass out(a.ring_);
    const int top = ring.dim();
    for (int i = 0; i <= top; ++i) {
      const auto basis_i = ring.basis(i);
      for (int j = 0; i + j <= top; ++j) {
        const auto basis_j = ring.basis(j);
        auto& target = out.part(i + j);
        for (std::size_t p = 0; p < basis_i.size(); ++p) {
          const Rational& ap = a.part(i)[p];
          if (ap == 0) continue;
          for (std::size_t q = 0; q < basis_j.size(); ++q) {
            const Rational& bq = b.part(j)[q];
            if (bq == 0) continue;
            Exponent e = basis_i[p];
            for (std::size_t v = 0; v < e.size(); ++v) e[v] += basis_j[q][v];
            const IntVector& nf = ring.normal_form(e);
            const Rational f = ap * bq;
            for (std::size_t r = 0; r < nf.size(); ++r)
              if (nf[r] != 0) target[r] += f * Rational(nf[r]);
          }
        }
      }
    }
    return out;
  }

  friend bool operator==(const CohomologyClass& a, const CohomologyClass& b) {
    return a.ring_ == b.ring_ && a.parts_ == b.parts_;
  }

  CohomologyClass pow(unsigned e) const {
    CohomologyClass out = ring_->one();
    for (unsigned i = 0; i < e; ++i) out = out * *this;
    return out;
  }

  /// <top-degree component, [X]>; lower-degree parts are ignored.
  Integer evaluate() const {
    const auto& top = part(ring_->dim());
    const Rational value = top.empty() ? Rational(0) : top[0] / Rational(ring_->point_scale());
    return to_integer(value, "evaluate");
  }

 private:
  void check_same_ring(const CohomologyClass& other) const {
    require(ring_ && ring_ == other.ring_, ErrorKind::Internal, "cohomology classes from different rings");
  }

  std::shared_ptr<const CohomologyRing> ring_;
  std::vector<std::vector<Rational>> parts_;
};

inline std::shared_ptr<const CohomologyRing> CohomologyRing::build(const Fan& fan) {
  detail::require_smooth_complete(fan);
  std::shared_ptr<CohomologyRing> ring(new CohomologyRing());
  ring->fan_ = fan;
  const auto dim = static_cast<std::size_t>(fan.dim);
  const Cone& first = fan.max_cones.front();

  for (std::size_t r = 0; r < fan.num_rays(); ++r)
    if (!std::binary_search(first.begin(), first.end(), r)) ring->free_rays_.push_back(r);
  const std::size_t m = ring->free_rays_.size();
  require(m > 0, ErrorKind::NotComplete, "fan has no rays outside its first cone");

  // Linear relations: U_first x_first + U_free x_free = 0.
  const IntMatrix u_first = detail::cone_matrix(fan, first);
  const IntMatrix u_free = detail::cone_matrix(fan, ring->free_rays_);
  const IntMatrix solved = unimodular_inverse(u_first) * u_free;
  ring->ray_forms_.assign(fan.num_rays(), IntVector(m, Integer(0)));
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t j = 0; j < m; ++j) ring->ray_forms_[first[k]][j] = -solved(k, j);
  for (std::size_t j = 0; j < m; ++j) ring->ray_forms_[ring->free_rays_[j]][j] = 1;

  // Stanley-Reisner generators rewritten in the free variables.
  std::vector<detail::Polynomial> generators;
  std::vector<int> generator_degree;
  for (const auto& nonface : detail::minimal_nonfaces(fan)) {
    detail::Polynomial p{{Exponent(m, 0), Rational(1)}};
    for (auto ray : nonface) p = detail::multiply_linear(p, ring->ray_forms_[ray]);
    generators.push_back(std::move(p));
    generator_degree.push_back(static_cast<int>(nonface.size()));
  }

  const auto expected = betti(fan);
  for (int k = 0; k <= fan.dim; ++k) {
    Graded g;
    Exponent scratch(m, 0);
    detail::enumerate_monomials(m, k, 0, scratch, g.monomials);
    std::sort(g.monomials.begin(), g.monomials.end(), detail::grevlex_greater);
    for (std::size_t i = 0; i < g.monomials.size(); ++i) g.index[g.monomials[i]] = i;
    const std::size_t cols = g.monomials.size();

    // Spanning set of the ideal in degree k: generator * monomial.
    std::vector<std::vector<Rational>> rows;
    for (std::size_t gi = 0; gi < generators.size(); ++gi) {
      const int rest = k - generator_degree[gi];
      if (rest < 0) continue;
      std::vector<Exponent> multipliers;
      Exponent s2(m, 0);
      detail::enumerate_monomials(m, rest, 0, s2, multipliers);
      for (const auto& mu : multipliers) {
        std::vector<Rational> row(cols, Rational(0));
        for (const auto& [exp, coef] : generators[gi]) {
          Exponent e = exp;
          for (std::size_t v = 0; v < m; ++v) e[v] += mu[v];
          row[g.index.at(e)] += coef;
        }
        rows.push_back(std::move(row));
      }
    }

    // Reduced row echelon form; columns ordered from the largest monomial.
    std::vector<std::size_t> pivot_of_row;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
      std::size_t p = r;
      while (p < rows.size() && rows[p][c] == 0) ++p;
      if (p == rows.size()) continue;
      std::swap(rows[r], rows[p]);
      const Rational pivot = rows[r][c];
      for (auto& x : rows[r]) x /= pivot;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == r || rows[i][c] == 0) continue;
        const Rational f = rows[i][c];
        for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
      }
      pivot_of_row.push_back(c);
      ++r;
    }
    std::vector<long> pivot_row(cols, -1);
    for (std::size_t i = 0; i < pivot_of_row.size(); ++i) pivot_row[pivot_of_row[i]] = static_cast<long>(i);
    std::vector<long> basis_pos(cols, -1);
    for (std::size_t c = 0; c < cols; ++c)
      if (pivot_row[c] < 0) {
        basis_pos[c] = static_cast<long>(g.basis.size());
        g.basis.push_back(c);
      }

    require(Integer(g.basis.size()) == expected[2 * static_cast<std::size_t>(k)], ErrorKind::Internal,
            "degree-" + std::to_string(k) + " rank " + std::to_string(g.basis.size()) +
                " disagrees with the h-vector");

    // Rational coordinates of every monomial over the standard monomials.
    std::vector<std::vector<Rational>> coords;
    bool integral = true;
    for (std::size_t c = 0; c < cols; ++c) {
      std::vector<Rational> nf(g.basis.size(), Rational(0));
      if (pivot_row[c] < 0) {
        nf[static_cast<std::size_t>(basis_pos[c])] = 1;
      } else {
        const auto& row = rows[static_cast<std::size_t>(pivot_row[c])];
        for (std::size_t b = 0; b < g.basis.size(); ++b) {
          nf[b] = -row[g.basis[b]];
          if (!is_integer(nf[b])) integral = false;
        }
      }
      coords.push_back(std::move(nf));
    }
    if (!integral) g.basis = detail::integral_monomial_basis(coords, g.basis);
    g.normal_forms = detail::rebase_coordinates(coords, g.basis);
    ring->graded_.push_back(std::move(g));
  }

  require(ring->rank(fan.dim) == 1, ErrorKind::Internal, "top degree does not have rank 1");
  // [pt] normalisation: every max-cone monomial must reduce to the same class.
  std::shared_ptr<const CohomologyRing> frozen = ring;
  const auto first_point = frozen->cone_monomial(first);
  ring->point_scale_ = to_integer(first_point.part(fan.dim)[0], "point class");
  require(ring->point_scale_ != 0, ErrorKind::Internal, "point class reduces to zero");
  for (const auto& cone : fan.max_cones)
    require(frozen->cone_monomial(cone).part(fan.dim)[0] == Rational(ring->point_scale_),
            ErrorKind::Internal, "max-cone monomials disagree on the point class");
  return frozen;
}

inline std::shared_ptr<const CohomologyRing> build_ring(const Fan& fan) {
  return CohomologyRing::build(fan);
}

inline CohomologyClass CohomologyRing::zero() const { return CohomologyClass(shared_from_this()); }

inline CohomologyClass CohomologyRing::one() const {
  CohomologyClass out(shared_from_this());
  out.part(0)[0] = 1;
  return out;
}

inline CohomologyClass CohomologyRing::ray_class(std::size_t ray) const {
  CohomologyClass out(shared_from_this());
  const IntVector& form = ray_form(ray);
  for (std::size_t j = 0; j < form.size(); ++j) {
    if (form[j] == 0) continue;
    Exponent e(num_vars(), 0);
    e[j] = 1;
    const IntVector& nf = normal_form(e);
    for (std::size_t b = 0; b < nf.size(); ++b) out.part(1)[b] += Rational(form[j] * nf[b]);
  }
  return out;
}

inline CohomologyClass CohomologyRing::divisor_class(const DivisorClass& alpha) const {
  require(alpha.coeffs.size() == fan_.num_rays(), ErrorKind::Input,
          "divisor class length does not match the number of rays");
  CohomologyClass out(shared_from_this());
  for (std::size_t r = 0; r < alpha.coeffs.size(); ++r)
    if (alpha.coeffs[r] != 0) out += Rational(alpha.coeffs[r]) * ray_class(r);
  return out;
}

inline CohomologyClass CohomologyRing::cone_monomial(const Cone& cone) const {
  CohomologyClass out = one();
  for (auto ray : cone) out = out * ray_class(ray);
  return out;
}

inline CohomologyClass CohomologyRing::basis_class(int k, std::size_t i) const {
  CohomologyClass out(shared_from_this());
  out.part(k).at(i) = 1;
  return out;
}

inline IntMatrix CohomologyRing::pairing_matrix(int k) const {
  const int other = dim() - k;
  IntMatrix out(rank(k), rank(other));
  for (std::size_t i = 0; i < rank(k); ++i)
    for (std::size_t j = 0; j < rank(other); ++j)
      out(i, j) = (basis_class(k, i) * basis_class(other, j)).evaluate();
  return out;
}

inline CohomologyClass divisor_class(const CohomologyRing& ring, const DivisorClass& alpha) {
  return ring.divisor_class(alpha);
}

}  // namespace toricsplit
