#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "toricsplit/error.hpp"
#include "toricsplit/lp.hpp"
#include "toricsplit/matrix.hpp"

namespace toricsplit {

using Ray = std::vector<std::int64_t>;
using Cone = std::vector<std::size_t>;  // sorted ray indices

/// Fan of a toric manifold: primitive rays plus maximal cones, each a set of
/// `dim` ray indices. Ray order is the file order and fixes every downstream basis.
struct Fan {
  int dim = 0;
  std::vector<Ray> rays;
  std::vector<Cone> max_cones;
  std::string name;

  std::size_t num_rays() const noexcept { return rays.size(); }
};

/// Coefficients a_rho of sum a_rho [D_rho] in H^2(X).
struct DivisorClass {
  IntVector coeffs;

  DivisorClass scaled(const Integer& d) const {
    DivisorClass out{coeffs};
    for (auto& c : out.coeffs) c *= d;
    return out;
  }
};

inline DivisorClass make_divisor(std::initializer_list<long> values) {
  DivisorClass out;
  for (long v : values) out.coeffs.emplace_back(v);
  return out;
}

/// Invariant curve of a wall w = sigma ∩ sigma': v + v' + sum c_i u_i = 0.
struct WallCurve {
  Cone wall;                    // dim-1 ray indices (the u_i)
  std::size_t cone_a = 0;       // max cone containing v
  std::size_t cone_b = 0;       // max cone containing v'
  std::size_t ray_a = 0;        // v
  std::size_t ray_b = 0;        // v'
  std::vector<Integer> relation_coeffs;  // c_i, aligned with `wall`
};

struct SmoothReport {
  bool smooth = true;
  std::vector<std::size_t> bad_cones;
  std::vector<Integer> determinants;  // per max cone
};

struct CompleteReport {
  bool walls_ok = true;
  bool coverage_ok = true;
  std::vector<Cone> bad_walls;  // walls not shared by exactly two max cones
  std::size_t samples = 0;
  std::size_t covered = 0;

  bool complete() const noexcept { return walls_ok && coverage_ok; }
};

struct AmpleReport {
  bool ample = true;
  std::vector<Integer> wall_values;  // alpha . C per wall, in wall_curves order
};

struct ProjectivityReport {
  bool projective = false;
  std::optional<DivisorClass> witness;
};

namespace detail {

/// Columns are the rays of `cone`.
inline IntMatrix cone_matrix(const Fan& fan, const Cone& cone) {
  IntMatrix m(static_cast<std::size_t>(fan.dim), cone.size());
  for (std::size_t k = 0; k < cone.size(); ++k)
    for (std::size_t i = 0; i < static_cast<std::size_t>(fan.dim); ++i)
      m(i, k) = fan.rays[cone[k]][i];
  return m;
}

inline void check_structure(const Fan& fan) {
  require(fan.dim >= 1, ErrorKind::Input, "fan dim must be positive");
  std::set<Ray> seen_rays;
  for (std::size_t r = 0; r < fan.rays.size(); ++r) {
    const auto& ray = fan.rays[r];
    require(ray.size() == static_cast<std::size_t>(fan.dim), ErrorKind::Input,
            "ray " + std::to_string(r) + " has wrong length");
    std::int64_t g = 0;
    for (auto x : ray) g = gcd64(g, x);
    require(g != 0, ErrorKind::Input, "ray " + std::to_string(r) + " is zero");
    require(g == 1, ErrorKind::Input, "ray " + std::to_string(r) + " is non-primitive");
    require(seen_rays.insert(ray).second, ErrorKind::Input,
            "duplicate ray " + std::to_string(r));
  }
  std::set<Cone> seen_cones;
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    const auto& cone = fan.max_cones[c];
    require(cone.size() == static_cast<std::size_t>(fan.dim), ErrorKind::Input,
            "cone " + std::to_string(c) + " has wrong size (cone-size)");
    for (auto idx : cone)
      require(idx < fan.rays.size(), ErrorKind::Input,
              "cone " + std::to_string(c) + " index out of range");
    require(std::adjacent_find(cone.begin(), cone.end()) == cone.end(), ErrorKind::Input,
            "cone " + std::to_string(c) + " repeats a ray");
    require(seen_cones.insert(cone).second, ErrorKind::Input,
            "duplicate cone " + std::to_string(c));
  }
  require(!fan.max_cones.empty(), ErrorKind::Input, "fan has no maximal cones");
}

/// Walls (facets of max cones) mapped to the max cones that contain them,
/// in first-appearance order.
inline std::vector<std::pair<Cone, std::vector<std::size_t>>> wall_incidence(const Fan& fan) {
  std::vector<std::pair<Cone, std::vector<std::size_t>>> out;
  std::map<Cone, std::size_t> index;
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    const auto& cone = fan.max_cones[c];
    for (std::size_t drop = 0; drop < cone.size(); ++drop) {
      Cone wall;
      for (std::size_t k = 0; k < cone.size(); ++k)
        if (k != drop) wall.push_back(cone[k]);
      auto [it, inserted] = index.emplace(wall, out.size());
      if (inserted) out.push_back({wall, {}});
      out[it->second].second.push_back(c);
    }
  }
  return out;
}

}  // namespace detail

/// Sorts each cone's indices and checks primitivity, index bounds and duplicates.
inline Fan make_fan(int dim, std::vector<Ray> rays, std::vector<Cone> cones, std::string name = {}) {
  Fan fan{dim, std::move(rays), std::move(cones), std::move(name)};
  for (auto& cone : fan.max_cones) std::sort(cone.begin(), cone.end());
  detail::check_structure(fan);
  return fan;
}

inline Fan parse_fan(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::Input, std::string("malformed fan file: ") + e.what());
  }
  require(doc.is_object(), ErrorKind::Input, "malformed fan file: expected an object");
  for (const auto& [key, _] : doc.items())
    require(key == "dim" || key == "rays" || key == "max_cones" || key == "name",
            ErrorKind::Input, "malformed fan file: unknown field '" + key + "'");
  require(doc.contains("dim") && doc.contains("rays") && doc.contains("max_cones"),
          ErrorKind::Input, "malformed fan file: missing dim/rays/max_cones");
  try {
    const int dim = doc.at("dim").get<int>();
    auto rays = doc.at("rays").get<std::vector<Ray>>();
    auto raw_cones = doc.at("max_cones").get<std::vector<std::vector<std::int64_t>>>();
    std::vector<Cone> cones;
    for (const auto& raw : raw_cones) {
      Cone cone;
      for (auto idx : raw) {
        require(idx >= 0, ErrorKind::Input, "malformed fan file: negative cone index");
        cone.push_back(static_cast<std::size_t>(idx));
      }
      cones.push_back(std::move(cone));
    }
    std::string name = doc.contains("name") ? doc.at("name").get<std::string>() : std::string{};
    return make_fan(dim, std::move(rays), std::move(cones), std::move(name));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Input, std::string("malformed fan file: ") + e.what());
  }
}

inline Fan load_fan(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::Input, "cannot open fan file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_fan(buf.str());
}

inline std::string fan_to_json(const Fan& fan) {
  nlohmann::json doc;
  doc["dim"] = fan.dim;
  doc["rays"] = fan.rays;
  doc["max_cones"] = fan.max_cones;
  if (!fan.name.empty()) doc["name"] = fan.name;
  return doc.dump();
}

/// Fan of P^m: rays e_1..e_m, -(e_1+...+e_m); every m-subset is a max cone.
inline Fan projective_space_fan(int m) {
  require(m >= 1, ErrorKind::Input, "projective space dimension must be >= 1");
  std::vector<Ray> rays;
  for (int i = 0; i < m; ++i) {
    Ray r(static_cast<std::size_t>(m), 0);
    r[static_cast<std::size_t>(i)] = 1;
    rays.push_back(r);
  }
  rays.push_back(Ray(static_cast<std::size_t>(m), -1));
  std::vector<Cone> cones;
  // m-subsets of {0..m} in lexicographic order = complements of single rays, reversed.
  for (int skip = m; skip >= 0; --skip) {
    Cone c;
    for (int i = 0; i <= m; ++i)
      if (i != skip) c.push_back(static_cast<std::size_t>(i));
    cones.push_back(c);
  }
  return make_fan(m, std::move(rays), std::move(cones), "cp" + std::to_string(m));
}

inline Fan product_fan(const Fan& a, const Fan& b) {
  const auto da = static_cast<std::size_t>(a.dim), db = static_cast<std::size_t>(b.dim);
  std::vector<Ray> rays;
  for (const auto& r : a.rays) {
    Ray x(da + db, 0);
    std::copy(r.begin(), r.end(), x.begin());
    rays.push_back(x);
  }
  for (const auto& r : b.rays) {
    Ray x(da + db, 0);
    std::copy(r.begin(), r.end(), x.begin() + static_cast<std::ptrdiff_t>(da));
    rays.push_back(x);
  }
  std::vector<Cone> cones;
  for (const auto& ca : a.max_cones)
    for (const auto& cb : b.max_cones) {
      Cone c = ca;
      for (auto idx : cb) c.push_back(idx + a.num_rays());
      cones.push_back(c);
    }
  std::string name = a.name.empty() || b.name.empty() ? std::string{} : a.name + "x" + b.name;
  return make_fan(a.dim + b.dim, std::move(rays), std::move(cones), std::move(name));
}

inline SmoothReport validate_smooth(const Fan& fan) {
  SmoothReport report;
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    Integer det = determinant(detail::cone_matrix(fan, fan.max_cones[c]));
    if (abs(det) != 1) {
      report.smooth = false;
      report.bad_cones.push_back(c);
    }
    report.determinants.push_back(std::move(det));
  }
  return report;
}

inline constexpr std::size_t kDefaultCoverageSamples = 1024;

/// Wall pairing plus a seeded coverage check: random integer directions must
/// each have nonnegative coordinates in some max cone's ray basis.
inline CompleteReport validate_complete(const Fan& fan, std::uint64_t seed,
                                        std::size_t samples = kDefaultCoverageSamples) {
  CompleteReport report;
  for (const auto& [wall, cones] : detail::wall_incidence(fan))
    if (cones.size() != 2) {
      report.walls_ok = false;
      report.bad_walls.push_back(wall);
    }

  std::vector<IntMatrix> inverses;
  for (const auto& cone : fan.max_cones) {
    const auto m = detail::cone_matrix(fan, cone);
    require(abs(determinant(m)) == 1, ErrorKind::NotSmooth,
            "completeness check requires a smooth fan");
    inverses.push_back(unimodular_inverse(m));
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(-1000, 1000);
  report.samples = samples;
  for (std::size_t s = 0; s < samples; ++s) {
    IntVector v(static_cast<std::size_t>(fan.dim));
    bool zero = true;
    for (auto& x : v) {
      x = coord(rng);
      zero = zero && x == 0;
    }
    if (zero) v[0] = 1;
    bool covered = false;
    for (const auto& inv : inverses) {
      const IntVector lambda = times_column(inv, v);
      if (std::all_of(lambda.begin(), lambda.end(), [](const Integer& x) { return x >= 0; })) {
        covered = true;
        break;
      }
    }
    if (covered) ++report.covered;
  }
  report.coverage_ok = report.covered == report.samples;
  return report;
}

inline std::vector<WallCurve> wall_curves(const Fan& fan) {
  std::vector<WallCurve> out;
  for (const auto& [wall, cones] : detail::wall_incidence(fan)) {
    require(cones.size() == 2, ErrorKind::NotComplete,
            "wall shared by " + std::to_string(cones.size()) + " max cones");
    WallCurve curve;
    curve.wall = wall;
    curve.cone_a = cones[0];
    curve.cone_b = cones[1];
    auto extra = [&](const Cone& cone) {
      for (auto idx : cone)
        if (!std::binary_search(wall.begin(), wall.end(), idx)) return idx;
      fail(ErrorKind::Internal, "wall equals its cone");
    };
    curve.ray_a = extra(fan.max_cones[curve.cone_a]);
    curve.ray_b = extra(fan.max_cones[curve.cone_b]);

    // Coordinates of v' in the basis (v, u_1, ..., u_{dim-1}) of cone a.
    Cone basis{curve.ray_a};
    basis.insert(basis.end(), wall.begin(), wall.end());
    const IntMatrix inv = unimodular_inverse(detail::cone_matrix(fan, basis));
    IntVector target(static_cast<std::size_t>(fan.dim));
    for (std::size_t i = 0; i < target.size(); ++i) target[i] = fan.rays[curve.ray_b][i];
    const IntVector coords = times_column(inv, target);
    require(coords[0] == -1, ErrorKind::NotSmooth,
            "wall relation has v-coefficient " + coords[0].str() + " (fan not smooth)");
    for (std::size_t k = 1; k < coords.size(); ++k) curve.relation_coeffs.push_back(-coords[k]);
    out.push_back(std::move(curve));
  }
  return out;
}

inline Integer intersect(const WallCurve& curve, const DivisorClass& alpha) {
  Integer value = alpha.coeffs[curve.ray_a] + alpha.coeffs[curve.ray_b];
  for (std::size_t k = 0; k < curve.wall.size(); ++k)
    value += curve.relation_coeffs[k] * alpha.coeffs[curve.wall[k]];
  return value;
}

inline AmpleReport is_ample(const Fan& fan, const DivisorClass& alpha) {
  require(alpha.coeffs.size() == fan.num_rays(), ErrorKind::Input,
          "divisor class length does not match the number of rays");
  AmpleReport report;
  for (const auto& curve : wall_curves(fan)) {
    Integer value = intersect(curve, alpha);
    if (value <= 0) report.ample = false;
    report.wall_values.push_back(std::move(value));
  }
  return report;
}

/// Exact LP: is there a rational class with alpha . C >= 1 on every wall curve?
inline ProjectivityReport is_projective(const Fan& fan) {
  const auto curves = wall_curves(fan);
  RatMatrix a(curves.size(), fan.num_rays());
  for (std::size_t w = 0; w < curves.size(); ++w) {
    const auto& c = curves[w];
    a(w, c.ray_a) += 1;
    a(w, c.ray_b) += 1;
    for (std::size_t k = 0; k < c.wall.size(); ++k) a(w, c.wall[k]) += Rational(c.relation_coeffs[k]);
  }
  const auto point = lp::feasible_point(a, std::vector<Rational>(curves.size(), Rational(1)));
  ProjectivityReport report;
  if (!point) return report;

  Integer scale = 1;
  for (const auto& x : *point) scale = lcm(scale, denominator(x));
  DivisorClass witness;
  Integer g = 0;
  for (const auto& x : *point) {
    witness.coeffs.push_back(numerator(x) * (scale / denominator(x)));
    g = gcd(g, witness.coeffs.back());
  }
  if (g > 1)
    for (auto& c : witness.coeffs) c /= g;
  require(is_ample(fan, witness).ample, ErrorKind::Internal, "lp witness is not ample");
  report.projective = true;
  report.witness = std::move(witness);
  return report;
}

}  // namespace toricsplit
