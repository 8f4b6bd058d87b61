#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "toricsplit/charnum.hpp"
#include "toricsplit/cohomology.hpp"
#include "toricsplit/fan.hpp"
#include "toricsplit/lattice.hpp"

namespace toricsplit {

/// Per-d record for Y_d in X, n = dim X - 1.
struct HandleReport {
  int n = 0;
  long d = 0;
  Integer deg;
  Integer chi;
  Integer b_n_Y;
  Integer b_n_X;
  Rational ratio_2s_over_deg;
  Rational ratio_bn_over_deg;

  // n even
  Integer sign_Y;
  Integer sign_HnX;
  Integer s_d;
  Rational ratio_sign_over_bn;
  bool hypothesis_ok = false;
  /// (b_n(Y') - |sign Y'|) - (b_n(X) -+ |sign H^n(X)|) for the better sign choice.
  Integer corollary_residual;
  char corollary_sign = '-';

  // n odd: s = b_n/2 when b_n(Y') = 0, s = (b_n - 2)/2 when b_n(Y') = 2.
  Integer s_if_kervaire_0;
  Integer s_if_kervaire_1;
  std::optional<int> kervaire;
  Integer b_n_Y_reduced;  // b_n(Y') when determined
  bool determined = true;
};

/// Fan, ring, Betti numbers and divisor shared by every d of a family.
class HypersurfaceFamily {
 public:
  HypersurfaceFamily(Fan fan, DivisorClass alpha) : alpha_(std::move(alpha)) {
    ring_ = build_ring(fan);
    n_ = ring_->dim() - 1;
    require(n_ > 2, ErrorKind::Hypothesis, "handle counts need hypersurface dimension n > 2");
    const auto ample = is_ample(ring_->fan(), alpha_);
    require(ample.ample, ErrorKind::NotAmple, "divisor class is not ample");
    betti_x_ = betti(ring_->fan());
    degree_ = degree(*ring_, alpha_);
  }

  int n() const noexcept { return n_; }
  const CohomologyRing& ring() const { return *ring_; }
  const DivisorClass& alpha() const noexcept { return alpha_; }
  const Integer& degree_one() const noexcept { return degree_; }
  const Integer& b_n_X() const { return betti_x_[static_cast<std::size_t>(n_)]; }

  HandleReport even(long d) const {
    require(n_ % 2 == 0, ErrorKind::Hypothesis, "even report needs n even");
    HandleReport r = common(d);
    r.sign_Y = signature_hypersurface(*ring_, alpha_, d);
    r.sign_HnX = signature(middle_form_gram(*ring_, alpha_, d)).value();
    const Integer twice_s = r.b_n_Y - r.b_n_X - abs(Integer(r.sign_Y - r.sign_HnX));
    require(twice_s % 2 == 0, ErrorKind::Internal, "2 s_d is odd");
    r.s_d = twice_s / 2;
    const Integer rank_f = r.b_n_X;
    r.hypothesis_ok = r.b_n_Y >= std::max(Integer(4 * rank_f), Integer(2 * rank_f + 5));
    require(!(r.hypothesis_ok && r.s_d < 0), ErrorKind::Internal, "negative s_d under the rank hypothesis");
    r.ratio_2s_over_deg = Rational(2 * r.s_d) / Rational(r.deg);
    r.ratio_sign_over_bn = r.b_n_Y == 0 ? Rational(0) : Rational(abs(r.sign_Y)) / Rational(r.b_n_Y);

    const Integer lhs = r.b_n_Y - 2 * r.s_d - abs(r.sign_Y);
    const Integer minus = lhs - (r.b_n_X - abs(r.sign_HnX));
    const Integer plus = lhs - (r.b_n_X + abs(r.sign_HnX));
    if (abs(minus) <= abs(plus)) {
      r.corollary_residual = minus;
      r.corollary_sign = '-';
    } else {
      r.corollary_residual = plus;
      r.corollary_sign = '+';
    }
    return r;
  }

  HandleReport odd(long d, std::optional<int> kervaire = std::nullopt) const {
    require(n_ % 2 == 1, ErrorKind::Hypothesis, "odd report needs n odd");
    require(!kervaire || *kervaire == 0 || *kervaire == 1, ErrorKind::Input, "Kervaire invariant must be 0 or 1");
    HandleReport r = common(d);
    require(r.b_n_Y % 2 == 0, ErrorKind::Internal, "odd-dimensional middle Betti number is odd");
    r.s_if_kervaire_0 = r.b_n_Y / 2;
    r.s_if_kervaire_1 = r.b_n_Y == 0 ? Integer(0) : Integer((r.b_n_Y - 2) / 2);
    r.kervaire = kervaire;
    if (r.b_n_Y == 0) {
      r.s_d = 0;
      r.b_n_Y_reduced = 0;
      r.determined = true;
    } else if (kervaire) {
      r.s_d = *kervaire == 0 ? r.s_if_kervaire_0 : r.s_if_kervaire_1;
      r.b_n_Y_reduced = *kervaire == 0 ? 0 : 2;
      r.determined = true;
    } else {
      r.determined = false;
      r.s_d = r.s_if_kervaire_0;
    }
    r.ratio_2s_over_deg = Rational(2 * r.s_d) / Rational(r.deg);
    return r;
  }

  HandleReport report(long d, std::optional<int> kervaire = std::nullopt) const {
    return n_ % 2 == 0 ? even(d) : odd(d, kervaire);
  }

 private:
  HandleReport common(long d) const {
    require(d >= 1, ErrorKind::Input, "d must be >= 1");
    HandleReport r;
    r.n = n_;
    r.d = d;
    r.deg = degree_ * pow(Integer(d), static_cast<unsigned>(n_ + 1));
    r.chi = euler_char_hypersurface(*ring_, alpha_, d);
    r.b_n_Y = bn_hypersurface(*ring_, alpha_, d);
    r.b_n_X = b_n_X();
    require(r.deg > 0, ErrorKind::NotAmple, "hypersurface degree is not positive");
    r.ratio_bn_over_deg = Rational(r.b_n_Y) / Rational(r.deg);
    return r;
  }

  std::shared_ptr<const CohomologyRing> ring_;
  DivisorClass alpha_;
  int n_ = 0;
  std::vector<Integer> betti_x_;
  Integer degree_;
};

inline HandleReport even_report(const Fan& fan, const DivisorClass& alpha, long d) {
  return HypersurfaceFamily(fan, alpha).even(d);
}

inline HandleReport odd_report(const Fan& fan, const DivisorClass& alpha, long d,
                               std::optional<int> kervaire = std::nullopt) {
  return HypersurfaceFamily(fan, alpha).odd(d, kervaire);
}

struct LimitLine {
  std::string name;
  Rational empirical;      // value at d_max
  Rational limit;          // exact asymptotic constant
  Rational alternative;    // (n+1)! variant, reported for comparison only
  bool has_alternative = false;
};

struct SweepResult {
  std::vector<HandleReport> rows;
  std::vector<LimitLine> limits;
};

inline SweepResult sweep(const Fan& fan, const DivisorClass& alpha, long d_min, long d_max,
                         std::optional<int> kervaire = std::nullopt) {
  require(d_min >= 1 && d_max >= d_min, ErrorKind::Input, "need 1 <= d_min <= d_max");
  const HypersurfaceFamily family(fan, alpha);
  SweepResult out;
  for (long d = d_min; d <= d_max; ++d) out.rows.push_back(family.report(d, kervaire));
  const HandleReport& last = out.rows.back();
  const int n = family.n();
  out.limits.push_back({"b_n/deg", last.ratio_bn_over_deg, Rational(1), Rational(0), false});
  if (n % 2 == 0) {
    out.limits.push_back({"|sign|/b_n", last.ratio_sign_over_bn, sign_ratio_limit(n),
                          uncorrected_sign_ratio_limit(n), true});
    out.limits.push_back({"2s/deg", last.ratio_2s_over_deg, handle_ratio_limit(n),
                          uncorrected_handle_ratio_limit(n), true});
  } else {
    out.limits.push_back({"2s/deg", last.ratio_2s_over_deg, Rational(1), Rational(0), false});
  }
  return out;
}

}  // namespace toricsplit
