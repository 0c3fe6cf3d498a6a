#pragma once

#include <stdexcept>

namespace amoeba {

enum class BiasKind { None, FixedOffset, Quantile, Quadratic };

/// Rank-selection bias. In plain mode `value` is the offset b (FixedOffset),
/// the quantile q in (0,1) (Quantile), or the quadratic coefficient r
/// (Quadratic). With gamma_mode set, `value` holds the PDE-side force
/// coefficient gamma and the per-amoeba parameters follow the rho-coupled
/// scaling laws (see resolve_gamma in engine.hpp).
struct BiasSpec {
  BiasKind kind = BiasKind::None;
  double value = 0.0;
  bool gamma_mode = false;

  void validate() const {
    if (kind == BiasKind::Quantile && !gamma_mode &&
        !(value > 0.0 && value < 1.0))
      throw std::invalid_argument("quantile bias requires q in (0,1)");
  }

  static BiasSpec none() { return {}; }
  static BiasSpec fixed_offset(double b) {
    return {BiasKind::FixedOffset, b, false};
  }
  static BiasSpec quantile(double q) { return {BiasKind::Quantile, q, false}; }
  static BiasSpec quadratic(double r) {
    return {BiasKind::Quadratic, r, false};
  }
  static BiasSpec gamma(BiasKind kind, double g) { return {kind, g, true}; }
};

}  // namespace amoeba
