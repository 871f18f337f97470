#pragma once

// Independent oracles for the unit and acceptance suites: closed forms and
// small brute-force compositions built directly on std::complex. Nothing here
// calls into the engine paths being checked.

#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using cd = std::complex<double>;

inline double pi() { return std::acos(-1.0); }

// Ideal interrupted pi-pulse: between non-selective projections a diagonal
// two-level state driven at omega evolves its population difference by
// cos(omega * gap), so p2(T) = (1 - prod cos(omega * gap_i)) / 2 with the
// trailing gap included.
inline double ideal_projected_p2(double omega, const std::vector<double>& times,
                                 double total_time) {
  double product = 1.0;
  double previous = 0.0;
  for (double t : times) {
    product *= std::cos(omega * (t - previous));
    previous = t;
  }
  product *= std::cos(omega * (total_time - previous));
  return 0.5 * (1.0 - product);
}

// Long-double evaluation of P2(T) = (1 - cos^n(pi/n)) / 2.
inline double zeno_survival_highprec(int n) {
  const long double pi_l = std::acos(-1.0L);
  return static_cast<double>(
      0.5L * (1.0L - std::pow(std::cos(pi_l / n), static_cast<long double>(n))));
}

// ---------------------------------------------------------------------------
// 2x2 density-matrix transfer maps, stored as 4x4 complex matrices acting on
// the vectorized state (rho00, rho01, rho10, rho11).
// ---------------------------------------------------------------------------

using Map4 = std::array<std::array<cd, 4>, 4>;
using Vec4 = std::array<cd, 4>;

inline Map4 compose(const Map4& second, const Map4& first) {
  Map4 out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      cd sum = 0.0;
      for (int k = 0; k < 4; ++k) sum += second[r][k] * first[k][c];
      out[r][c] = sum;
    }
  return out;
}

inline Vec4 apply_map(const Map4& map, const Vec4& v) {
  Vec4 out{};
  for (int r = 0; r < 4; ++r) {
    cd sum = 0.0;
    for (int k = 0; k < 4; ++k) sum += map[r][k] * v[k];
    out[r] = sum;
  }
  return out;
}

// rho -> U rho U† as a map on the vectorized state: M[(i,j)][(k,l)] =
// U[i][k] conj(U[j][l]).
inline Map4 conjugation_map(const std::array<std::array<cd, 2>, 2>& u) {
  Map4 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out[2 * i + j][2 * k + l] = u[i][k] * std::conj(u[j][l]);
  return out;
}

// U = exp(-i (omega/2) sx t) = cos(omega t / 2) I - i sin(omega t / 2) sx
inline std::array<std::array<cd, 2>, 2> rabi_unitary(double omega, double t) {
  const double c = std::cos(0.5 * omega * t);
  const cd ms{0.0, -std::sin(0.5 * omega * t)};
  return {{{cd{c, 0.0}, ms}, {ms, cd{c, 0.0}}}};
}

// z-basis partial collapse: diagonals kept, coherences scaled by (1 - eta)
inline Map4 partial_collapse_map(double eta) {
  Map4 out{};
  out[0][0] = 1.0;
  out[1][1] = 1.0 - eta;
  out[2][2] = 1.0 - eta;
  out[3][3] = 1.0;
  return out;
}

// Per-segment linear-map composition for the partial-strength interrupted
// pi-pulse: n equally spaced partial measurements of strength eta.
inline double partial_drive_p2(double omega, double total_time, int n, double eta) {
  Vec4 rho{cd{1.0, 0.0}, 0.0, 0.0, 0.0};  // |1><1|
  double previous = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double t_k = (k == n) ? total_time : total_time * k / n;
    rho = apply_map(conjugation_map(rabi_unitary(omega, t_k - previous)), rho);
    rho = apply_map(partial_collapse_map(eta), rho);
    previous = t_k;
  }
  if (previous < total_time) {
    rho = apply_map(conjugation_map(rabi_unitary(omega, total_time - previous)), rho);
  }
  return rho[3].real();
}

// ---------------------------------------------------------------------------
// Bang-bang: plain 2x2 unitary composition.
// ---------------------------------------------------------------------------

inline std::array<std::array<cd, 2>, 2> matmul2(const std::array<std::array<cd, 2>, 2>& a,
                                                const std::array<std::array<cd, 2>, 2>& b) {
  std::array<std::array<cd, 2>, 2> out{};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
  return out;
}

// Total propagator for kicks at the given times; p2 = |<2|U|1>|^2.
inline double bangbang_p2(double omega, double total_time, const std::vector<double>& kick_times,
                          const std::array<std::array<cd, 2>, 2>& kick) {
  std::array<std::array<cd, 2>, 2> u{{{cd{1.0, 0.0}, 0.0}, {0.0, cd{1.0, 0.0}}}};
  double previous = 0.0;
  for (double t : kick_times) {
    u = matmul2(rabi_unitary(omega, t - previous), u);
    u = matmul2(kick, u);
    previous = t;
  }
  u = matmul2(rabi_unitary(omega, total_time - previous), u);
  return std::norm(u[1][0]);
}

inline std::array<std::array<cd, 2>, 2> sigma_z2() {
  return {{{cd{1.0, 0.0}, 0.0}, {0.0, cd{-1.0, 0.0}}}};
}

// ---------------------------------------------------------------------------
// Three-level chain (couplings a: 1<->2, b: 2<->3, H = (a/2)(E12 + E21) +
// (b/2)(E23 + E32)): closed-form transition probability 1 -> 3 by direct
// diagonalization. Eigenvalues {0, +-s/2} with s = sqrt(a^2 + b^2).
// ---------------------------------------------------------------------------

inline double chain_p3_from_1(double a, double b, double t) {
  const double s2 = a * a + b * b;
  const double s = std::sqrt(s2);
  const double amplitude_factor = a * b / s2;
  const double oscillation = std::cos(0.5 * s * t) - 1.0;
  return amplitude_factor * amplitude_factor * oscillation * oscillation;
}

// Survival of |1> under the same chain: amp = (b^2 + a^2 cos(s t / 2)) / s^2.
inline double chain_p1_survival(double a, double b, double t) {
  const double s2 = a * a + b * b;
  const double amp = (b * b + a * a * std::cos(0.5 * std::sqrt(s2) * t)) / s2;
  return amp * amp;
}

}  // namespace oracle
