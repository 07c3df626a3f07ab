#include "ibnls/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "ibnls/errors.hpp"

namespace ibnls {

namespace {

using Poly = std::vector<double>;

double poly_eval(const Poly& p, double x) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {0.0};
  Poly d(p.size() - 1);
  for (size_t k = 1; k < p.size(); ++k) d[k - 1] = p[k] * static_cast<double>(k);
  return d;
}

Poly poly_integral(const Poly& p) {
  Poly q(p.size() + 1, 0.0);
  for (size_t k = 0; k < p.size(); ++k) q[k + 1] = p[k] / static_cast<double>(k + 1);
  return q;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly c(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly c(std::max(a.size(), b.size()), 0.0);
  for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  return c;
}

Poly poly_scale(const Poly& a, double c) {
  Poly out = a;
  for (double& v : out) v *= c;
  return out;
}

// Degree-13 smoothstep: six vanishing derivatives at 0 and 1.
Poly smoothstep6() {
  Poly s(14, 0.0);
  s[7] = 1716.0;
  s[8] = -9009.0;
  s[9] = 20020.0;
  s[10] = -24024.0;
  s[11] = 16380.0;
  s[12] = -6006.0;
  s[13] = 924.0;
  return s;
}

// (2 + 2 t - 2 t^2) with t = t0 + len * tau, as a polynomial in tau.
Poly quad_branch_in_tau(double t0, double len) {
  const Poly t = {t0, len};
  Poly out = {2.0};
  out = poly_add(out, poly_scale(t, 2.0));
  out = poly_add(out, poly_scale(poly_mul(t, t), -2.0));
  return out;
}

}  // namespace

ChiProfile::ChiProfile(double joint_width) : joint_width_(joint_width) {
  const double w = joint_width_;
  const double s_star = bridge_start();
  // the joint blend must stay inside the quadratic branch
  if (!(w > 0.0) || !(1.0 + w < s_star)) {
    throw InvalidGridSpec("cutoff joint width must lie in (0, " + std::to_string(s_star - 1.0) + ")");
  }

  const Poly B = smoothstep6();

  // [0, 1]: chi = 2 s, tau = s.
  pieces_[0].s_lo = 0.0;
  pieces_[0].s_hi = 1.0;
  pieces_[0].coeff = {0.0, 2.0};

  // (1, 1+w): chi = 2s - 2 (s-1)^2 B((s-1)/w), tau = (s-1)/w, s-1 = w tau.
  pieces_[1].s_lo = 1.0;
  pieces_[1].s_hi = 1.0 + w;
  {
    Poly t = {0.0, w};
    Poly p = poly_add(Poly{2.0}, poly_scale(t, 2.0));
    p = poly_add(p, poly_scale(poly_mul(poly_mul(t, t), B), -2.0));
    pieces_[1].coeff = p;
  }

  // [1+w, s*]: chi = 2s - 2 (s-1)^2.
  pieces_[2].s_lo = 1.0 + w;
  pieces_[2].s_hi = s_star;
  pieces_[2].coeff = quad_branch_in_tau(w, s_star - 1.0 - w);

  // (s*, 2): chi = (2s - 2 (s-1)^2) (1 - B(tau)).
  pieces_[3].s_lo = s_star;
  pieces_[3].s_hi = 2.0;
  {
    const Poly quad = quad_branch_in_tau(s_star - 1.0, 2.0 - s_star);
    Poly one_minus_b = poly_scale(B, -1.0);
    one_minus_b = poly_add(one_minus_b, Poly{1.0});
    pieces_[3].coeff = poly_mul(quad, one_minus_b);
  }

  double cumulative = 0.0;
  for (auto& piece : pieces_) {
    piece.len = piece.s_hi - piece.s_lo;
    piece.anti = poly_integral(piece.coeff);
    piece.cumulative = cumulative;
    cumulative += piece.len * poly_eval(piece.anti, 1.0);
  }
  phi_total_ = cumulative;
}

const ChiProfile::Piece* ChiProfile::find_piece(double s) const {
  // Boundaries route into the exact pieces: the quadratic identities hold
  // at s = 1 itself, and the bridge joint evaluates the quadratic branch.
  if (s <= pieces_[0].s_hi) return &pieces_[0];
  if (s < pieces_[1].s_hi) return &pieces_[1];
  if (s <= pieces_[2].s_hi) return &pieces_[2];
  if (s < pieces_[3].s_hi) return &pieces_[3];
  return nullptr;
}

double ChiProfile::eval(double s, int deriv) const {
  if (s < 0.0) throw InvalidGridSpec("chi is defined on s >= 0");
  if (deriv < 0 || deriv > 6) throw InvalidGridSpec("chi derivatives available up to order 6");
  const Piece* piece = find_piece(s);
  if (piece == nullptr) return 0.0;
  Poly p = piece->coeff;
  for (int k = 0; k < deriv; ++k) p = poly_derivative(p);
  const double tau = (s - piece->s_lo) / piece->len;
  return poly_eval(p, tau) * std::pow(1.0 / piece->len, deriv);
}

double ChiProfile::antiderivative(double s) const {
  if (s < 0.0) throw InvalidGridSpec("chi is defined on s >= 0");
  const Piece* piece = find_piece(s);
  if (piece == nullptr) return phi_total_;
  const double tau = (s - piece->s_lo) / piece->len;
  return piece->cumulative + piece->len * poly_eval(piece->anti, tau);
}

double ChiProfile::sup_abs_deriv(int deriv) const {
  if (deriv < 0 || deriv > 6) throw InvalidGridSpec("chi derivatives available up to order 6");
  constexpr int kSamplesPerPiece = 4096;
  double sup = 0.0;
  for (const auto& piece : pieces_) {
    Poly p = piece.coeff;
    for (int k = 0; k < deriv; ++k) p = poly_derivative(p);
    const double scale = std::pow(1.0 / piece.len, deriv);
    for (int i = 0; i <= kSamplesPerPiece; ++i) {
      const double tau = static_cast<double>(i) / kSamplesPerPiece;
      sup = std::max(sup, std::abs(poly_eval(p, tau) * scale));
    }
  }
  return sup;
}

namespace {

// One term coef * r^{-inv_pow} * psi^{(deriv)} of an iterated radial
// Laplacian expansion.
struct DeltaTerm {
  double coef;
  int deriv;
  int inv_pow;
};

std::vector<DeltaTerm> apply_radial_laplacian(const std::vector<DeltaTerm>& in, int N) {
  std::map<std::pair<int, int>, double> acc;
  for (const auto& term : in) {
    const double p = -static_cast<double>(term.inv_pow);
    // Delta(c r^p psi^{(j)}) = c p (p + N - 2) r^{p-2} psi^{(j)}
    //   + c (2p + N - 1) r^{p-1} psi^{(j+1)} + c r^p psi^{(j+2)}
    acc[{term.deriv, term.inv_pow + 2}] += term.coef * p * (p + N - 2);
    acc[{term.deriv + 1, term.inv_pow + 1}] += term.coef * (2.0 * p + N - 1);
    acc[{term.deriv + 2, term.inv_pow}] += term.coef;
  }
  std::vector<DeltaTerm> out;
  for (const auto& [key, coef] : acc) {
    if (coef != 0.0) out.push_back({coef, key.first, key.second});
  }
  return out;
}

double eval_terms(const std::vector<DeltaTerm>& terms, const std::array<double, 7>& derivs, double r) {
  double acc = 0.0;
  for (const auto& term : terms) {
    acc += term.coef * derivs[term.deriv] / std::pow(r, term.inv_pow);
  }
  return acc;
}

}  // namespace

CutoffProfile make_cutoff(const GridPtr& grid, double R, double joint_width) {
  if (!(R > 0.0) || !(2.0 * R < grid->r_max())) {
    throw CutoffTooLarge("cutoff requires 0 < 2R < r_max");
  }

  CutoffProfile prof;
  prof.grid = grid;
  prof.R = R;
  prof.chi = ChiProfile(joint_width);

  const int n = grid->n();
  const int N = grid->params().dim;
  const double b = grid->params().b;

  prof.phi.resize(n);
  for (auto& vec : prof.radial_derivs) vec.resize(n);
  prof.dphi_over_r.resize(n);
  prof.delta_phi.resize(n);
  prof.delta2_phi.resize(n);
  prof.delta3_phi.resize(n);
  prof.hess_delta_phi.resize(n);
  prof.big_phi.resize(n);

  // Iterated Laplacian expansions in terms of radial derivatives of phi_R.
  const std::vector<DeltaTerm> delta1 = apply_radial_laplacian({{1.0, 0, 0}}, N);
  const std::vector<DeltaTerm> delta2 = apply_radial_laplacian(delta1, N);
  const std::vector<DeltaTerm> delta3 = apply_radial_laplacian(delta2, N);

  const double big_phi_c1 = (8.0 - 2.0 * b) / (N - b);
  const double big_phi_c2 = ((8.0 - 2.0 * b) * (N - 1) + 2.0 * b * (N - 4)) / (N - b);

  for (int i = 0; i < n; ++i) {
    const double r = grid->nodes()[i];
    const double s = r / R;

    prof.phi[i] = R * R * prof.chi.antiderivative(s);

    // phi_R^{(j)}(r) = R^{2-j} chi^{(j-1)}(r/R)
    std::array<double, 7> derivs{};  // derivs[j] = phi_R^{(j)}, derivs[0] unused
    for (int j = 1; j <= 6; ++j) {
      derivs[j] = std::pow(R, 2 - j) * prof.chi.eval(s, j - 1);
      prof.radial_derivs[j - 1][i] = derivs[j];
    }

    prof.dphi_over_r[i] = prof.chi.eval(s) / s;  // equals phi_R'(r)/r, exact 2 inside the ball
    prof.delta_phi[i] = eval_terms(delta1, derivs, r);
    prof.delta2_phi[i] = eval_terms(delta2, derivs, r);
    prof.delta3_phi[i] = eval_terms(delta3, derivs, r);

    // (Delta phi_R)'' = phi'''' + (N-1)(phi'''/r - 2 phi''/r^2 + 2 phi'/r^3)
    prof.hess_delta_phi[i] =
        derivs[4] + (N - 1) * (derivs[3] / r - 2.0 * derivs[2] / (r * r) + 2.0 * derivs[1] / (r * r * r));

    prof.big_phi[i] = big_phi_c1 * derivs[2] + big_phi_c2 * prof.dphi_over_r[i];
  }

  // R-scaled sup constants over a dense s-sample of [1, 2] (everything they
  // bound vanishes identically for s < 1).
  constexpr int kSamples = 8192;
  double sup_hess = 0.0, sup_d2 = 0.0, sup_d3 = 0.0, sup_phi16 = 0.0;
  for (int i = 0; i <= kSamples; ++i) {
    const double s = 1.0 + static_cast<double>(i) / kSamples;
    std::array<double, 7> chis{};  // chis[j] = chi^{(j-1)}(s), shifted like derivs above
    for (int j = 1; j <= 6; ++j) chis[j] = prof.chi.eval(s, j - 1);
    // In scaled variables phi_R^{(j)} R^{j-2} = chi^{(j-1)}, r/R = s.
    const double hess =
        chis[4] + (N - 1) * (chis[3] / s - 2.0 * chis[2] / (s * s) + 2.0 * chis[1] / (s * s * s));
    sup_hess = std::max(sup_hess, std::abs(hess));
    sup_d2 = std::max(sup_d2, std::abs(eval_terms(delta2, chis, s)));
    sup_d3 = std::max(sup_d3, std::abs(eval_terms(delta3, chis, s)));
    const double phi_val = big_phi_c1 * chis[2] + big_phi_c2 * chis[1] / s;
    sup_phi16 = std::max(sup_phi16, std::abs(phi_val - 16.0));
  }
  prof.sup_hess_delta_scaled = sup_hess;
  prof.sup_delta2_scaled = sup_d2;
  prof.sup_delta3_scaled = sup_d3;
  prof.sup_big_phi_minus_16 = sup_phi16;

  return prof;
}

std::vector<double> scaling_certificate(const std::vector<double>& R_values, int j, double joint_width) {
  if (j < 1 || j > 6) throw InvalidGridSpec("derivative order must lie in 1..6");
  std::vector<double> out;
  out.reserve(R_values.size());
  for (double R : R_values) {
    if (!(R > 0.0)) throw InvalidGridSpec("cutoff radius must be positive");
    ChiProfile chi(joint_width);
    // sup_r |phi_R^{(j)}| R^{j-2} = sup_s |chi^{(j-1)}(s)|
    out.push_back(chi.sup_abs_deriv(j - 1));
  }
  return out;
}

}  // namespace ibnls
