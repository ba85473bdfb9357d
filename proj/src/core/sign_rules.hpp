#pragma once

namespace morselink::pl {

// Every orientation convention in the library routes through these exponents.
// They are kept as tiny pure functions so the coherence identities between
// them can be checked exhaustively.

constexpr int pow_sign(long e) { return (e % 2 + 2) % 2 == 0 ? 1 : -1; }

// d(V x W) = dV x W + (-1)^(n - dim V) V x dW; this is the sign on the second term.
constexpr int sign_bdry(int n, int dim_v) { return pow_sign(n - dim_v); }

// V x_M W = (-1)^((n - dim V)(n - dim W)) W x_M V.
constexpr int sign_commute(int n, int dim_v, int dim_w) {
  return pow_sign(static_cast<long>(n - dim_v) * (n - dim_w));
}

// M x_M W = (-1)^(n (n - dim W)) W x_M M when the left factor is the diagonal.
constexpr int sign_diag(int n, int dim_w) { return pow_sign(static_cast<long>(n) * (n - dim_w)); }

// (V0 x V1) x_(M x N) (W0 x W1) versus the factorwise product of fiber products.
constexpr int sign_prod(int dim_n, int dim_v1, int dim_m, int dim_w0) {
  return pow_sign(static_cast<long>(dim_n - dim_v1) * (dim_m - dim_w0));
}

// Stable manifold of the reversed flow against the unstable one: index idx in dim n.
constexpr int sign_su(int n, int idx) { return pow_sign(static_cast<long>(idx) * (n - idx)); }

// Parameterized trajectory space of the reversed flow against the original.
constexpr int sign_tm(int n, int idx_p, int idx_q) {
  return pow_sign(static_cast<long>(idx_p + idx_q) * (n - idx_p));
}

// Unparameterized version: one extra flip from the reversed time direction.
constexpr int sign_m(int n, int idx_p, int idx_q) { return -sign_tm(n, idx_p, idx_q); }

// Count duality m_{-f}(q, p) = sign_dualm(n, |q|) * m_f(p, q).
constexpr int sign_dualm(int n, int idx_q) { return pow_sign(n - idx_q); }

// lk(g, f) = sign_linksym(n, k) * lk(f, g) for a k-chain against an (n-k-1)-chain.
constexpr int sign_linksym(int n, int k) { return pow_sign(static_cast<long>(k + 1) * (n - k)); }

// <d' x, y> = sign_adjoint(n, k) <x, d y> for y in degree k.
constexpr int sign_adjoint(int n, int k) { return pow_sign(n - k + 1); }

// Lambda(x, y) = sign_altlam(n, k) <w, y> for any dual primitive w of x.
constexpr int sign_altlam(int n, int k) { return pow_sign(n - k); }

// Cap adjunction <I_g x, y> = sign_cap_adjoint(n, v, k) <x, I_g y>.
constexpr int sign_cap_adjoint(int n, int v, int k) {
  return pow_sign(static_cast<long>(n - v) * (n - k));
}

// Leibniz rule I_dg = d I_g - sign_cap_leibniz(n, v) I_g d.
constexpr int sign_cap_leibniz(int n, int v) { return pow_sign(n - v); }

// Six-term identity for the two-point operation; term order:
//   I_{dg0,g1}, I_{g0,dg1}, I_{g0,g1} d, d I_{g0,g1}, I_{g1} I_{g0}, I_{g0 x g1}.
constexpr int sign_fundid_term(int term, int n, int v0, int v1) {
  switch (term) {
    case 0: return 1;
    case 1: return pow_sign(v0);
    case 2: return pow_sign(v0 + v1);
    case 3: return 1;
    case 4: return pow_sign(static_cast<long>(v0) * (n - v1));
    case 5: return pow_sign(1 + static_cast<long>(n) * (n - v1));
  }
  return 0;
}

}  // namespace morselink::pl
