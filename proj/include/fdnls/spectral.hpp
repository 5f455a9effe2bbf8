#pragma once

#include <cmath>
#include <vector>

#include "fdnls/field.hpp"

namespace fdnls {

// --- symbols -------------------------------------------------------------

/// Lattice fractional-Laplacian symbol |(2/h) sin(h k / 2)|^alpha.
double symbol_sigma_h(const Lattice& lattice, double alpha, double k);

/// Continuum symbol |k|^alpha.
double symbol_sigma_0(double alpha, double k);

/// sigma_h over the dual set in natural order (index k + M).
std::vector<double> sigma_h_table(const Lattice& lattice, double alpha);

// --- Littlewood-Paley ----------------------------------------------------

/// Smallest dyadic scale N_* = 2^{ceil(log2(h/pi)) - 1}.
double lowest_dyadic_scale(const Lattice& lattice);

/// True when N is a power of two with N_* <= N <= 1.
bool is_dyadic_scale(const Lattice& lattice, double N);

/// P_N: keeps modes with M N / 2 < |k| <= M N for N > N_*; P_{N_*} is the
/// identity minus all the other shells. Output has the input representation.
Field littlewood_paley_project(const Field& f, double N);

/// P_{<=N} = sum of P_{N'} over N' <= N, i.e. keeps |k| <= M N.
Field low_pass_project(const Field& f, double N);

// --- norms ---------------------------------------------------------------

/// ||f||_{H^s_h}^2 = (2 pi)^{-1} sum_k <k>^{2s} |F_h f(k)|^2.
double sobolev_norm_h(const Field& f, double s);

/// (h sum |f|^p)^{1/p}; p = infinity gives max |f|. Physical fields only.
double lebesgue_norm_h(const Field& f, double p);

/// ||f||_{L^2_h}, either representation (Parseval on the frequency side).
double l2_norm_h(const Field& f);

inline double japanese_bracket(double k) { return std::sqrt(1.0 + k * k); }

}  // namespace fdnls
