#pragma once

#include "ein/jet.hpp"

namespace ein {

// Parameter convention m = k^2 throughout; all functions require 0 <= m < 1.

double ellip_K(double m);

// Amplitude by the descending Landen (AGM) sequence.
double jacobi_am(double u, double m);

struct Jacobi {
  double sn, cn, dn;
};
Jacobi jacobi(double u, double m);
double jacobi_sn(double u, double m);
double jacobi_cn(double u, double m);
double jacobi_dn(double u, double m);
double jacobi_sd(double u, double m);
double jacobi_nd(double u, double m);

// Taylor jets in u, from the sn/cn/dn system at u.value().
struct JacobiJet {
  Jet sn, cn, dn;
};
JacobiJet jacobi(const Jet& u, double m);
Jet jacobi_sd(const Jet& u, double m);
Jet jacobi_nd(const Jet& u, double m);

// Integral over [0, phi] of 1 / (sqrt(1 - m sin^2) (1 - x sin^2)).
// A pole on the path (x sin^2 = 1) throws unless principal_value is set.
double ellip_Pi(double x, double phi, double m, bool principal_value = false);
double ellip_Pi_complete(double x, double m, bool principal_value = false);

}  // namespace ein
