#pragma once

#include <utility>

#include "manifoldtv/image.hpp"

namespace mtv {

// Data term kinds for the fidelity part of the functional: l^1, l^2, or the
// Huber function h with parameters tau, omega (both > 0).
struct DataTermKind {
    enum class Type { L1, L2, Huber };

    Type type = Type::L2;
    double tau = 0;    // Huber only
    double omega = 0;  // Huber only

    static DataTermKind l1() { return {Type::L1}; }
    static DataTermKind l2() { return {Type::L2}; }
    static DataTermKind huber(double tau, double omega);
};

// Regularizer kinds: total variation (q=1), quadratic variation (q=2), or
// the Huber regularizer.
struct RegularizerKind {
    enum class Type { TV, TV2, Huber };

    Type type = Type::TV;
    double tau = 0;
    double omega = 0;

    static RegularizerKind tv() { return {Type::TV}; }
    static RegularizerKind tv2() { return {Type::TV2}; }
    static RegularizerKind huber(double tau, double omega);
};

// Huber function: tau^2 s^2 below s = omega/(sqrt(2) tau), the affine
// continuation sqrt(2) omega tau s - omega^2/2 above.
double huber(double s, double tau, double omega);

// Geodesic path length of the data-term proximal step
// argmin_y lambda g(d(y,f)) + d(x,y)^2/2 along the geodesic [x,f]:
//   l^1    min(lambda, d)
//   l^2    lambda/(1+lambda) d
//   Huber  2 lambda tau^2/(1+2 lambda tau^2) d  if d < omega(1+2 lambda tau^2)/(sqrt(2) tau)
//          min(d, sqrt(2) lambda omega tau)     otherwise
// Result is always in [0, d].
double calc_t_data(double lambda, const DataTermKind& kind, double d);

// Geodesic path length of the coupling-term proximal step (both endpoints
// move toward each other):
//   TV     min(lambda, d/2)
//   TV^2   lambda/(1+2 lambda) d
//   Huber  2 lambda tau^2/(1+4 lambda tau^2) d  if d < omega(1+4 lambda tau^2)/(sqrt(2) tau)
//          min(d/2, sqrt(2) lambda omega tau)   otherwise
// Result is always in [0, d/2].
double calc_t_reg(double lambda, const RegularizerKind& kind, double d);

// Pointwise proximal map of the data term: every pixel moves toward its
// datum by calc_t_data of the pixel distance. CutLocusError is rethrown with
// the pixel index attached.
ManifoldImage prox_data(const ManifoldImage& x, const ManifoldImage& f, double lambda,
                        const DataTermKind& kind);

// Proximal map of a single coupling term: both points step a distance t
// toward each other, t <= d(a,b)/2.
std::pair<ManifoldPoint, ManifoldPoint> prox_pair(const ManifoldPoint& a,
                                                  const ManifoldPoint& b, double t);

enum class Axis { Horizontal, Vertical };
enum class Parity { Even, Odd };

// Proximal map of one even/odd family of coupling terms: along the chosen
// axis, each pair whose first index has the chosen parity contracts by
// calc_t_reg; all other pixels are copied through bit-exactly (the missing
// boundary terms are simply absent from the sum).
ManifoldImage prox_coupling(const ManifoldImage& x, double lambda_alpha,
                            const RegularizerKind& kind, Axis axis, Parity parity);

}  // namespace mtv
