#include "gsteer/fixtures.hpp"

namespace gsteer::fixtures {

RealMatrix counterexample_k1() {
  RealMatrix k(4, 4);
  k << -353.124, -257.135, -43.9143, 61.7854,
       -517.650, 829.322, -7.6448, -42.2212,
       339.674, -933.669, -14.2333, 68.6708,
       -465.469, -377.374, -53.5241, 56.0476;
  return k;
}

RealMatrix counterexample_m1() {
  RealMatrix m(4, 4);
  m << 1.17e7, 2.33e6, -5.83e5, -3.59e6,
       2.33e6, 1.23e6, 2.39e5, -2.36e6,
       -5.83e5, 2.39e5, 1.44e7, 1.02e7,
       -3.59e6, -2.36e6, 1.02e7, 1.32e7;
  return m;
}

GaussianChannel counterexample_channel1() {
  return make_channel(1, 1, counterexample_k1(), counterexample_m1());
}

RealMatrix counterexample_k2() {
  RealMatrix k(4, 4);
  k << 0.89540737, 0.13270765, 0.28588588, 0.75217447,
       0.90747409, 0.75837409, 0.0462667, 0.6361504,
       0.58844177, 0.94277329, 0.64957331, 0.11012731,
       0.22886036, 0.85541575, 0.96036917, 0.96621468;
  return k;
}

RealMatrix counterexample_m2() {
  RealMatrix m(4, 4);
  m << 1.7219939, 0.6023585, 1.25044133, 0.74670078,
       0.6023585, 0.90434614, 0.83432618, 0.12961425,
       1.25044133, 0.83432618, 2.15765071, 0.39996861,
       0.74670078, 0.12961425, 0.39996861, 0.607965;
  return m;
}

GaussianChannel counterexample_channel2() {
  return make_channel(1, 1, counterexample_k2(), counterexample_m2());
}

RealMatrix shear_witness_cov() {
  RealMatrix g(4, 4);
  g << 7.84, -5, 5.84, 7.63,
       -5, 9.30, 0.82, -0.71,
       5.84, 0.82, 12.92, 15.45,
       7.63, -0.71, 15.45, 19.01;
  return g;
}

GaussianState shear_witness_state() { return make_state(1, 1, shear_witness_cov()); }

RealMatrix shear_witness_output_cov() {
  RealMatrix g(4, 4);
  g << 7.14, 4.30, 6.66, 6.92,
       4.30, 9.30, 0.82, -0.71,
       6.66, 0.82, 12.92, 15.45,
       6.92, -0.71, 15.45, 19.01;
  return g;
}

GaussianChannel shear_channel() {
  SideChannel a = SideChannel::identity(1);
  a.k << 1, 1,
         0, 1;
  return tensor_local(a, SideChannel::identity(1));
}

}  // namespace gsteer::fixtures
