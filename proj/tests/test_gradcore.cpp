#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "metarl/common/rng.hpp"
#include "metarl/gradcore/backward.hpp"

#include <cmath>

using namespace metarl;
using namespace metarl::gradcore;

namespace {

Eigen::ArrayXd random_array(int64_t n, RngStream& rng, double scale = 1.0) {
  Eigen::ArrayXd a(n);
  for (int64_t i = 0; i < n; ++i) a[i] = scale * rng.next_gaussian();
  return a;
}

NodePtr param_scalar(ParamSet& ps, const std::string& name, double v) {
  Eigen::ArrayXd a(1);
  a[0] = v;
  return ps.add(name, {}, std::move(a));
}

}  // namespace

TEST_CASE("d(x*x)/dx at x=3 is 6") {
  ParamSet ps;
  NodePtr x = param_scalar(ps, "x", 3.0);
  NodePtr loss = mul(x, x);
  GradientVector g = backward(loss, ps);
  CHECK(g.node("x")->scalar() == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("sum(tanh(W x)) gradient matches finite differences") {
  RngStream rng(7);
  ParamSet ps;
  const int m = 5, n = 4;
  ps.add("W", {m, n}, random_array(m * n, rng));
  ps.add("x", {n}, random_array(n, rng));
  auto f = [&](const ParamSet& p) {
    NodePtr xs = reshape(p.node("x"), {n, 1});
    return sum(tanh(matmul(p.node("W"), xs)));
  };
  CHECK(finite_diff_check(f, ps, 1e-5) < 1e-6);
}

TEST_CASE("gradient of gradient: d/dx of d(x^3)/dx at x=2 is 12") {
  ParamSet ps;
  NodePtr x = param_scalar(ps, "x", 2.0);
  NodePtr x3 = mul(mul(x, x), x);
  GradientVector g1 = backward(x3, ps, /*create_graph=*/true);
  CHECK(g1.node("x")->scalar() == doctest::Approx(12.0).epsilon(1e-12));  // 3x^2
  GradientVector g2 = backward(g1.node("x"), ps);
  CHECK(g2.node("x")->scalar() == doctest::Approx(12.0).epsilon(1e-12));  // 6x
}

TEST_CASE("third derivative of x^4 via repeated backward") {
  ParamSet ps;
  NodePtr x = param_scalar(ps, "x", 1.5);
  NodePtr x4 = mul(square(x), square(x));
  GradientVector g1 = backward(x4, ps, true);
  GradientVector g2 = backward(g1.node("x"), ps, true);
  GradientVector g3 = backward(g2.node("x"), ps);
  CHECK(g3.node("x")->scalar() == doctest::Approx(24.0 * 1.5).epsilon(1e-12));
}

TEST_CASE("magic_box forward is exactly one") {
  ParamSet ps;
  NodePtr a = param_scalar(ps, "a", 0.0);
  NodePtr b = param_scalar(ps, "b", -17.3);
  CHECK(magic_box(a)->scalar() == 1.0);
  CHECK(magic_box(b)->scalar() == 1.0);
  Eigen::ArrayXd v(3);
  v << 2.0, -5.0, 123.4;
  NodePtr vec = constant({3}, v);
  const Eigen::ArrayXd mb = magic_box(vec)->values();
  for (int i = 0; i < 3; ++i) CHECK(mb[i] == 1.0);
}

TEST_CASE("magic_box gradient reinstates the score term") {
  // loss = magic_box(log p(a)) * c for a 1-d Gaussian with params (mean, log std).
  // The analytic gradient is c * d(log p)/d(params); the finite-difference
  // oracle uses the shifted-exp form exp(log p - K), K frozen at the base point,
  // whose value and derivative agree with the magic-box surrogate at the base.
  RngStream rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const double a_obs = rng.next_gaussian();
    const double c = 0.5 + rng.next_double();
    ParamSet ps;
    param_scalar(ps, "mean", 0.3 * rng.next_gaussian());
    param_scalar(ps, "logstd", 0.3 * rng.next_gaussian());

    auto logp = [&](const ParamSet& p) {
      NodePtr diff = sub(scalar_const(a_obs), p.node("mean"));
      NodePtr inv_std = exp(mul(p.node("logstd"), scalar_const(-1.0)));
      NodePtr zscore = mul(diff, inv_std);
      NodePtr quad = mul(square(zscore), scalar_const(-0.5));
      NodePtr norm = add(p.node("logstd"), scalar_const(0.5 * std::log(2.0 * M_PI)));
      return sub(quad, norm);
    };

    ParamSet base = ps;
    NodePtr surrogate = mul(magic_box(logp(base)), scalar_const(c));
    CHECK(surrogate->scalar() == c);  // forward value independent of params
    const Eigen::ArrayXd analytic = backward(surrogate, base).flatten();

    const double k_frozen = logp(base)->scalar();
    auto shifted = [&](const ParamSet& p) {
      return mul(exp(sub(logp(p), scalar_const(k_frozen))), scalar_const(c));
    };
    NodePtr shifted_loss = shifted(base);
    const Eigen::ArrayXd expected = backward(shifted_loss, base).flatten();
    CHECK(finite_diff_check(shifted, base, 1e-5) < 1e-7);

    for (int i = 0; i < analytic.size(); ++i) {
      const double denom = std::max({std::abs(analytic[i]), std::abs(expected[i]), 1e-8});
      CHECK(std::abs(analytic[i] - expected[i]) / denom < 1e-5);
    }
  }
}

TEST_CASE("stop_gradient blocks flow") {
  ParamSet ps;
  NodePtr x = param_scalar(ps, "x", 5.0);

  NodePtr f = mul(stop_gradient(x), x);
  CHECK(f->scalar() == 25.0);
  CHECK(backward(f, ps).node("x")->scalar() == 5.0);

  NodePtr f2 = stop_gradient(square(x));
  // gradient does not propagate past the result
  NodePtr loss2 = sum(f2);
  CHECK(backward(loss2, ps).node("x")->scalar() == 0.0);
}

TEST_CASE("magic_box equals exp(x - stop_gradient(x)) in value and gradient") {
  RngStream rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    ParamSet ps;
    NodePtr x = param_scalar(ps, "x", 2.0 * rng.next_gaussian());
    NodePtr lhs = mul(magic_box(x), scalar_const(3.25));
    NodePtr rhs = mul(exp(sub(x, stop_gradient(x))), scalar_const(3.25));
    CHECK(lhs->scalar() == rhs->scalar());
    const double gl = backward(lhs, ps).node("x")->scalar();
    const double gr = backward(rhs, ps).node("x")->scalar();
    CHECK(gl == doctest::Approx(gr).epsilon(1e-14));
  }
}

TEST_CASE("finite_diff_check on a quadratic form") {
  RngStream rng(19);
  ParamSet ps;
  const int n = 5;
  ps.add("x", {n}, random_array(n, rng));
  Eigen::MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = rng.next_gaussian();
  auto f = [&](const ParamSet& p) {
    NodePtr xc = reshape(p.node("x"), {n, 1});
    NodePtr xr = reshape(p.node("x"), {1, n});
    return sum(matmul(xr, matmul(matrix_const(A), xc)));
  };
  CHECK(finite_diff_check(f, ps, 1e-5) < 1e-7);
}

TEST_CASE("finite_diff_check on a two-layer tanh network") {
  RngStream rng(23);
  ParamSet ps;
  const int in = 3, h = 6, out = 2;
  ps.add("W0", {in, h}, random_array(in * h, rng, 0.7));
  ps.add("b0", {h}, random_array(h, rng, 0.3));
  ps.add("W1", {h, out}, random_array(h * out, rng, 0.7));
  ps.add("b1", {out}, random_array(out, rng, 0.3));
  Eigen::MatrixXd X(4, in);
  for (int i = 0; i < X.size(); ++i) X(i / in, i % in) = rng.next_gaussian();
  auto f = [&](const ParamSet& p) {
    NodePtr h0 = tanh(add(matmul(matrix_const(X), p.node("W0")), broadcast_rows(p.node("b0"), 4)));
    NodePtr h1 = tanh(add(matmul(h0, p.node("W1")), broadcast_rows(p.node("b1"), 4)));
    return mean(square(h1));
  };
  CHECK(finite_diff_check(f, ps, 1e-5) < 1e-6);
}

TEST_CASE("finite_diff_check of a constant is zero") {
  ParamSet ps;
  param_scalar(ps, "x", 1.23);
  auto f = [&](const ParamSet&) { return scalar_const(42.0); };
  CHECK(finite_diff_check(f, ps, 1e-5) == 0.0);
}

TEST_CASE("every op matches finite differences (randomized property)") {
  RngStream rng(101);
  int trials = 0;
  for (int trial = 0; trial < 110; ++trial) {
    ParamSet ps;
    const int m = 2 + static_cast<int>(rng.next_below(3));
    const int k = 2 + static_cast<int>(rng.next_below(3));
    const int n = 2 + static_cast<int>(rng.next_below(2));
    ps.add("A", {m, k}, random_array(m * k, rng, 0.8));
    ps.add("B", {k, n}, random_array(k * n, rng, 0.8));
    ps.add("v", {k}, random_array(k, rng, 0.8));
    ps.add("u", {m}, random_array(m, rng, 0.8));
    param_scalar(ps, "s", 0.5 + rng.next_double());

    auto f = [&](const ParamSet& p) {
      NodePtr A = p.node("A");
      NodePtr B = p.node("B");
      NodePtr v = p.node("v");
      NodePtr u = p.node("u");
      NodePtr s = p.node("s");

      NodePtr prod = matmul(A, B);                                   // [m,n]
      NodePtr act = tanh(add(prod, broadcast_scalar(s, {m, n})));    // add, tanh
      NodePtr scaled = div(act, add(square(s), scalar_const(1.0)));  // div, square
      NodePtr vb = broadcast_rows(v, m);                             // [m,k]
      NodePtr both = concat_cols(mul(A, vb), broadcast_cols(u, k));  // mul, concat
      NodePtr sl = slice_cols(both, 1, k);                           // slice
      NodePtr rows = sum_rows(sl);                                   // [m]
      NodePtr cols = sum_cols(act);                                  // [n]
      NodePtr vecs = concat_vec(rows, cols);                         // [m+n]
      NodePtr clipped = clip(vecs, -0.75, 0.75);
      NodePtr small = minimum(vecs, exp(mul(vecs, scalar_const(0.3))));
      NodePtr pos = log(add(square(small), scalar_const(1.0)));
      NodePtr svec = slice_vec(pos, 1, m);
      NodePtr padded = pad_vec(svec, 0, m + n);
      NodePtr t = transpose(reshape(padded, {1, m + n}));
      NodePtr frozen = stop_gradient(sum(vecs));
      // magic_box is excluded here: finite differences of its constant
      // forward value cannot see the score term; its gradient contract is
      // covered by the dedicated shifted-exp equivalence tests.
      return add(add(sum(t), mean(sub(pos, clipped))),
                 mul(frozen, scalar_const(0.0)));
    };

    // Clip and minimum have kinks; skip draws that land near them so the
    // central difference stays valid.
    NodePtr probe_vecs = [&]() {
      NodePtr A = ps.node("A");
      NodePtr v = ps.node("v");
      NodePtr u = ps.node("u");
      const int mm = A->rows();
      NodePtr both = concat_cols(mul(A, broadcast_rows(v, mm)), broadcast_cols(u, A->cols()));
      return concat_vec(sum_rows(slice_cols(both, 1, A->cols())),
                        sum_cols(tanh(add(matmul(A, ps.node("B")),
                                          broadcast_scalar(ps.node("s"), {mm, ps.node("B")->cols()})))));
    }();
    const Eigen::ArrayXd pv = probe_vecs->values();
    const Eigen::ArrayXd ev = (pv * 0.3).exp();
    bool near_kink = false;
    for (int i = 0; i < pv.size(); ++i) {
      if (std::abs(std::abs(pv[i]) - 0.75) < 1e-3) near_kink = true;
      if (std::abs(pv[i] - ev[i]) < 1e-3) near_kink = true;
    }
    if (near_kink) continue;

    ++trials;
    CHECK(finite_diff_check(f, ps, 1e-5) < 1e-5);
  }
  CHECK(trials >= 100);
}

TEST_CASE("backward never mutates forward values") {
  RngStream rng(41);
  ParamSet ps;
  ps.add("W", {3, 3}, random_array(9, rng));
  ps.add("x", {3}, random_array(3, rng));
  NodePtr xs = reshape(ps.node("x"), {3, 1});
  NodePtr h = tanh(matmul(ps.node("W"), xs));
  NodePtr loss = sum(square(h));
  const Eigen::ArrayXd before_h = h->values();
  const double before_loss = loss->scalar();
  backward(loss, ps, true);
  backward(loss, ps, false);
  CHECK((h->values() == before_h).all());
  CHECK(loss->scalar() == before_loss);
}

TEST_CASE("unreachable leaves get zero gradients") {
  ParamSet ps;
  NodePtr x = param_scalar(ps, "x", 2.0);
  NodePtr y = param_scalar(ps, "y", 3.0);
  NodePtr loss = mul(x, x);
  GradientVector g = backward(loss, ps);
  CHECK(g.node("x")->scalar() == 4.0);
  CHECK(g.node("y")->scalar() == 0.0);
}

TEST_CASE("non-scalar loss is rejected") {
  ParamSet ps;
  ps.add("v", {3}, Eigen::ArrayXd::Ones(3));
  CHECK_THROWS_AS(backward(ps.node("v"), ps), std::invalid_argument);
}

TEST_CASE("non-finite forward values are rejected") {
  Eigen::ArrayXd v(2);
  v << 1.0, 0.0;
  NodePtr z = constant({2}, v);
  CHECK_THROWS_AS(log(z), NonFiniteError);   // log(0) = -inf
  CHECK_THROWS_AS(div(scalar_const(1.0), z), NonFiniteError);
}

TEST_CASE("clip has zero gradient outside the region") {
  ParamSet ps;
  Eigen::ArrayXd v(3);
  v << -2.0, 0.5, 3.0;
  ps.add("x", {3}, v);
  NodePtr loss = sum(clip(ps.node("x"), -1.0, 1.0));
  const Eigen::ArrayXd g = backward(loss, ps).node("x")->values();
  CHECK(g[0] == 0.0);
  CHECK(g[1] == 1.0);
  CHECK(g[2] == 0.0);
}

TEST_CASE("minimum routes gradient to the smaller branch") {
  ParamSet ps;
  NodePtr a = param_scalar(ps, "a", 1.0);
  NodePtr b = param_scalar(ps, "b", 2.0);
  NodePtr loss = minimum(mul(a, scalar_const(3.0)), mul(b, scalar_const(5.0)));
  GradientVector g = backward(loss, ps);
  CHECK(g.node("a")->scalar() == 3.0);
  CHECK(g.node("b")->scalar() == 0.0);
}

TEST_CASE("ParamSet flatten/unflatten round-trips exactly") {
  RngStream rng(53);
  ParamSet ps;
  ps.add("a", {2, 3}, random_array(6, rng));
  ps.add("b", {4}, random_array(4, rng));
  param_scalar(ps, "c", rng.next_gaussian());
  const Eigen::ArrayXd flat = ps.flatten();
  ParamSet round = ps.with_values(flat);
  for (size_t i = 0; i < ps.size(); ++i) {
    CHECK(ps.entry(i).first == round.entry(i).first);
    CHECK((ps.entry(i).second->values() == round.entry(i).second->values()).all());
  }
  CHECK_THROWS_AS(ps.add("a", {1}, Eigen::ArrayXd::Zero(1)), std::invalid_argument);
}

TEST_CASE("second derivatives of polynomials are exact") {
  // f(x,y) = x^3 y + 2 x y^2; checks full Hessian against closed form.
  const double x0 = 1.3, y0 = -0.7;
  ParamSet ps;
  NodePtr x = param_scalar(ps, "x", x0);
  NodePtr y = param_scalar(ps, "y", y0);
  NodePtr f = add(mul(mul(mul(x, x), x), y), mul(scalar_const(2.0), mul(x, square(y))));
  GradientVector g = backward(f, ps, true);
  GradientVector gxx = backward(g.node("x"), ps, true);
  GradientVector gyy = backward(g.node("y"), ps, true);
  CHECK(gxx.node("x")->scalar() == doctest::Approx(6.0 * x0 * y0).epsilon(1e-13));
  CHECK(gxx.node("y")->scalar() == doctest::Approx(3.0 * x0 * x0 + 4.0 * y0).epsilon(1e-13));
  CHECK(gyy.node("x")->scalar() == doctest::Approx(3.0 * x0 * x0 + 4.0 * y0).epsilon(1e-13));
  CHECK(gyy.node("y")->scalar() == doctest::Approx(4.0 * x0).epsilon(1e-13));
}
