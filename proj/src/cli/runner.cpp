#include "mcforge/cli/runner.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <memory>
#include <thread>

#include "mcforge/cli/resolve.hpp"
#include "mcforge/sampling.hpp"

namespace mcforge::cli {

using nlohmann::ordered_json;
using numerics::FdConfig;
using sampling::Sampler;

namespace {

using Job = std::function<CheckRecord()>;

const FdConfig kOuterFd{1e-3, false};
// MC defect level separating "solves MC" from "does not" in equivalence checks.
constexpr double kMcThreshold = 1e-4;

std::vector<double> concat(std::initializer_list<Vector> parts) {
  std::vector<double> out;
  for (const Vector& v : parts) out.insert(out.end(), v.data(), v.data() + v.size());
  return out;
}

// Each suite draws from its own stream so that adding or reordering suites
// does not change the points of the others.
Sampler suite_sampler(std::uint64_t seed, const std::string& suite) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : suite) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return Sampler(seed ^ h);
}

Job guarded(std::string name, std::vector<double> point, double tol, std::function<CheckRecord()> body) {
  return [name = std::move(name), point = std::move(point), tol, body = std::move(body)]() {
    try {
      return body();
    } catch (const Error& e) {
      return error_record(name, point, tol, e.what());
    }
  };
}

Vector scalar(double v) { return Vector::Constant(1, v); }

Tensor3 random_tensor(Sampler& rng, int d0, int d1, int d2) {
  Tensor3 t(d0, d1, d2);
  for (int k = 0; k < d0; ++k)
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d2; ++j) t(k, i, j) = rng.uniform(-1.0, 1.0);
  return t;
}

// Point strictly inside the box, near its center.
Vector base_sample(Sampler& rng, const Box& box, double fraction) {
  Vector x(box.dim());
  for (int i = 0; i < box.dim(); ++i) {
    const double mid = 0.5 * (box.lower[i] + box.upper[i]);
    const double half = 0.5 * (box.upper[i] - box.lower[i]);
    x[i] = mid + rng.uniform(-fraction, fraction) * std::min(half, 1.0);
  }
  return x;
}

void prelie_jobs(const Scenario& s, const std::string& suite, std::vector<Job>& jobs) {
  const auto form = std::make_shared<prelie::LieMCOneForm>(
      resolve_algebra(s), numerics::QuadratureRule::gauss_legendre(s.numerics.quad_order));
  const prelie::PreLieAlgebra& alg = form->algebra();
  const int n = alg.dim();
  const double tol = s.tolerance(suite);
  const FdConfig fd{s.numerics.fd_step, false};
  const numerics::OdeConfig ode{s.numerics.ode_steps};
  Sampler rng = suite_sampler(s.seed, suite);

  if (suite == "jacobi") {
    jobs.push_back(guarded(suite, {}, tol, [form, suite, tol] {
      return make_record(suite, {}, scalar(prelie::max_basis_jacobiator(form->algebra())), scalar(0.0), tol);
    }));
    return;
  }
  if (suite == "equivalence") {
    std::vector<Vector> xs;
    for (int p = 0; p < s.points; ++p) xs.push_back(rng.in_ball(n, 1.0));
    jobs.push_back(guarded(suite, {}, tol, [form, xs, suite, tol, fd, n] {
      double worst = 0.0;
      for (const Vector& x : xs)
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j)
            worst = std::max(worst, max_abs(prelie::mc_defect(*form, x, unit(n, i), unit(n, j), fd)));
      const bool lie = prelie::is_lie(form->algebra(), 1e-10);
      // Both sides as 0/1 indicators: is Lie, and MC defect below the threshold.
      return make_record(suite, {}, scalar(lie ? 1.0 : 0.0), scalar(worst < kMcThreshold ? 1.0 : 0.0), tol);
    }));
    return;
  }
  if (suite == "mc_defect") {
    for (int p = 0; p < s.points; ++p) {
      const Vector x = rng.in_ball(n, 1.0);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const Vector y = unit(n, i), z = unit(n, j);
          const auto point = concat({x, y, z});
          jobs.push_back(guarded(suite, point, tol, [=] {
            return make_record(suite, point, prelie::mc_defect(*form, x, y, z, fd), Vector::Zero(n), tol);
          }));
        }
    }
    return;
  }
  for (int p = 0; p < s.points; ++p) {
    const Vector x = rng.in_ball(n, 1.0);
    const Vector y = rng.in_ball(n, 1.0);
    const Vector z = rng.in_ball(n, 1.0);
    if (suite == "solve_one_form") {
      const auto point = concat({x, y});
      jobs.push_back(guarded(suite, point, tol, [=] {
        return make_record(suite, point, prelie::solve_one_form(*form, x, y),
                           prelie::solve_one_form_by_ode(form->algebra(), x, y, ode), tol);
      }));
    } else if (suite == "weak_equation") {
      const auto point = concat({x, y});
      jobs.push_back(guarded(suite, point, tol, [=] {
        return make_record(suite, point, prelie::verify_weak_equation(*form, x, y, fd), Vector::Zero(n), tol);
      }));
    } else if (suite == "derivative_identity") {
      const auto point = concat({x, y, z});
      jobs.push_back(guarded(suite, point, tol, [=] {
        const IdentityPair r = prelie::verify_derivative_identity(*form, x, y, z, fd, kOuterFd);
        return make_record(suite, point, r.lhs, r.rhs, tol);
      }));
    } else if (suite == "integral_identity") {
      const auto point = concat({x, y, z});
      jobs.push_back(guarded(suite, point, tol, [=] {
        const IdentityPair r = prelie::verify_integral_identity(*form, x, y, z, fd);
        return make_record(suite, point, r.lhs, r.rhs, tol);
      }));
    }
  }
}

void poisson_jobs(const Scenario& s, const std::string& suite, std::vector<Job>& jobs) {
  const auto form = std::make_shared<poisson::PoissonMCOneForm>(
      resolve_bivector(s), numerics::QuadratureRule::gauss_legendre(s.numerics.quad_order),
      numerics::OdeConfig{s.numerics.ode_steps});
  const poisson::BivectorField& bv = form->bivector();
  const int n = bv.dim();
  const double tol = s.tolerance(suite);
  const FdConfig fd{s.numerics.fd_step, false};
  Sampler rng = suite_sampler(s.seed, suite);

  for (int p = 0; p < s.points; ++p) {
    const Vector x = base_sample(rng, bv.domain(), 0.5);
    const poisson::Covector xi{rng.in_ball(n, 0.2)};
    const poisson::Covector zeta{rng.in_ball(n, 1.0)};
    const poisson::Covector eta{rng.in_ball(n, 1.0)};
    if (suite == "jacobiator") {
      const auto point = concat({x});
      jobs.push_back(guarded(suite, point, tol, [=] {
        std::vector<double> vals;
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
              vals.push_back(poisson::jacobiator_linear(form->bivector(), {unit(n, i)}, {unit(n, j)},
                                                        {unit(n, k)}, x, fd));
        const Vector lhs = Eigen::Map<const Vector>(vals.data(), Eigen::Index(vals.size()));
        return make_record(suite, point, lhs, Vector::Zero(lhs.size()), tol);
      }));
    } else if (suite == "mc_defect" || suite == "weak_equation") {
      const bool weak = suite == "weak_equation";
      const auto point = weak ? concat({x, xi.components, zeta.components})
                              : concat({x, xi.components, zeta.components, eta.components});
      jobs.push_back(guarded(suite, point, tol, [=] {
        const double d = weak ? poisson::mc_defect(*form, x, xi, xi, zeta, fd)
                              : poisson::mc_defect(*form, x, xi, zeta, eta, fd);
        return make_record(suite, point, scalar(d), scalar(0.0), tol);
      }));
    } else if (suite == "derivative_identity" || suite == "integral_identity") {
      const bool deriv = suite == "derivative_identity";
      const auto point = concat({x, xi.components, zeta.components, eta.components});
      jobs.push_back(guarded(suite, point, tol, [=] {
        const poisson::ScalarPair r = deriv ? poisson::verify_derivative_identity(*form, x, xi, zeta, eta, fd, kOuterFd)
                                            : poisson::verify_integral_identity(*form, x, xi, zeta, eta, fd);
        return make_record(suite, point, scalar(r.lhs), scalar(r.rhs), tol);
      }));
    } else if (suite == "realization" || suite == "zero_section") {
      const poisson::Covector at = suite == "zero_section" ? poisson::Covector{Vector::Zero(n)} : xi;
      const auto point = concat({x, at.components});
      jobs.push_back(guarded(suite, point, tol, [=] {
        const Matrix d = poisson::realization_defect(*form, x, at, fd);
        std::vector<double> vals;
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) vals.push_back(d(i, j));
        const Vector lhs = Eigen::Map<const Vector>(vals.data(), Eigen::Index(vals.size()));
        return make_record(suite, point, lhs, Vector::Zero(lhs.size()), tol);
      }));
    }
  }
}

void algebroid_jobs(const Scenario& s, const std::string& suite, std::vector<Job>& jobs) {
  const fixtures::AlgebroidFixture fx = resolve_algebroid(s);
  const auto form = std::make_shared<algebroid::AlgebroidMCOneForm>(
      fx.algebroid, fx.connection, numerics::QuadratureRule::gauss_legendre(s.numerics.quad_order),
      numerics::OdeConfig{s.numerics.ode_steps}, FdConfig{s.numerics.fd_step, false});
  const algebroid::PreLieAlgebroid& alg = form->algebroid();
  const int m = alg.base_dim();
  const int r = alg.rank();
  const double tol = s.tolerance(suite);
  const FdConfig fd{s.numerics.fd_step, false};
  const numerics::OdeConfig ode{s.numerics.ode_steps};
  Sampler rng = suite_sampler(s.seed, suite);

  const auto zero_aux = algebroid::AuxConnection::zero(m, r);
  std::vector<algebroid::Sample> samples;
  for (int p = 0; p < s.points; ++p)
    samples.push_back({base_sample(rng, alg.domain(), 0.5), rng.in_ball(r, 0.5), rng.in_ball(r, 1.0),
                       rng.in_ball(r, 1.0)});

  if (suite == "equivalence") {
    jobs.push_back(guarded(suite, {}, tol, [=] {
      double jac = 0.0, mc = 0.0;
      for (const auto& smp : samples) {
        jac = std::max(jac, algebroid::frame_jacobiator(form->algebroid(), smp.x, fd).max_norm());
        mc = std::max(mc, max_abs(algebroid::mc_defect(*form, zero_aux, smp.x, smp.a, smp.b, smp.c, fd)));
      }
      return make_record(suite, {}, scalar(jac < 1e-8 ? 1.0 : 0.0), scalar(mc < kMcThreshold ? 1.0 : 0.0), tol);
    }));
    return;
  }

  for (const auto& smp : samples) {
    const Vector x = smp.x, a = smp.a, b = smp.b, c = smp.c;
    if (suite == "jacobiator") {
      const auto point = concat({x});
      jobs.push_back(guarded(suite, point, tol, [=] {
        const auto jac = algebroid::frame_jacobiator(form->algebroid(), x, fd);
        std::vector<double> vals;
        for (int i = 0; i < r; ++i)
          for (int j = i + 1; j < r; ++j)
            for (int k = j + 1; k < r; ++k) {
              const Vector& v = jac.at(i, j, k);
              vals.insert(vals.end(), v.data(), v.data() + v.size());
            }
        const Vector lhs = Eigen::Map<const Vector>(vals.data(), Eigen::Index(vals.size()));
        return make_record(suite, point, lhs, Vector::Zero(lhs.size()), tol);
      }));
    } else if (suite == "geodesic_scaling") {
      for (double scale : {0.3, 0.5, 2.0}) {
        auto point = concat({x, a});
        point.push_back(scale);
        const bool optional = scale > 1.0;
        jobs.push_back([=]() -> CheckRecord {
          try {
            const auto& A = form->algebroid();
            const Vector lhs = algebroid::geodesic_point(A, form->connection(), x, scale * a, 1.0, ode).fiber;
            const Vector rhs = scale * algebroid::geodesic_point(A, form->connection(), x, a, scale, ode).fiber;
            return make_record(suite, point, lhs, rhs, tol);
          } catch (const NotInA0Error& e) {
            // Scaling beyond 1 is only required inside A0.
            if (optional) {
              CheckRecord rec = make_record(suite, point, Vector(), Vector(), tol);
              rec.reason = std::string("skipped: ") + e.what();
              return rec;
            }
            return error_record(suite, point, tol, e.what());
          } catch (const Error& e) {
            return error_record(suite, point, tol, e.what());
          }
        });
      }
    } else if (suite == "a_path") {
      const auto point = concat({x, a});
      jobs.push_back(guarded(suite, point, tol, [=] {
        const auto geo = algebroid::geodesic(form->algebroid(), form->connection(), x, a, ode);
        const auto& ts = geo.base.times;
        const auto& ys = geo.base.states;
        double worst = 0.0;
        for (std::size_t i = 2; i + 2 < ts.size(); ++i) {
          const double h = ts[i + 1] - ts[i];
          const Vector vel = (ys[i - 2] - 8.0 * ys[i - 1] + 8.0 * ys[i + 1] - ys[i + 2]) / (12.0 * h);
          const Vector want = form->algebroid().anchor(ys[i]) * geo.fiber.states[i];
          worst = std::max(worst, max_abs(Vector(vel - want)));
        }
        if (!geo.reached_time_one) throw NotInA0Error("geodesic leaves the domain before t = 1");
        return make_record(suite, point, scalar(worst), scalar(0.0), tol);
      }));
    } else if (suite == "boundary") {
      const auto point = concat({x, a});
      jobs.push_back(guarded(suite, point, tol, [=] {
        return make_record(suite, point, algebroid::solve_one_form(*form, x, a, a),
                           algebroid::exp_and_target(form->algebroid(), form->connection(), x, a, ode).exp, tol);
      }));
    } else if (suite == "anchoredness") {
      const auto point = concat({x, a, b});
      jobs.push_back(guarded(suite, point, tol, [=] {
        const Vector tau = algebroid::target(*form, x, a);
        return make_record(suite, point, form->algebroid().anchor(tau) * algebroid::solve_one_form(*form, x, a, b),
                           algebroid::target_differential(*form, x, a, b), tol);
      }));
    } else if (suite == "mc_defect") {
      const auto point = concat({x, a, b, c});
      jobs.push_back(guarded(suite, point, tol, [=] {
        return make_record(suite, point, algebroid::mc_defect(*form, zero_aux, x, a, b, c, fd), Vector::Zero(r),
                           tol);
      }));
    } else if (suite == "connection_independence") {
      const auto aux1 = algebroid::AuxConnection::constant(random_tensor(rng, r, m, r));
      const auto aux2 = algebroid::AuxConnection::constant(random_tensor(rng, r, m, r));
      const auto point = concat({x, a, b, c});
      jobs.push_back(guarded(suite, point, tol, [=] {
        const double defect = std::max(algebroid::anchoredness_defect(*form, x, a, b),
                                       algebroid::anchoredness_defect(*form, x, a, c));
        if (defect > 1e-5) throw NotAnchoredError("not anchored: defect " + std::to_string(defect), defect);
        return make_record(suite, point, algebroid::mc_defect(*form, aux1, x, a, b, c, fd),
                           algebroid::mc_defect(*form, aux2, x, a, b, c, fd), tol);
      }));
    } else if (suite == "derivative_identity" || suite == "integral_identity") {
      const bool deriv = suite == "derivative_identity";
      const auto point = concat({x, a, b, c});
      jobs.push_back(guarded(suite, point, tol, [=] {
        const IdentityPair p = deriv ? algebroid::verify_derivative_identity(*form, x, a, b, c, fd, kOuterFd)
                                     : algebroid::verify_integral_identity(*form, x, a, b, c, fd);
        return make_record(suite, point, p.lhs, p.rhs, tol);
      }));
    }
  }
}

void bridge_jobs(const Scenario& s, const std::string& suite, std::vector<Job>& jobs) {
  const auto bv = std::make_shared<poisson::BivectorField>(resolve_bivector(s));
  const int n = bv->dim();
  const double tol = s.tolerance(suite);
  algebroid::BridgeConfig cfg;
  cfg.rule = numerics::QuadratureRule::gauss_legendre(s.numerics.quad_order);
  cfg.ode = numerics::OdeConfig{s.numerics.ode_steps};
  cfg.fd = FdConfig{s.numerics.fd_step, false};
  Sampler rng = suite_sampler(s.seed, suite);
  for (int p = 0; p < s.points; ++p) {
    const Vector x = base_sample(rng, bv->domain(), 0.5);
    const Vector xi = rng.in_ball(n, 0.2);
    const Vector zeta = rng.in_ball(n, 1.0);
    if (suite == "bridge") {
      const auto point = concat({x, xi, zeta});
      jobs.push_back(guarded(suite, point, tol, [=] {
        const IdentityPair r = algebroid::poisson_algebroid_bridge_pair(*bv, {x, xi, zeta}, cfg);
        return make_record(suite, point, r.lhs, r.rhs, tol);
      }));
    } else if (suite == "anchor_compatibility") {
      const auto point = concat({x});
      jobs.push_back(guarded(suite, point, tol, [=] {
        const auto cot = algebroid::cotangent_algebroid(*bv, cfg.fd);
        return make_record(suite, point, scalar(algebroid::anchor_compatibility_defect(cot, x, cfg.fd)),
                           scalar(0.0), tol);
      }));
    }
  }
}

std::vector<CheckRecord> execute(const std::vector<Job>& jobs, int threads) {
  std::vector<CheckRecord> out(jobs.size());
  const int workers = std::max(1, std::min<int>(threads, int(jobs.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) out[i] = jobs[i]();
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < jobs.size(); i = next++) out[i] = jobs[i]();
    });
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace

ordered_json environment(const Scenario& s) {
  ordered_json env;
  env["quadrature"] = "gauss-legendre";
  env["quadrature_order"] = s.numerics.quad_order;
  env["ode_method"] = "rk4";
  env["ode_steps"] = s.numerics.ode_steps;
  env["fd_step"] = s.numerics.fd_step;
  env["fd_outer_step"] = kOuterFd.step;
  env["fd_richardson"] = false;
  env["sign_conventions"] = {
      {"poisson", poisson::kSignConvention},
      {"algebroid",
       "[e_i,e_j] = c^k_ij e_k; geodesic d gamma/dt = rho(gamma) g, dg^k/dt = -Gamma^k_ij g^i g^j; "
       "time-dependent sections extended spatially constant in the trivialization"}};
  env["bridge_gradient_point"] = "base point x";
  return env;
}

Report run(const Scenario& s, const RunOptions& options) {
  Report report;
  report.scenario = scenario_echo(s);
  report.environment = environment(s);
  std::vector<Job> jobs;
  for (const std::string& suite : s.suite) {
    try {
      switch (s.kind) {
        case Kind::prelie: prelie_jobs(s, suite, jobs); break;
        case Kind::poisson: poisson_jobs(s, suite, jobs); break;
        case Kind::algebroid: algebroid_jobs(s, suite, jobs); break;
        case Kind::bridge: bridge_jobs(s, suite, jobs); break;
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      jobs.push_back([suite, tol = s.tolerance(suite), what = std::string(e.what())] {
        return error_record(suite, {}, tol, what);
      });
    }
  }
  report.checks = execute(jobs, options.threads);
  return report;
}

}  // namespace mcforge::cli
