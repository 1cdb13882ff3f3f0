#include "hzeta/moments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <utility>

#include "hzeta/constants.hpp"
#include "hzeta/hybrid.hpp"
#include "hzeta/lfun.hpp"
#include "hzeta/primes.hpp"
#include "hzeta/quadrature.hpp"

namespace hzeta {

namespace {

constexpr double kEvalTol = 1e-8;    // per-node evaluator tolerance
constexpr std::size_t kChunkPanels = 1024;
constexpr int kMaxSplitDepth = 10;   // bisections before a failing node is dropped
constexpr double kPxFloor = 1e-14;   // |P_X| below this counts as a zero

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

// Writes m component values at t into out.  Throwing an evaluator error
// (runtime_error or domain_error) marks the node as singular.
using NodeFn = std::function<void(double t, double* out)>;

// In-place pairwise reduction of n rows of width m; row 0 receives the total.
// The summation tree depends only on n and m, never on scheduling.
void pairwise_rows(std::vector<double>& buf, std::size_t n, int m) {
  for (std::size_t step = 1; step < n; step *= 2)
    for (std::size_t i = 0; i + step < n; i += 2 * step)
      for (int c = 0; c < m; ++c) buf[i * m + c] += buf[(i + step) * m + c];
}

struct Workspace {
  std::vector<double> rows;      // per-panel sums within the current chunk
  std::vector<double> panel_acc; // one panel, including subdivided parts
  std::vector<double> sub_acc;   // one subdivision attempt
  std::vector<double> node_vals;
};

bool try_panel(const NodeFn& f, int m, double a, double b, const GaussLegendre& gl,
               Workspace& ws, std::uint64_t& nodes) {
  std::fill(ws.sub_acc.begin(), ws.sub_acc.end(), 0.0);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (std::size_t j = 0; j < gl.x.size(); ++j) {
    const double t = mid + half * gl.x[j];
    ++nodes;
    try {
      f(t, ws.node_vals.data());
    } catch (const std::runtime_error&) {
      return false;
    } catch (const std::domain_error&) {
      return false;
    }
    const double w = half * gl.w[j];
    for (int c = 0; c < m; ++c) ws.sub_acc[c] += w * ws.node_vals[c];
  }
  return true;
}

void eval_panel(const NodeFn& f, int m, double a, double b, int depth,
                const GaussLegendre& gl, Workspace& ws, std::uint64_t& nodes,
                bool& flagged) {
  if (try_panel(f, m, a, b, gl, ws, nodes)) {
    for (int c = 0; c < m; ++c) ws.panel_acc[c] += ws.sub_acc[c];
    return;
  }
  if (depth == kMaxSplitDepth) {
    flagged = true;  // drop the failing sliver, mark the estimate
    return;
  }
  const double mid = 0.5 * (a + b);
  eval_panel(f, m, a, mid, depth + 1, gl, ws, nodes, flagged);
  eval_panel(f, m, mid, b, depth + 1, gl, ws, nodes, flagged);
}

struct PassStats {
  std::uint64_t nodes = 0;
  bool flagged = false;
};

// One composite pass at fixed panel width.  Panels are grouped into chunks of
// kChunkPanels; workers pick chunks dynamically but each chunk partial is
// stored at its chunk index and the final merge is a fixed pairwise tree, so
// the result is bit-identical for any worker count.
std::vector<double> run_pass(const NodeFn& f, int m, double T, double width, int order,
                             int workers, PassStats& stats) {
  const double lo = T, hi = 2.0 * T;
  const auto n_panels = (std::size_t)std::ceil((hi - lo) / width - 1e-12);
  const std::size_t n_chunks = (n_panels + kChunkPanels - 1) / kChunkPanels;
  const GaussLegendre& gl = gauss_legendre(order);

  std::vector<double> chunk_partials(n_chunks * (std::size_t)m, 0.0);
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> flagged{false};
  std::exception_ptr first_error = nullptr;
  std::mutex err_mu;

  auto work = [&]() {
    Workspace ws;
    ws.rows.resize(kChunkPanels * (std::size_t)m);
    ws.panel_acc.resize(m);
    ws.sub_acc.resize(m);
    ws.node_vals.resize(m);
    std::uint64_t local_nodes = 0;
    bool local_flag = false;
    try {
      for (;;) {
        const std::size_t ci = next.fetch_add(1);
        if (ci >= n_chunks) break;
        const std::size_t p0 = ci * kChunkPanels;
        const std::size_t p1 = std::min(p0 + kChunkPanels, n_panels);
        for (std::size_t p = p0; p < p1; ++p) {
          const double a = lo + (double)p * width;
          const double b = std::min(a + width, hi);
          std::fill(ws.panel_acc.begin(), ws.panel_acc.end(), 0.0);
          eval_panel(f, m, a, b, 0, gl, ws, local_nodes, local_flag);
          std::copy(ws.panel_acc.begin(), ws.panel_acc.end(),
                    ws.rows.begin() + (p - p0) * (std::size_t)m);
        }
        pairwise_rows(ws.rows, p1 - p0, m);
        std::copy(ws.rows.begin(), ws.rows.begin() + m,
                  chunk_partials.begin() + ci * (std::size_t)m);
      }
    } catch (...) {
      std::lock_guard<std::mutex> g(err_mu);
      if (!first_error) first_error = std::current_exception();
    }
    nodes.fetch_add(local_nodes);
    if (local_flag) flagged.store(true);
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  pairwise_rows(chunk_partials, n_chunks, m);
  stats.nodes += nodes.load();
  stats.flagged = stats.flagged || flagged.load();
  chunk_partials.resize(m);
  return chunk_partials;
}

struct EngineResult {
  std::vector<double> values;
  std::vector<double> deltas;
  std::uint64_t node_count = 0;
  int refinements = 0;
  bool converged = false;
  bool flagged = false;
};

void check_spec(const QuadratureSpec& spec) {
  if (!(spec.panel_width > 0.0))
    throw std::domain_error("quadrature: panel_width must be positive");
  if (spec.nodes_per_panel < 1 || spec.nodes_per_panel > 1024)
    throw std::domain_error("quadrature: nodes_per_panel out of range");
  if (!(spec.refine_tol > 0.0))
    throw std::domain_error("quadrature: refine_tol must be positive");
  if (spec.max_refinements < 0 || spec.max_refinements > 16)
    throw std::domain_error("quadrature: max_refinements out of range");
}

// Runs passes at width, width/2, ... until every component is stable to
// refine_tol relative to its own size (small components are judged against
// 1e-3 of the largest, so cancelling cross terms do not force refinement).
EngineResult integrate_components(const NodeFn& f, int m, double T,
                                  const QuadratureSpec& spec, int workers) {
  if (!(T >= 10.0)) throw std::domain_error("quadrature: T must be at least 10");
  check_spec(spec);

  PassStats stats;
  double width = spec.panel_width;
  EngineResult res;
  res.values = run_pass(f, m, T, width, spec.nodes_per_panel, workers, stats);
  res.deltas.assign(m, 0.0);
  res.converged = (spec.max_refinements == 0);
  for (int r = 1; r <= spec.max_refinements; ++r) {
    width *= 0.5;
    auto cur = run_pass(f, m, T, width, spec.nodes_per_panel, workers, stats);
    double max_mag = 0.0;
    for (int c = 0; c < m; ++c) max_mag = std::max(max_mag, std::abs(cur[c]));
    bool ok = true;
    for (int c = 0; c < m; ++c) {
      res.deltas[c] = std::abs(cur[c] - res.values[c]);
      const double scale = std::max({std::abs(cur[c]), 1e-3 * max_mag, 1e-300});
      if (res.deltas[c] > spec.refine_tol * scale) ok = false;
    }
    res.values = std::move(cur);
    res.refinements = r;
    if (ok) {
      res.converged = true;
      break;
    }
  }
  res.node_count = stats.nodes;
  res.flagged = stats.flagged;
  return res;
}

MomentEstimate make_estimate(const EngineResult& er, int component, double T,
                             clock_type::time_point t0) {
  MomentEstimate est;
  est.value = er.values[component];
  est.quad_error_est = er.deltas[component];
  est.T = T;
  est.node_count = er.node_count;
  est.refinements = er.refinements;
  est.converged = er.converged;
  est.singular_flagged = er.flagged;
  est.wall_seconds = seconds_since(t0);
  return est;
}

bool outside_log_window(double X, double T) { return X > std::pow(std::log(T), 2.0); }

std::complex<double> int_pow(std::complex<double> z, int e) {
  std::complex<double> v = 1.0;
  for (int i = 0; i < e; ++i) v *= z;
  return v;
}

void check_exponents(const ExponentTuple& ell) {
  if (!ell.group) throw std::domain_error("exponent tuple: missing character group");
  if (ell.e.size() != ell.group->size())
    throw std::domain_error("exponent tuple: size does not match the group");
  for (int e : ell.e)
    if (e < 0) throw std::domain_error("exponent tuple: exponents must be >= 0");
}

// Shared bank plus the per-character data an integrand needs.
struct ProductContext {
  UnitZetaBank bank;
  std::vector<std::vector<std::complex<double>>> chi_vals;
  std::vector<int> exps;

  ProductContext(const ExponentTuple& ell, double T)
      : bank(ell.group, 0.5, 2.0 * T + 1.0) {
    for (std::size_t i = 0; i < ell.e.size(); ++i) {
      if (ell.e[i] == 0) continue;
      chi_vals.push_back(bank.character_values(ell.group->character(i)));
      exps.push_back(ell.e[i]);
    }
  }

  std::complex<double> l_product_at(const std::vector<std::complex<double>>& zs,
                                    double t) const {
    std::complex<double> v = 1.0;
    for (std::size_t i = 0; i < chi_vals.size(); ++i)
      v *= int_pow(bank.l_from_units(chi_vals[i], zs, t), exps[i]);
    return v;
  }
};

}  // namespace

int resolve_workers(int requested) {
  if (requested >= 1) return std::min(requested, 64);
  if (const char* env = std::getenv("HZETA_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return (int)std::min<long>(v, 64);
  }
  return 1;
}

MomentEstimate mean_square(const LineFunction& f, double T, const QuadratureSpec& spec,
                           int workers) {
  const auto t0 = clock_type::now();
  NodeFn node = [&f](double t, double* out) { out[0] = std::norm(f(t)); };
  auto er = integrate_components(node, 1, T, spec, resolve_workers(workers));
  return make_estimate(er, 0, T, t0);
}

MomentEstimate hurwitz_moment(int k, const Rational& alpha, double T,
                              const QuadratureSpec& spec, int workers) {
  if (k < 1 || k > 3) throw std::domain_error("hurwitz_moment: k must be 1, 2, or 3");
  const auto t0 = clock_type::now();
  HurwitzEvaluator ev(alpha, 0.5, 2.0 * T + 1.0);
  NodeFn node = [&ev, k](double t, double* out) {
    const double a2 = std::norm(ev.eval(t, kEvalTol).value);
    double v = a2;
    for (int j = 1; j < k; ++j) v *= a2;
    out[0] = v;
  };
  auto er = integrate_components(node, 1, T, spec, resolve_workers(workers));
  auto est = make_estimate(er, 0, T, t0);
  est.k = k;
  est.alpha = alpha;
  est.q = (std::uint64_t)alpha.den;
  return est;
}

MomentEstimate l_moment(int k, const DirichletCharacter& chi, double T,
                        const QuadratureSpec& spec, int workers) {
  if (k < 1 || k > 3) throw std::domain_error("l_moment: k must be 1, 2, or 3");
  const auto t0 = clock_type::now();
  UnitZetaBank bank(chi.group(), 0.5, 2.0 * T + 1.0);
  const auto cv = bank.character_values(chi);
  NodeFn node = [&bank, &cv, k](double t, double* out) {
    thread_local std::vector<std::complex<double>> zs;
    bank.eval(t, zs, kEvalTol);
    const double a2 = std::norm(bank.l_from_units(cv, zs, t));
    double v = a2;
    for (int j = 1; j < k; ++j) v *= a2;
    out[0] = v;
  };
  auto er = integrate_components(node, 1, T, spec, resolve_workers(workers));
  auto est = make_estimate(er, 0, T, t0);
  est.k = k;
  est.q = chi.modulus();
  return est;
}

MomentEstimate product_mean_square(const ExponentTuple& ell, double T,
                                   const QuadratureSpec& spec, int workers) {
  check_exponents(ell);
  const auto t0 = clock_type::now();
  ProductContext ctx(ell, T);
  NodeFn node = [&ctx](double t, double* out) {
    thread_local std::vector<std::complex<double>> zs;
    ctx.bank.eval(t, zs, kEvalTol);
    out[0] = std::norm(ctx.l_product_at(zs, t));
  };
  auto er = integrate_components(node, 1, T, spec, resolve_workers(workers));
  auto est = make_estimate(er, 0, T, t0);
  est.k = ell.total();
  est.q = ell.modulus();
  return est;
}

MomentEstimate p_mean_square(const ExponentTuple& ell, double X, double T,
                             const QuadratureSpec& spec, int workers) {
  check_exponents(ell);
  const double q = (double)ell.modulus();
  if (!(X > q * q)) throw std::domain_error("p_mean_square: requires X > q^2");
  const auto t0 = clock_type::now();
  std::vector<EulerFactors> factors;
  std::vector<int> exps;
  for (std::size_t i = 0; i < ell.e.size(); ++i) {
    if (ell.e[i] == 0) continue;
    factors.emplace_back(ell.group->character(i), X);
    exps.push_back(ell.e[i]);
  }
  NodeFn node = [&factors, &exps](double t, double* out) {
    const std::complex<double> s(0.5, t);
    std::complex<double> v = 1.0;
    for (std::size_t i = 0; i < factors.size(); ++i)
      v *= int_pow(factors[i].p_star_x(s), exps[i]);
    out[0] = std::norm(v);
  };
  auto er = integrate_components(node, 1, T, spec, resolve_workers(workers));
  auto est = make_estimate(er, 0, T, t0);
  est.k = ell.total();
  est.q = ell.modulus();
  est.X = X;
  est.regime_warning = outside_log_window(X, T);
  return est;
}

double p_coeff_oracle(const ExponentTuple& ell, double X) {
  check_exponents(ell);
  const auto& g = *ell.group;
  const std::uint64_t q = g.modulus();
  if (!(X > (double)q * (double)q)) throw std::domain_error("p_coeff_oracle: requires X > q^2");
  const double rx = std::sqrt(X);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  double prod = 1.0;
  for (std::uint64_t p : primes_up_to((std::uint64_t)X)) {
    if (q % p == 0) continue;
    std::vector<std::complex<double>> w;
    std::vector<int> e;
    for (std::size_t i = 0; i < ell.e.size(); ++i) {
      if (ell.e[i] == 0) continue;
      const std::complex<double> chip = g.character(i).value(p);
      w.push_back(chip);
      e.push_back(ell.e[i]);
      if ((double)p > rx) {
        // (1 + chi(p)^2 x^2 / 2)^{-e} factored through its conjugate roots
        w.push_back(std::complex<double>(0.0, inv_sqrt2) * chip);
        e.push_back(ell.e[i]);
        w.push_back(std::complex<double>(0.0, -inv_sqrt2) * chip);
        e.push_back(ell.e[i]);
      }
    }
    const auto loc = local_series(w, e, 96);
    // The series has denominator degree sum(e); a lone small term can be an
    // exact zero (even series for real quotient data), so truncate only after
    // that many consecutive terms fall below 1e-14 of the partial sum.
    std::size_t deg = 0;
    for (int ei : e) deg += (std::size_t)ei;
    double s = 1.0;
    double pm = 1.0;
    std::size_t quiet = 0;
    for (std::size_t mth = 1; mth < loc.size(); ++mth) {
      pm *= (double)p;
      const double term = std::norm(loc[mth]) / pm;
      s += term;
      quiet = term < 1e-14 * s ? quiet + 1 : 0;
      if (quiet >= deg) break;
    }
    prod *= s;
  }
  return prod;
}

MomentEstimate z_mean_square(const DirichletCharacter& chi, double X, double T,
                             const QuadratureSpec& spec, int workers) {
  const double q = (double)chi.modulus();
  if (!(X > q * q)) throw std::domain_error("z_mean_square: requires X > q^2");
  const auto t0 = clock_type::now();
  UnitZetaBank bank(chi.group(), 0.5, 2.0 * T + 1.0);
  const auto cv = bank.character_values(chi);
  const EulerFactors ef(chi, X);
  NodeFn node = [&bank, &cv, &ef](double t, double* out) {
    thread_local std::vector<std::complex<double>> zs;
    bank.eval(t, zs, kEvalTol);
    const std::complex<double> L = bank.l_from_units(cv, zs, t);
    const std::complex<double> P = ef.p_x({0.5, t});
    if (std::abs(P) < kPxFloor)
      throw singular_point_error("z_mean_square: P_X vanished at a node");
    out[0] = std::norm(L / P);
  };
  auto er = integrate_components(node, 1, T, spec, resolve_workers(workers));
  auto est = make_estimate(er, 0, T, t0);
  est.k = 1;
  est.q = chi.modulus();
  est.X = X;
  est.regime_warning = outside_log_window(X, T);
  return est;
}

SplittingReport splitting_report(const ExponentTuple& ell, double X, double T,
                                 const QuadratureSpec& spec, SplittingVariant variant,
                                 int workers) {
  check_exponents(ell);
  const double q = (double)ell.modulus();
  if (!(X > q * q)) throw std::domain_error("splitting_ratio: requires X > q^2");
  const auto t0 = clock_type::now();
  ProductContext ctx(ell, T);
  std::vector<EulerFactors> factors;
  for (std::size_t i = 0; i < ell.e.size(); ++i)
    if (ell.e[i] != 0) factors.emplace_back(ell.group->character(i), X);

  SplittingReport rep;
  rep.variant = variant;
  const bool warn = outside_log_window(X, T);

  if (variant == SplittingVariant::short_product) {
    // components: |L^ell|^2, |Pstar^ell|^2, |Z^ell|^2
    NodeFn node = [&ctx, &factors](double t, double* out) {
      thread_local std::vector<std::complex<double>> zs;
      ctx.bank.eval(t, zs, kEvalTol);
      const std::complex<double> s(0.5, t);
      std::complex<double> lp = 1.0, pstar = 1.0, zp = 1.0;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        const std::complex<double> L = ctx.bank.l_from_units(ctx.chi_vals[i], zs, t);
        const std::complex<double> P = factors[i].p_x(s);
        if (std::abs(P) < kPxFloor)
          throw singular_point_error("splitting_ratio: P_X vanished at a node");
        lp *= int_pow(L, ctx.exps[i]);
        pstar *= int_pow(factors[i].p_star_x(s), ctx.exps[i]);
        zp *= int_pow(L / P, ctx.exps[i]);
      }
      out[0] = std::norm(lp);
      out[1] = std::norm(pstar);
      out[2] = std::norm(zp);
    };
    auto er = integrate_components(node, 3, T, spec, resolve_workers(workers));
    rep.l_ms = make_estimate(er, 0, T, t0);
    rep.p_ms = make_estimate(er, 1, T, t0);
    rep.z_ms = make_estimate(er, 2, T, t0);
    rep.ratio = T * rep.l_ms.value / (rep.p_ms.value * rep.z_ms.value);
  } else {
    // components: |prod (P_X Z_X)^{ell_chi}|^2 reassembled factor by factor,
    // and |L^ell|^2 straight from the bank; the ratio probes rounding only.
    NodeFn node = [&ctx, &factors](double t, double* out) {
      thread_local std::vector<std::complex<double>> zs;
      ctx.bank.eval(t, zs, kEvalTol);
      const std::complex<double> s(0.5, t);
      std::complex<double> assembled = 1.0, lp = 1.0;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        const std::complex<double> L = ctx.bank.l_from_units(ctx.chi_vals[i], zs, t);
        const std::complex<double> P = factors[i].p_x(s);
        if (std::abs(P) < kPxFloor)
          throw singular_point_error("splitting_ratio: P_X vanished at a node");
        assembled *= int_pow(P * (L / P), ctx.exps[i]);
        lp *= int_pow(L, ctx.exps[i]);
      }
      out[0] = std::norm(assembled);
      out[1] = std::norm(lp);
    };
    auto er = integrate_components(node, 2, T, spec, resolve_workers(workers));
    rep.p_ms = make_estimate(er, 0, T, t0);
    rep.l_ms = make_estimate(er, 1, T, t0);
    rep.ratio = rep.p_ms.value / rep.l_ms.value;
  }

  for (MomentEstimate* e : {&rep.l_ms, &rep.p_ms, &rep.z_ms}) {
    e->k = ell.total();
    e->q = ell.modulus();
    e->X = X;
    e->regime_warning = warn;
  }
  return rep;
}

double splitting_ratio(const ExponentTuple& ell, double X, double T,
                       const QuadratureSpec& spec, SplittingVariant variant,
                       int workers) {
  return splitting_report(ell, X, T, spec, variant, workers).ratio;
}

double twisted_main_term(double T, const DirichletCharacter& chi,
                         const std::vector<double>& b, double theta) {
  if (!(T >= 10.0)) throw std::domain_error("twisted_main_term: T must be at least 10");
  if (!(theta > 0.0) || theta > 0.125 + 1e-12)
    throw std::domain_error("twisted_main_term: theta must lie in (0, 1/8]");
  const std::uint64_t q = chi.modulus();
  double plog = 0.0;
  for (auto [p, e] : factorize(q)) plog += std::log((double)p) / ((double)p - 1.0);
  const double base = std::log((double)q * T / (2.0 * std::numbers::pi)) +
                      (2.0 * kEulerGamma - 1.0 + 2.0 * std::log(2.0)) + plog;
  std::uint64_t N = (std::uint64_t)std::pow(T, theta);
  if (!b.empty()) N = std::min<std::uint64_t>(N, b.size() - 1);
  double sum = 0.0;
  for (std::uint64_t m = 1; m <= N; ++m) {
    if (b[m] == 0.0 || std::gcd(m, q) != 1) continue;
    for (std::uint64_t n = 1; n <= N; ++n) {
      if (b[n] == 0.0 || std::gcd(n, q) != 1) continue;
      const std::uint64_t g = std::gcd(m, n);
      const double lcm = (double)(m / g) * (double)n;
      const double lg = base + 2.0 * std::log((double)g) - std::log((double)m) -
                        std::log((double)n);
      sum += b[m] * b[n] / lcm * lg;
    }
  }
  return (double)chi.group()->phi() / (double)q * sum;
}

DiagonalBreakdown diagonal_prediction(int k, const Rational& alpha, double T,
                                      const QuadratureSpec& spec, bool full,
                                      int workers) {
  if (k < 1 || k > 2) throw std::domain_error("diagonal_prediction: k must be 1 or 2");
  if (alpha.num < 1 || alpha.num > alpha.den)
    throw std::domain_error("diagonal_prediction: alpha must satisfy 0 < alpha <= 1");
  const std::uint64_t q = (std::uint64_t)alpha.den;
  if (k == 2 && q > 8)
    throw std::domain_error("diagonal_prediction: k = 2 supports q <= 8 only");
  const auto t0 = clock_type::now();

  auto group = CharacterGroup::make(q);
  const std::size_t nchi = group->size();

  // all exponent tuples with |ell| = k, in lexicographic order
  std::vector<std::vector<int>> ells;
  std::vector<int> cur(nchi, 0);
  const std::function<void(std::size_t, int)> emit = [&](std::size_t pos, int left) {
    if (pos + 1 == nchi) {
      cur[pos] = left;
      ells.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[pos] = e;
      emit(pos + 1, left - e);
    }
  };
  emit(0, k);
  const std::size_t n_ell = ells.size();

  UnitZetaBank bank(group, 0.5, 2.0 * T + 1.0);
  std::vector<std::vector<std::complex<double>>> cvs(nchi);
  for (std::size_t c = 0; c < nchi; ++c)
    cvs[c] = bank.character_values(group->character(c));

  std::vector<double> B(n_ell);
  std::vector<bool> pure(n_ell);
  std::vector<std::complex<double>> w(n_ell);  // prod_chi chi(a)^{ell_chi}
  const std::uint32_t a_res = (std::uint32_t)((std::uint64_t)alpha.num % q);
  for (std::size_t i = 0; i < n_ell; ++i) {
    B[i] = multinomial(k, ells[i]);
    pure[i] = *std::max_element(ells[i].begin(), ells[i].end()) == k;
    std::complex<double> wi = 1.0;
    for (std::size_t c = 0; c < nchi; ++c)
      wi *= int_pow(group->character(c).value(a_res == 0 ? 1 : a_res), ells[i][c]);
    w[i] = wi;
  }

  const int m = (int)(full ? n_ell + n_ell * (n_ell - 1) / 2 : n_ell);
  NodeFn node = [&](double t, double* out) {
    thread_local std::vector<std::complex<double>> zs;
    thread_local std::vector<std::complex<double>> L, V;
    bank.eval(t, zs, kEvalTol);
    L.resize(nchi);
    for (std::size_t c = 0; c < nchi; ++c) L[c] = bank.l_from_units(cvs[c], zs, t);
    V.resize(n_ell);
    for (std::size_t i = 0; i < n_ell; ++i) {
      std::complex<double> v = 1.0;
      for (std::size_t c = 0; c < nchi; ++c) v *= int_pow(L[c], ells[i][c]);
      V[i] = v;
    }
    for (std::size_t i = 0; i < n_ell; ++i) out[i] = std::norm(V[i]);
    if ((std::size_t)m > n_ell) {
      std::size_t idx = n_ell;
      for (std::size_t i = 0; i < n_ell; ++i)
        for (std::size_t j = i + 1; j < n_ell; ++j)
          out[idx++] = (std::conj(w[i]) * w[j] * V[i] * std::conj(V[j])).real();
    }
  };

  auto er = integrate_components(node, m, T, spec, resolve_workers(workers));

  DiagonalBreakdown out;
  out.T = T;
  out.k = k;
  out.alpha = alpha;
  out.q = q;
  out.node_count = er.node_count;
  out.refinements = er.refinements;
  out.converged = er.converged;
  out.singular_flagged = er.flagged;
  const double pref =
      std::pow((double)q, k) / std::pow((double)group->phi(), 2.0 * k);
  for (std::size_t i = 0; i < n_ell; ++i) {
    const double term = pref * B[i] * B[i] * er.values[i];
    out.diagonal += term;
    if (pure[i]) out.primary_diagonal += term;
  }
  out.secondary_diagonal = out.diagonal - out.primary_diagonal;
  if (full) {
    out.has_full = true;
    std::size_t idx = n_ell;
    for (std::size_t i = 0; i < n_ell; ++i)
      for (std::size_t j = i + 1; j < n_ell; ++j) {
        const double term = pref * 2.0 * B[i] * B[j] * er.values[idx++];
        if (pure[i] && pure[j])
          out.major_offdiag += term;
        else
          out.minor_offdiag += term;
      }
    out.full = out.diagonal + out.major_offdiag + out.minor_offdiag;
  }
  out.wall_seconds = seconds_since(t0);
  return out;
}

}  // namespace hzeta
