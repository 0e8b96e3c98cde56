#include "elephant/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <sstream>

#include "elephant/clusters.hpp"
#include "elephant/core.hpp"
#include "elephant/density.hpp"
#include "elephant/exact_law.hpp"
#include "elephant/fixedpoint.hpp"
#include "elephant/io.hpp"
#include "elephant/moments.hpp"
#include "elephant/parallel.hpp"
#include "elephant/spectral.hpp"
#include "elephant/stats.hpp"
#include "elephant/svg.hpp"
#include "elephant/urn.hpp"
#include "elephant/walk.hpp"

namespace elephant {

namespace {

constexpr const char* kVersion = "0.1.0";

namespace fs = std::filesystem;
using nlohmann::json;

struct Context {
  std::string out_dir = ".";
  std::string format = "csv";
  RunManifest manifest;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  std::string path(const std::string& name) {
    fs::create_directories(out_dir);
    std::string p = (fs::path(out_dir) / name).string();
    manifest.outputs.push_back(p);
    return p;
  }

  void finish() {
    manifest.version = kVersion;
    manifest.wall_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    fs::create_directories(out_dir);
    write_manifest(manifest, (fs::path(out_dir) / "manifest.json").string());
  }
};

std::vector<double> parse_q_list(const std::string& text, int expected) {
  std::vector<double> q;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) q.push_back(std::stod(item));
  if (expected > 0 && static_cast<int>(q.size()) != expected)
    throw CLI::ValidationError("--q", "expected " + std::to_string(expected) + " entries");
  return q;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> q;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) q.push_back(parse_rational(item));
  return q;
}

double parse_number(const std::string& text) {
  if (text.find('/') != std::string::npos) return static_cast<double>(to_real(parse_rational(text)));
  return std::stod(text);
}

void check_a_consistency(double a, int d, double p) {
  const double derived = (2.0 * d * p - 1.0) / (2.0 * d - 1.0);
  if (std::fabs(a - derived) > 1e-9)
    throw CLI::ValidationError("--a", "inconsistent with (d,p): expected " + format_double(derived));
}

void write_json(Context& ctx, const std::string& name, const json& j) {
  std::ofstream out(ctx.path(name));
  out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

int cmd_simulate(Context& ctx, WalkConfig cfg, std::int64_t replicas,
                 const std::string& a_flag) {
  cfg.validate();
  const double a = cfg.exponent();
  if (!a_flag.empty()) check_a_consistency(parse_number(a_flag), cfg.d, cfg.p);
  if (!cfg.superdiffusive())
    std::cerr << "note: a = " << format_double(a)
              << " <= 1/2, configuration is not superdiffusive\n";

  if (replicas <= 1) {
    const Trajectory traj = simulate_walk(cfg);
    const auto positions = traj.positions();
    CsvWriter csv(ctx.path("trajectory.csv"), [&] {
      std::vector<std::string> h = {"t", "step"};
      for (int i = 0; i < cfg.d; ++i) h.push_back("x" + std::to_string(i + 1));
      return h;
    }());
    for (std::size_t t = 0; t < positions.size(); ++t) {
      std::vector<std::string> row = {std::to_string(t),
                                      t == 0 ? "-" : std::to_string(int(traj.steps[t - 1]))};
      for (int i = 0; i < cfg.d; ++i) row.push_back(std::to_string(positions[t](i)));
      csv.row(row);
    }
  } else {
    const LimitEnsemble ens = sample_limit_ensemble(cfg, replicas);
    if (ctx.format == "csv") {
      CsvWriter csv(ctx.path("endpoints.csv"), [&] {
        std::vector<std::string> h = {"replica"};
        for (int i = 0; i < cfg.d; ++i) h.push_back("l" + std::to_string(i + 1));
        return h;
      }());
      for (Eigen::Index r = 0; r < ens.values.rows(); ++r) {
        std::vector<std::string> row = {std::to_string(r)};
        for (int i = 0; i < cfg.d; ++i) row.push_back(format_double(ens.values(r, i)));
        csv.row(row);
      }
    }
    const EnsembleMoments mom = estimate_limit_moments(ens);
    json j;
    j["a"] = a;
    j["n"] = cfg.n;
    j["replicas"] = replicas;
    j["superdiffusive"] = cfg.superdiffusive();
    for (int i = 0; i < cfg.d; ++i) {
      j["mean"].push_back(mom.mean(i));
      j["mean_se"].push_back(mom.mean_se(i));
      j["second_diag"].push_back(mom.second(i, i));
    }
    const VecD pm = predicted_limit_mean(cfg.d, a, cfg.q);
    const MatD ps = predicted_limit_second_moment(cfg.d, a, cfg.q);
    for (int i = 0; i < cfg.d; ++i) {
      j["predicted_mean"].push_back(pm(i));
      j["predicted_second_diag"].push_back(ps(i, i));
    }
    write_json(ctx, "summary.json", j);
  }
  return 0;
}

int cmd_urn(Context& ctx, int d, double p, std::int64_t n, std::uint64_t seed,
            std::int64_t replicas, const std::string& initial_text, bool subtree) {
  if (subtree) {
    const SubtreeSplit split = simulate_subtree_split(n, seed);
    CsvWriter csv(ctx.path("subtree.csv"), {"t", "d1", "d2"});
    for (Eigen::Index t = 0; t < split.path.rows(); ++t)
      csv.row({std::to_string(t + 1), std::to_string(split.path(t, 0)),
               std::to_string(split.path(t, 1))});
    return 0;
  }
  UrnConfig cfg;
  cfg.colors = 2 * d;
  cfg.p = p;
  cfg.n = n;
  cfg.seed = seed;
  cfg.initial = Eigen::VectorXi::Zero(cfg.colors);
  if (initial_text.empty()) {
    cfg.initial(0) = 1;
  } else {
    std::stringstream ss(initial_text);
    std::string item;
    int idx = 0;
    while (std::getline(ss, item, ',') && idx < cfg.colors) cfg.initial(idx++) = std::stoi(item);
  }
  cfg.validate();
  const double a = (2.0 * d * p - 1.0) / (2.0 * d - 1.0);

  if (replicas <= 1) {
    const UrnPath path = simulate_urn(cfg);
    CsvWriter csv(ctx.path("urn.csv"), [&] {
      std::vector<std::string> h = {"t"};
      for (int c = 0; c < cfg.colors; ++c) h.push_back("u" + std::to_string(c + 1));
      return h;
    }());
    for (Eigen::Index t = 0; t <= cfg.n; ++t) {
      std::vector<std::string> row = {std::to_string(t)};
      for (int c = 0; c < cfg.colors; ++c) row.push_back(std::to_string(path.compositions(t, c)));
      csv.row(row);
    }
    return 0;
  }

  std::vector<MomentAccumulator> acc(static_cast<std::size_t>(cfg.colors));
  std::vector<std::vector<MomentAccumulator>> per_worker(
      max_threads(), std::vector<MomentAccumulator>(static_cast<std::size_t>(cfg.colors)));
  parallel_for_replicas(static_cast<std::uint64_t>(replicas),
                        [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
                          for (std::uint64_t r = begin; r < end; ++r) {
                            const VecD dev = urn_normalized_deviation(cfg, a, r);
                            for (int c = 0; c < cfg.colors; ++c) per_worker[w][static_cast<std::size_t>(c)].add(dev(c));
                          }
                        });
  for (const auto& worker : per_worker)
    for (int c = 0; c < cfg.colors; ++c) acc[static_cast<std::size_t>(c)].merge(worker[static_cast<std::size_t>(c)]);

  json j;
  j["a"] = a;
  j["draws"] = n;
  j["replicas"] = replicas;
  const double g = std::tgamma(1.0 + a);
  for (int c = 0; c < cfg.colors; ++c) {
    j["deviation_mean"].push_back(acc[static_cast<std::size_t>(c)].mean());
    j["deviation_se"].push_back(acc[static_cast<std::size_t>(c)].se_mean());
    const double init = cfg.initial(c) == 1 ? 1.0 : 0.0;
    j["predicted_mean"].push_back((init - 1.0 / cfg.colors) / g);
  }
  write_json(ctx, "urn_summary.json", j);
  return 0;
}

int cmd_oracle(Context& ctx, std::int64_t n, int d, const std::string& p_text,
               const std::string& q_text) {
  const Rational p = parse_rational(p_text);
  const std::vector<Rational> q = parse_rational_list(q_text);
  if (d == 1) {
    if (q.size() != 2) throw CLI::ValidationError("--q", "dimension 1 needs two entries");
    const ExactLaw1D law = exact_law_1d(n, p, q[0], q[1]);
    CsvWriter csv(ctx.path("law.csv"), {"position", "numerator", "denominator"});
    for (const auto& [s, prob] : law.support())
      csv.row({std::to_string(s), numerator(prob).str(), denominator(prob).str()});
  } else {
    const ExactLawCounts law = exact_law_counts(n, d, p, q);
    CsvWriter csv(ctx.path("counts_law.csv"), [&] {
      std::vector<std::string> h;
      for (int c = 0; c < 2 * d; ++c) h.push_back("n" + std::to_string(c + 1));
      h.push_back("numerator");
      h.push_back("denominator");
      return h;
    }());
    for (const auto& [counts, prob] : law.pmf) {
      std::vector<std::string> row;
      for (int c : counts) row.push_back(std::to_string(c));
      row.push_back(numerator(prob).str());
      row.push_back(denominator(prob).str());
      csv.row(row);
    }
    CsvWriter pos_csv(ctx.path("position_law.csv"), [&] {
      std::vector<std::string> h;
      for (int i = 0; i < d; ++i) h.push_back("x" + std::to_string(i + 1));
      h.push_back("numerator");
      h.push_back("denominator");
      return h;
    }());
    for (const auto& [pos, prob] : position_pushforward(law)) {
      std::vector<std::string> row;
      for (int x : pos) row.push_back(std::to_string(x));
      row.push_back(numerator(prob).str());
      row.push_back(denominator(prob).str());
      pos_csv.row(row);
    }
  }
  return 0;
}

int cmd_moments(Context& ctx, const std::string& a_text, int order, unsigned bits, bool exact,
                double q, const std::string& mgf_t) {
  MomentTable table;
  if (exact || a_text.find('/') != std::string::npos) {
    table = make_moment_table(parse_rational(a_text), order, bits);
  } else {
    table = make_moment_table(std::stod(a_text), order, bits);
  }
  CsvWriter csv(ctx.path("moments.csv"), {"k", "m_k", "mu_k", "mu_k_q"});
  for (int k = 1; k <= order; ++k) {
    const std::string mk = table.exact ? format_rational(table.m_rational[static_cast<std::size_t>(k)])
                                       : format_real(table.m[static_cast<std::size_t>(k)]);
    csv.row({std::to_string(k), mk, format_real(moment_L1(table, k)),
             format_real(moment_Lq(table, q, k))});
  }
  json j;
  j["a"] = a_text;
  j["exact"] = table.exact;
  j["precision_bits"] = bits;
  j["order"] = order;
  j["q"] = q;
  if (!mgf_t.empty()) {
    PrecisionGuard guard(bits);
    const Real t(parse_number(mgf_t));
    const MgfValue v = mgf_L1(table, t, order);
    j["mgf_t"] = static_cast<double>(t);
    j["mgf_value"] = static_cast<double>(v.value);
    j["mgf_tail_bound"] = v.tail_bound_valid ? static_cast<double>(v.tail_bound) : -1.0;
  }
  write_json(ctx, "moments.json", j);
  return 0;
}

int cmd_density(Context& ctx, const std::string& a_text, double q, int atoms, unsigned bits,
                const std::string& grid_text, bool clamp) {
  PrecisionGuard guard(bits);
  MomentTable table;
  if (a_text.find('/') != std::string::npos)
    table = make_moment_table(parse_rational(a_text), 2 * atoms, bits);
  else
    table = make_moment_table(std::stod(a_text), 2 * atoms, bits);

  VecX<Real> mu(2 * atoms);
  for (int k = 0; k < 2 * atoms; ++k) mu(k) = moment_Lq(table, q, k);
  const auto rc = jacobi_from_moments<Real>(mu);
  const auto quad = quadrature<Real>(rc);

  CsvWriter rc_csv(ctx.path("recurrence.csv"), {"j", "alpha", "beta"});
  for (Eigen::Index jx = 0; jx < rc.alpha.size(); ++jx)
    rc_csv.row({std::to_string(jx), format_real(rc.alpha(jx)), format_real(rc.beta(jx))});
  CsvWriter q_csv(ctx.path("quadrature.csv"), {"atom", "weight"});
  for (Eigen::Index i = 0; i < quad.atoms.size(); ++i)
    q_csv.row({format_real(quad.atoms(i)), format_real(quad.weights(i))});

  double lo = static_cast<double>(quad.atoms(0)) - 0.5;
  double hi = static_cast<double>(quad.atoms(quad.atoms.size() - 1)) + 0.5;
  int points = 512;
  if (!grid_text.empty()) {
    std::stringstream ss(grid_text);
    std::string a_s, b_s, c_s;
    std::getline(ss, a_s, ':');
    std::getline(ss, b_s, ':');
    std::getline(ss, c_s, ':');
    lo = std::stod(a_s);
    hi = std::stod(b_s);
    points = std::stoi(c_s);
  }
  VecD grid = VecD::LinSpaced(points, lo, hi);
  const DensityCurve curve = smooth_density(quad, grid, clamp);
  CsvWriter d_csv(ctx.path("density.csv"), {"x", "f"});
  for (Eigen::Index g = 0; g < grid.size(); ++g)
    d_csv.row({format_double(curve.x(g)), format_double(curve.f(g))});

  // round-trip residual: worst relative error of quadrature moments
  Real worst(0);
  for (int k = 0; k < 2 * atoms; ++k) {
    Real s(0);
    for (Eigen::Index i = 0; i < quad.atoms.size(); ++i)
      s += quad.weights(i) * pow(quad.atoms(i), k);
    const Real denom = std::max(Real(1e-30), Real(abs(mu(k))));
    worst = std::max(worst, Real(abs(s - mu(k)) / denom));
  }
  json j;
  j["atoms"] = atoms;
  j["precision_bits"] = bits;
  j["integral"] = curve.integral;
  j["min_value"] = curve.min_value;
  j["negative_count"] = curve.negative_count;
  j["clamped"] = curve.clamped;
  j["roundtrip_rel_error"] = static_cast<double>(worst);
  write_json(ctx, "density.json", j);
  return 0;
}

int cmd_fixedpoint(Context& ctx, const std::string& variant, const std::string& a_text, int d,
                   std::int64_t particles, int steps, std::uint64_t seed, int trials) {
  const double a = parse_number(a_text);
  Rng rng(seed);
  json j;
  j["a"] = a;
  j["steps"] = steps;
  j["particles"] = particles;

  if (variant == "1d") {
    ParticlePopulation pop;
    pop.variant = MapVariant::Scalar1D;
    pop.d = 1;
    pop.a = a;
    pop.values.resize(particles, 1);
    const double mean = 1.0 / std::tgamma(1.0 + a);
    for (Eigen::Index i = 0; i < particles; ++i) pop.values(i, 0) = mean + rng.normal();
    iterate_map_1d(pop, steps, rng);
    MomentAccumulator acc;
    for (Eigen::Index i = 0; i < particles; ++i) acc.add(pop.values(i, 0));
    const MomentTable table = make_moment_table(a, 4, 128);
    for (int k = 1; k <= 4; ++k) {
      j["moment"].push_back(acc.moment(k));
      j["moment_se"].push_back(acc.moment_se(k));
      j["moment_exact"].push_back(static_cast<double>(moment_L1(table, k)));
    }
    if (trials > 0) {
      std::vector<double> pa(pop.values.col(0).data(), pop.values.col(0).data() + particles);
      std::vector<double> pb(pa.size());
      const double m = std::accumulate(pa.begin(), pa.end(), 0.0) / pa.size();
      for (std::size_t i = 0; i < pb.size(); ++i) pb[i] = m + 2.0 * rng.normal();
      const ContractionReport rep = contraction_estimate(a, pa, pb, trials, rng);
      j["contraction_ratio"] = rep.ratio;
      j["contraction_bound"] = rep.theoretical_bound;
      j["contraction_trials"] = rep.trials;
    }
    CsvWriter csv(ctx.path("population.csv"), {"particle", "value"});
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(particles, 100000); ++i)
      csv.row({std::to_string(i), format_double(pop.values(i, 0))});
  } else if (variant == "w") {
    ParticlePopulation pop;
    pop.variant = MapVariant::WVector;
    pop.d = d;
    pop.a = a;
    const int dim = 2 * d - 1;
    pop.values.resize(particles, dim);
    const double mean = 1.0 / (d * std::tgamma(1.0 + a));
    for (Eigen::Index i = 0; i < particles; ++i)
      for (int c = 0; c < dim; ++c) pop.values(i, c) = mean + rng.normal();
    MatD before = pop.values;
    iterate_map_W(pop, steps, rng);
    for (int c = 0; c < dim; ++c) {
      j["mean_before"].push_back(before.col(c).mean());
      j["mean_after"].push_back(pop.values.col(c).mean());
    }
  } else if (variant == "y") {
    const int colors = 2 * d;
    std::vector<ParticlePopulation> pops(static_cast<std::size_t>(colors));
    const double g = std::tgamma(1.0 + a);
    for (int k = 0; k < colors; ++k) {
      auto& pop = pops[static_cast<std::size_t>(k)];
      pop.variant = MapVariant::YColorVector;
      pop.d = d;
      pop.a = a;
      pop.values.resize(particles, colors);
      for (Eigen::Index i = 0; i < particles; ++i)
        for (int c = 0; c < colors; ++c)
          pop.values(i, c) = ((k == c ? 1.0 : 0.0) - 1.0 / colors) / g + 0.5 * rng.normal();
    }
    iterate_map_Y(pops, steps, rng);
    for (int k = 0; k < colors; ++k) {
      const double predicted0 = ((k == 0 ? 1.0 : 0.0) - 1.0 / colors) / g;
      j["mean_first_coord"].push_back(pops[static_cast<std::size_t>(k)].values.col(0).mean());
      j["predicted_first_coord"].push_back(predicted0);
    }
  } else {
    throw CLI::ValidationError("--variant", "must be 1d, w or y");
  }
  write_json(ctx, "fixedpoint.json", j);
  return 0;
}

int cmd_support(Context& ctx, int d, const std::string& w_text, bool evidence,
                std::int64_t samples, std::int64_t n, double p, std::uint64_t seed,
                unsigned bits) {
  json j;
  j["d"] = d;
  if (!w_text.empty()) {
    const std::vector<Rational> w = parse_rational_list(w_text);
    const KrylovReport rep = krylov_dimension(w, d);
    j["zero_set"] = rep.zero_set;
    j["dimension"] = rep.dimension;
    j["rank"] = rep.rank;
    j["exact"] = true;
    if (d == 2 || d == 3) {
      const SupportClass cls = classify_support(w, d);
      j["class"] = cls.label;
    }
    const UCoordinates u = u_coordinates(w, d, bits);
    for (Eigen::Index i = 0; i < u.re.size(); ++i) {
      j["u_re"].push_back(static_cast<double>(u.re(i)));
      j["u_im"].push_back(static_cast<double>(u.im(i)));
    }
  }
  if (evidence) {
    const double a = (2.0 * d * p - 1.0) / (2.0 * d - 1.0);
    const int dim = 2 * d - 1;
    MatD mat(samples, dim);
    UrnConfig cfg;
    cfg.colors = 2 * d;
    cfg.p = p;
    cfg.n = n;
    cfg.seed = seed;
    cfg.initial = Eigen::VectorXi::Zero(cfg.colors);
    cfg.initial(0) = 1;
    parallel_for_replicas(static_cast<std::uint64_t>(samples),
                          [&](std::uint64_t begin, std::uint64_t end, unsigned) {
                            for (std::uint64_t r = begin; r < end; ++r) {
                              const VecD dev = urn_normalized_deviation(cfg, a, r);
                              for (int c = 1; c < 2 * d; ++c)
                                mat(static_cast<Eigen::Index>(r), c - 1) = -2.0 * dev(c);
                            }
                          });
    const SupportEvidence ev = support_evidence(mat, d, bits);
    j["samples"] = ev.samples;
    j["full_dimension_fraction"] = ev.full_dimension_fraction;
    j["max_mean_z"] = ev.max_mean_z;
    j["min_abs_u"] = ev.min_abs_u;
    j["median_min_abs_u"] = ev.median_min_abs_u;
    j["verdict"] = "evidence only";
  }
  write_json(ctx, "support.json", j);
  return 0;
}

int cmd_clusters(Context& ctx, double a, double q, std::int64_t n, std::int64_t replicas,
                 std::uint64_t seed, int series) {
  if (series > 0) {
    CsvWriter csv(ctx.path("series.csv"), {"replica", "partial_sum"});
    Rng rng(seed);
    for (std::int64_t r = 0; r < replicas; ++r) {
      const ClusterSample s = sample_cluster_series(a, q, series, rng);
      csv.row({std::to_string(r), format_double(s.partial_sum)});
    }
    json j;
    j["marginal_faithful_only"] = true;
    j["truncation"] = series;
    write_json(ctx, "series.json", j);
    return 0;
  }
  CsvWriter csv(ctx.path("clusters.csv"), {"replica", "s_n", "clusters", "root_cluster_size"});
  MomentAccumulator acc;
  for (std::int64_t r = 0; r < replicas; ++r) {
    const PercolatedRRT tree = simulate_rrt_percolation(n, a, seed, static_cast<std::uint64_t>(r));
    Rng rng(seed ^ 0x5851f42d4c957f2dULL, static_cast<std::uint64_t>(r));
    const std::int64_t s = reconstruct_walk_from_clusters(tree, q, rng);
    acc.add(static_cast<double>(tree.root_cluster_size()) /
            std::pow(static_cast<double>(n), a));
    csv.row({std::to_string(r), std::to_string(s), std::to_string(tree.roots.size()),
             std::to_string(tree.root_cluster_size())});
  }
  json j;
  j["n"] = n;
  j["a"] = a;
  j["root_cluster_scaled_mean"] = acc.mean();
  j["root_cluster_scaled_se"] = acc.se_mean();
  j["mittag_leffler_mean"] = 1.0 / std::tgamma(1.0 + a);
  write_json(ctx, "clusters.json", j);
  return 0;
}

int cmd_figures(Context& ctx, const std::string& panel, double p, double q, std::int64_t paths,
                std::int64_t n, std::uint64_t seed, int atoms, unsigned bits) {
  if (panel == "trajectory") {
    WalkConfig cfg{1, p, {q, 1.0 - q}, n, seed};
    const Trajectory traj = simulate_walk(cfg);
    const auto positions = traj.positions();
    VecD xs(positions.size()), ys(positions.size());
    double lo = 0, hi = 0;
    for (std::size_t t = 0; t < positions.size(); ++t) {
      xs(static_cast<Eigen::Index>(t)) = static_cast<double>(t);
      ys(static_cast<Eigen::Index>(t)) = positions[t](0);
      lo = std::min(lo, ys(static_cast<Eigen::Index>(t)));
      hi = std::max(hi, ys(static_cast<Eigen::Index>(t)));
    }
    SvgPanel svg(0, static_cast<double>(n), lo - 1, hi + 1);
    svg.add_polyline(xs, ys);
    svg.add_title("walk trajectory, p=" + format_double(p) + ", q=" + format_double(q));
    svg.write(ctx.path("trajectory.svg"));
    return 0;
  }
  if (panel != "density") throw CLI::ValidationError("--panel", "must be density or trajectory");

  WalkConfig cfg{1, p, {q, 1.0 - q}, n, seed};
  const double a = cfg.exponent();
  const LimitEnsemble ens = sample_limit_ensemble(cfg, paths);
  std::vector<double> samples(ens.values.data(), ens.values.data() + paths);

  const MomentTable table = make_moment_table(a, 2 * atoms, bits);
  PrecisionGuard guard(bits);
  VecX<Real> mu(2 * atoms);
  for (int k = 0; k < 2 * atoms; ++k) mu(k) = moment_Lq(table, q, k);
  const auto quad = quadrature<Real>(jacobi_from_moments<Real>(mu));

  const auto [smin, smax] = std::minmax_element(samples.begin(), samples.end());
  const double lo = std::min(*smin, static_cast<double>(quad.atoms(0))) - 0.2;
  const double hi = std::max(*smax, static_cast<double>(quad.atoms(quad.atoms.size() - 1))) + 0.2;
  const VecD grid = VecD::LinSpaced(512, lo, hi);
  const DensityCurve curve = smooth_density(quad, grid);

  // histogram of the sampled endpoints
  const int bins = std::max(10, static_cast<int>(std::round(std::sqrt(static_cast<double>(paths)))));
  std::vector<double> edges(static_cast<std::size_t>(bins) + 1), dens(static_cast<std::size_t>(bins), 0.0);
  for (int b = 0; b <= bins; ++b) edges[static_cast<std::size_t>(b)] = lo + (hi - lo) * b / bins;
  for (double s : samples) {
    int b = static_cast<int>((s - lo) / (hi - lo) * bins);
    b = std::clamp(b, 0, bins - 1);
    dens[static_cast<std::size_t>(b)] += 1.0;
  }
  const double width = (hi - lo) / bins;
  for (auto& v : dens) v /= static_cast<double>(paths) * width;

  CsvWriter hist_csv(ctx.path("histogram.csv"), {"bin_left", "bin_right", "density"});
  for (int b = 0; b < bins; ++b)
    hist_csv.row({format_double(edges[static_cast<std::size_t>(b)]),
                  format_double(edges[static_cast<std::size_t>(b) + 1]),
                  format_double(dens[static_cast<std::size_t>(b)])});
  CsvWriter curve_csv(ctx.path("density.csv"), {"x", "f"});
  for (Eigen::Index g = 0; g < grid.size(); ++g)
    curve_csv.row({format_double(curve.x(g)), format_double(curve.f(g))});

  const HistogramComparison cmp = histogram_compare(samples, curve);
  json j;
  j["a"] = a;
  j["p"] = p;
  j["q"] = q;
  j["paths"] = paths;
  j["n"] = n;
  j["l1_distance"] = cmp.l1;
  j["sup_distance"] = cmp.sup;
  j["ks_distance"] = cmp.ks;
  write_json(ctx, "figure.json", j);

  double fmax = 0.0;
  for (double v : dens) fmax = std::max(fmax, v);
  fmax = std::max(fmax, curve.f.maxCoeff());
  SvgPanel svg(lo, hi, 0, fmax * 1.1);
  svg.add_histogram(edges, dens);
  svg.add_polyline(curve.x, curve.f);
  svg.add_title("density of the normalized limit, p=" + format_double(p) +
                ", q=" + format_double(q));
  svg.write(ctx.path("density.svg"));
  return 0;
}

int dispatch(int argc, const char* const* argv);

int cmd_rerun(const std::string& manifest_path) {
  const RunManifest m = read_manifest(manifest_path);
  std::vector<const char*> argv;
  argv.reserve(m.argv.size());
  for (const auto& arg : m.argv) argv.push_back(arg.c_str());
  return dispatch(static_cast<int>(argv.size()), argv.data());
}

int dispatch(int argc, const char* const* argv) {
  CLI::App app{"elephant random walk laboratory"};
  app.require_subcommand(1);
  Context ctx;
  for (int i = 0; i < argc; ++i) ctx.manifest.argv.emplace_back(argv[i]);

  std::uint64_t seed = 1;
  std::int64_t n = 1000;
  std::int64_t replicas = 1;
  int d = 1;
  std::string p_text = "0.75";
  std::string q_text;
  std::string a_text;
  unsigned bits = 256;

  app.add_option("--out", ctx.out_dir, "output directory");
  app.add_option("--format", ctx.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "rng seed");
  app.add_option("--n", n, "horizon / draws / nodes");
  app.add_option("--replicas", replicas, "independent replicas");
  app.add_option("--d", d, "dimension");
  app.add_option("--p", p_text, "memory parameter (rational or decimal)");
  app.add_option("--q", q_text, "first-step distribution, comma list");
  app.add_option("--a", a_text, "exponent (validated against d,p when both given)");
  app.add_option("--precision-bits", bits, "extended precision in bits");

  auto* sim = app.add_subcommand("simulate", "simulate walks");
  auto* urn = app.add_subcommand("urn", "simulate urns");
  bool subtree = false;
  std::string initial_text;
  urn->add_flag("--subtree", subtree, "simulate the identity-replacement subtree split");
  urn->add_option("--initial", initial_text, "initial composition, comma list");
  auto* oracle = app.add_subcommand("oracle", "exact laws (rational p,q required)");
  auto* moments = app.add_subcommand("moments", "moment recursion and MGF");
  int order = 8;
  bool exact = false;
  double q_scalar = 1.0;
  std::string mgf_t;
  moments->add_option("--order", order, "highest moment order");
  moments->add_flag("--exact", exact, "force exact rational mode");
  moments->add_option("--q-scalar", q_scalar, "first-step probability for L_q moments");
  moments->add_option("--mgf", mgf_t, "evaluate the MGF at t");
  auto* density = app.add_subcommand("density", "moments -> quadrature -> density");
  int atoms = 30;
  std::string grid_text;
  bool clamp = false;
  density->add_option("--atoms", atoms, "quadrature atoms K (uses 2K moments)");
  density->add_option("--grid", grid_text, "lo:hi:points");
  density->add_flag("--clamp", clamp, "clamp negative density and renormalize");
  density->add_option("--q-scalar", q_scalar, "first-step probability");
  auto* fixedpoint = app.add_subcommand("fixedpoint", "particle fixed-point iteration");
  std::string variant = "1d";
  std::int64_t particles = 100000;
  int steps = 20;
  int trials = 0;
  fixedpoint->add_option("--variant", variant, "1d|w|y");
  fixedpoint->add_option("--particles", particles, "population size");
  fixedpoint->add_option("--steps", steps, "map applications");
  fixedpoint->add_option("--contraction-trials", trials, "contraction trials (1d only)");
  auto* support = app.add_subcommand("support", "Krylov dimension and support classes");
  std::string w_text;
  bool evidence = false;
  std::int64_t ev_samples = 1000;
  support->add_option("--w", w_text, "vector, comma list of rationals");
  support->add_flag("--evidence", evidence, "urn MC evidence report");
  support->add_option("--samples", ev_samples, "evidence sample count");
  auto* clusters = app.add_subcommand("clusters", "recursive-tree percolation");
  int series = 0;
  clusters->add_option("--series", series, "sample the truncated cluster series instead");
  auto* figures = app.add_subcommand("figures", "publication-style panels");
  std::string panel = "density";
  std::int64_t paths = 500;
  figures->add_option("--panel", panel, "density|trajectory");
  figures->add_option("--paths", paths, "replicas for the histogram");
  auto* rerun = app.add_subcommand("rerun", "re-execute a stored manifest");
  std::string manifest_path;
  rerun->add_option("--manifest", manifest_path, "manifest.json path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // exit 2 on argument errors, 0 for --help
  }

  const double p_value = parse_number(p_text);

  int rc = 0;
  if (rerun->parsed()) return cmd_rerun(manifest_path);
  if (sim->parsed()) {
    ctx.manifest.subcommand = "simulate";
    ctx.manifest.seed = seed;
    WalkConfig cfg;
    cfg.d = d;
    cfg.p = p_value;
    cfg.n = n;
    cfg.seed = seed;
    cfg.q = q_text.empty() ? std::vector<double>{1.0, 0.0} : parse_q_list(q_text, 2 * d);
    rc = cmd_simulate(ctx, cfg, replicas, a_text);
  } else if (urn->parsed()) {
    ctx.manifest.subcommand = "urn";
    ctx.manifest.seed = seed;
    rc = cmd_urn(ctx, d, p_value, n, seed, replicas, initial_text, subtree);
  } else if (oracle->parsed()) {
    ctx.manifest.subcommand = "oracle";
    ctx.manifest.seed = seed;
    if (q_text.empty()) q_text = "1,0";
    rc = cmd_oracle(ctx, n, d, p_text, q_text);
  } else if (moments->parsed()) {
    ctx.manifest.subcommand = "moments";
    ctx.manifest.seed = seed;
    if (a_text.empty()) throw CLI::ValidationError("--a", "required for moments");
    rc = cmd_moments(ctx, a_text, order, bits, exact, q_scalar, mgf_t);
  } else if (density->parsed()) {
    ctx.manifest.subcommand = "density";
    ctx.manifest.seed = seed;
    if (a_text.empty()) throw CLI::ValidationError("--a", "required for density");
    rc = cmd_density(ctx, a_text, q_scalar, atoms, bits, grid_text, clamp);
  } else if (fixedpoint->parsed()) {
    ctx.manifest.subcommand = "fixedpoint";
    ctx.manifest.seed = seed;
    if (a_text.empty()) throw CLI::ValidationError("--a", "required for fixedpoint");
    rc = cmd_fixedpoint(ctx, variant, a_text, d, particles, steps, seed, trials);
  } else if (support->parsed()) {
    ctx.manifest.subcommand = "support";
    ctx.manifest.seed = seed;
    rc = cmd_support(ctx, d, w_text, evidence, ev_samples, n, p_value, seed, bits);
  } else if (clusters->parsed()) {
    ctx.manifest.subcommand = "clusters";
    ctx.manifest.seed = seed;
    const double a = a_text.empty() ? 2.0 * p_value - 1.0 : parse_number(a_text);
    const double q = q_text.empty() ? 1.0 : parse_q_list(q_text, 0)[0];
    rc = cmd_clusters(ctx, a, q, n, replicas, seed, series);
  } else if (figures->parsed()) {
    ctx.manifest.subcommand = "figures";
    ctx.manifest.seed = seed;
    const double q = q_text.empty() ? 0.9 : parse_q_list(q_text, 0)[0];
    rc = cmd_figures(ctx, panel, p_value, q, paths, n, seed, atoms, bits);
  }
  if (rc == 0) ctx.finish();
  return rc;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  try {
    return dispatch(argc, argv);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace elephant
