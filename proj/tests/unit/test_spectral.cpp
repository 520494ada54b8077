#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "graphlim/errors.hpp"
#include "graphlim/inertia.hpp"
#include "graphlim/local_stats.hpp"
#include "graphlim/reference_curves.hpp"
#include "graphlim/sequence.hpp"
#include "graphlim/spectral.hpp"
#include "oracle.hpp"

using namespace graphlim;

namespace {

SpectralOptions dense() {
  SpectralOptions o;
  o.mode = SpectrumMode::dense;
  return o;
}

SpectralOptions inertia() {
  SpectralOptions o;
  o.mode = SpectrumMode::inertia;
  return o;
}

}  // namespace

TEST_CASE("builtin kernels assemble the expected matrices") {
  Rng rng(81);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = oracle::random_bounded_graph(rng, 15, 3, 20);
    const SymMatrix a = assemble(g, builtin_kernel("adjacency"));
    const SymMatrix l = assemble(g, builtin_kernel("laplacian"));
    const SymMatrix gl = assemble(g, builtin_kernel("graph-laplacian"));
    for (int x = 0; x < 15; ++x) {
      for (int y = 0; y < 15; ++y) {
        const double adj = g.has_edge(x, y) ? 1.0 : 0.0;
        const double deg = x == y ? g.degree(x) : 0.0;
        CHECK(a.at(x, y) == adj);
        CHECK(l.at(x, y) == adj - deg);
        CHECK(gl.at(x, y) == deg - adj);
      }
    }
    CHECK(assemble(g, builtin_kernel("zero")).trace() == 0.0);
  }
  CHECK_THROWS_AS(builtin_kernel("hamiltonian"), InvalidInput);
}

TEST_CASE("dense spectra match closed forms") {
  for (int n : {5, 40, 101}) {
    const auto cdf = spectral_cdf(assemble(gen_path(n), builtin_kernel("graph-laplacian")), dense());
    const auto ev = cdf.eigenvalues();
    const auto expected = oracle::path_graph_laplacian_spectrum(n);
    REQUIRE(ev.size() == expected.size());
    for (std::size_t i = 0; i < ev.size(); ++i) CHECK(ev[i] == doctest::Approx(expected[i]).epsilon(1e-10));
    const auto cyc = spectral_cdf(assemble(gen_cycle(n), builtin_kernel("graph-laplacian")), dense());
    const auto cev = cyc.eigenvalues();
    const auto cexp = oracle::cycle_graph_laplacian_spectrum(n);
    for (std::size_t i = 0; i < cev.size(); ++i) CHECK(cev[i] == doctest::Approx(cexp[i]).epsilon(1e-10));
  }
}

TEST_CASE("dense and inertia counts agree") {
  Rng rng(82);
  for (int trial = 0; trial < 15; ++trial) {
    const Graph g = oracle::random_bounded_graph(rng, 60, 3, 80);
    for (const char* kernel : {"adjacency", "laplacian"}) {
      const SymMatrix m = assemble(g, builtin_kernel(kernel));
      const auto d = spectral_cdf(m, dense());
      const auto i = spectral_cdf(m, inertia());
      CHECK_FALSE(i.is_dense());
      for (int step = -40; step <= 40; ++step) {
        const double lambda = step * 0.17 + 0.013;
        CHECK(d.count_at_most(lambda) == i.count_at_most(lambda));
      }
      for (double ev : d.jump_points()) {
        CHECK(d.count_at_most(ev) == i.count_at_most(ev));
        CHECK(d.count_below(ev) == i.count_below(ev));
      }
    }
  }
}

TEST_CASE("inertia counter handles shifts at eigenvalues") {
  const SymMatrix m = assemble(gen_path(9), builtin_kernel("adjacency"));
  const InertiaCounter c(m);
  CHECK(c.count_below(0.0) == 4);
  CHECK(c.count_below(1e-6) == 5);
  CHECK(c.count_below(-3.0) == 0);
  CHECK(c.count_below(3.0) == 9);
}

TEST_CASE("reverse Cuthill-McKee recovers a narrow band") {
  Rng rng(83);
  const Graph g = oracle::random_relabel(rng, gen_path(50));
  const SymMatrix m = assemble(g, builtin_kernel("adjacency"));
  const auto order = reverse_cuthill_mckee(m);
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) CHECK(sorted[i] == i);
  CHECK(InertiaCounter(m).bandwidth() == 1);
}

TEST_CASE("table kernels") {
  const std::string json = R"({"R": 1, "entries": [
    {"ball": {"n": 3, "root": 1, "edges": [[0, 1], [1, 2]]}, "values": [1, 0, 1]},
    {"ball": {"n": 2, "root": 0, "edges": [[0, 1]]}, "values": [0, 1]}]})";
  const KernelSpec k = parse_kernel_json(json);
  CHECK(k.range == 1);
  CHECK(k.table.size() == 2);
  const Graph p = gen_path(12);
  CHECK(assemble(p, k) == assemble(p, builtin_kernel("adjacency")));
  CHECK_THROWS_AS(assemble(gen_cycle(3), k), InvalidInput);

  const std::string asym = R"({"R": 1, "entries": [
    {"ball": {"n": 3, "root": 1, "edges": [[0, 1], [1, 2]]}, "values": [1, 0, 2]}]})";
  CHECK_THROWS_AS(parse_kernel_json(asym), InvalidInput);
  const std::string unknown = R"({"R": 1, "entries": [], "potential": 3})";
  CHECK_THROWS_AS(parse_kernel_json(unknown), InvalidInput);

  // a degree-dependent potential breaks symmetry across an edge
  const std::string skew = R"({"R": 1, "entries": [
    {"ball": {"n": 3, "root": 1, "edges": [[0, 1], [1, 2]]}, "values": [1, 0, 1]},
    {"ball": {"n": 2, "root": 0, "edges": [[0, 1]]}, "values": [0, 2]}]})";
  try {
    assemble(p, parse_kernel_json(skew));
    FAIL("expected an asymmetry error");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("symmetric") != std::string::npos);
  }
}

TEST_CASE("trace identity on random graphs") {
  Rng rng(84);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = oracle::random_bounded_graph(rng, 5 + static_cast<int>(rng.below(30)), 3, 25);
    const auto t = trace_identity(g, builtin_kernel("laplacian"));
    CHECK(t.class_sum == doctest::Approx(-2.0 * g.edge_count() / g.vertex_count()).epsilon(1e-14));
    CHECK(t.diagonal_average == doctest::Approx(t.class_sum).epsilon(1e-14));
    CHECK(trace_functional(class_census(g, 1), builtin_kernel("adjacency")) == 0.0);
  }
}

TEST_CASE("atom masses are exact rationals") {
  const auto odd = spectral_cdf(assemble(gen_path(9), builtin_kernel("adjacency")));
  CHECK(atom_mass(odd, 0.0) == Rational(1, 9));
  CHECK(atom_mass(odd, 0.5) == Rational(0));
  const auto cyc = spectral_cdf(assemble(gen_cycle(8), builtin_kernel("adjacency")));
  CHECK(atom_mass(cyc, 0.0) == Rational(2, 8));
  CHECK(atom_mass(cyc, 2.0) == Rational(1, 8));
}

TEST_CASE("CDF normalization and monotonicity") {
  Rng rng(85);
  const Graph g = oracle::random_bounded_graph(rng, 50, 3, 70);
  const auto cdf = spectral_cdf(assemble(g, builtin_kernel("laplacian")));
  CHECK(cdf.dimension() == 50);
  CHECK(cdf(-cdf.spectral_bound() - 1.0) == 0.0);
  CHECK(cdf(cdf.spectral_bound() + 1.0) == 1.0);
  CHECK(cdf.cumulative_counts().back() == 50);
  double last = 0.0;
  for (double t : comparison_grid(cdf)) {
    CHECK(cdf(t) >= last);
    CHECK(cdf.left_limit(t) <= cdf(t));
    last = cdf(t);
  }
  const auto counting = cdf.counting_function();
  for (double t : cdf.jump_points()) CHECK(counting(t) == static_cast<double>(cdf.count_at_most(t)));
}

TEST_CASE("reference curves") {
  const auto gl = lattice_ids("graph-laplacian");
  CHECK(gl(0.0) == 0.0);
  CHECK(gl(2.0) == doctest::Approx(0.5));
  CHECK(gl(4.0) == 1.0);
  CHECK(gl(1.0) == doctest::Approx(std::acos(0.5) / std::numbers::pi));
  const auto l = lattice_ids("laplacian");
  CHECK(l(-1.0) == doctest::Approx(1.0 - gl(1.0)));
  const auto a = lattice_ids("adjacency");
  CHECK(a(0.0) == doctest::Approx(0.5));
  CHECK(a(1.0) == doctest::Approx(std::acos(-0.5) / std::numbers::pi));
  const auto km = kesten_mckay(3);
  CHECK(km.upper == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(km(0.0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(km(km.upper) == 1.0);
  double prev = 0.0;
  for (int i = -100; i <= 100; ++i) {
    const double v = km(i * 0.03);
    CHECK(v >= prev - 1e-15);
    prev = v;
  }
  CHECK_THROWS_AS(kesten_mckay(2), InvalidInput);
  CHECK_THROWS_AS(reference_curve("semicircle", "adjacency", 3), InvalidInput);
}

TEST_CASE("random regular spectra approach Kesten-McKay") {
  const Graph g = gen_random_regular(800, 3, 1);
  const auto cdf = spectral_cdf(assemble(g, builtin_kernel("adjacency")));
  CHECK(sup_distance(cdf, kesten_mckay(3)) < 0.05);
}

TEST_CASE("ids experiment on paths and the null flag") {
  std::vector<Graph> seq{gen_path(20), gen_path(40), gen_path(80)};
  const auto ref = reference_curve("arccos-1d", "laplacian", 2);
  const auto r = ids_experiment(seq, builtin_kernel("laplacian"), ref);
  REQUIRE(r.members.size() == 3);
  for (const auto& m : r.members) CHECK(*m.reference_distance <= 1.5 / m.vertex_count);
  CHECK(r.consecutive.size() == 2);
  CHECK_FALSE(r.null_sequence);
  const auto z = ids_experiment(seq, builtin_kernel("zero"));
  CHECK(z.null_sequence);
  for (const auto& m : z.members) CHECK(m.cdf.count_below(0.0) == 0);
}
