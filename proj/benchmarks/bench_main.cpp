#include <ncfree/jacobi.hpp>
#include <ncfree/joint.hpp>
#include <ncfree/scalar.hpp>

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace ncfree;

void bm_counts(benchmark::State& state, CountMethod method) {
  const int k = static_cast<int>(state.range(0));
  const int pairs = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(tcnc2_diagonal_counts(k, pairs, method));
}

void bm_count_dynamic(benchmark::State& s) { bm_counts(s, CountMethod::dynamic); }
void bm_count_enumerate(benchmark::State& s) { bm_counts(s, CountMethod::enumerate); }
void bm_count_recursion(benchmark::State& s) { bm_counts(s, CountMethod::recursion); }
void bm_count_cumulant(benchmark::State& s) { bm_counts(s, CountMethod::cumulant); }

BENCHMARK(bm_count_dynamic)->Args({4, 6})->Args({4, 10})->Args({6, 14});
BENCHMARK(bm_count_enumerate)->Args({4, 6})->Args({4, 8});
BENCHMARK(bm_count_recursion)->Args({4, 6})->Args({4, 10})->Args({6, 14});
BENCHMARK(bm_count_cumulant)->Args({4, 6})->Args({4, 10})->Args({6, 14});

Matrix random_matrix(std::mt19937_64& rng, int d) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = Complex(u(rng), u(rng));
  }
  return m;
}

JacobiParams random_params(std::mt19937_64& rng, Algebra a) {
  auto element = [&] {
    Matrix m = random_matrix(rng, a.dim);
    Matrix h = 0.5 * (m + m.adjoint());
    if (a.kind == AlgebraKind::diagonal) h = Matrix(h.diagonal().asDiagonal());
    return Element(a, h);
  };
  auto map = [&] {
    if (a.kind == AlgebraKind::full) return LinMap::kraus(a, {random_matrix(rng, a.dim), random_matrix(rng, a.dim)});
    // Nonnegative weights between diagonal entries.
    Matrix dense = Matrix::Zero(a.dim * a.dim, a.dim * a.dim);
    for (int i = 0; i < a.dim; ++i) {
      for (int j = 0; j < a.dim; ++j) dense(i * (a.dim + 1), j * (a.dim + 1)) = std::abs(random_matrix(rng, 1)(0, 0));
    }
    return LinMap::dense(a, dense);
  };
  return JacobiParams::from_sequences(a, {element(), element()}, {map(), map()}, element(), map());
}

BWord random_word(std::mt19937_64& rng, Algebra a, std::size_t degree) {
  BWord w{a, {}};
  for (std::size_t i = 0; i <= degree; ++i) {
    Matrix m = random_matrix(rng, a.dim);
    if (a.kind == AlgebraKind::diagonal) m = Matrix(m.diagonal().asDiagonal());
    w.coeffs.emplace_back(a, m);
  }
  return w;
}

void bm_moment_partition_sum(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Algebra a = Algebra::full(2);
  const auto params = random_params(rng, a);
  const auto w = random_word(rng, a, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(moment(params, w));
}
BENCHMARK(bm_moment_partition_sum)->DenseRange(4, 12, 4);

void bm_moment_fock(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Algebra a = Algebra::full(2);
  const auto params = random_params(rng, a);
  const auto w = random_word(rng, a, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fock_moment(params, w));
}
BENCHMARK(bm_moment_fock)->DenseRange(4, 12, 4);

void bm_free_convolve_word(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Algebra a = Algebra::diagonal(2);
  const JointModel model{random_params(rng, a), random_params(rng, a)};
  const auto w = random_word(rng, a, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(free_convolve_word(model, w));
}
BENCHMARK(bm_free_convolve_word)->DenseRange(2, 8, 2);

void bm_two_by_two(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(two_by_two_model_check(Complex(3.0, 1.0), Complex(-2.5, 2.0)));
}
BENCHMARK(bm_two_by_two);

}  // namespace

BENCHMARK_MAIN();
