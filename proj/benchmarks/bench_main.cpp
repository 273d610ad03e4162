#include <benchmark/benchmark.h>

#include <vector>

#include "ncdag/engine.hpp"
#include "ncdag/gf256.hpp"
#include "ncdag/random.hpp"
#include "ncdag/rlnc.hpp"

using namespace ncdag;

static void BM_gf_mul(benchmark::State& state) {
  Rng rng(1);
  std::vector<gf256::Element> xs(4096);
  for (auto& x : xs) x = rng.byte();
  gf256::Element acc = 1;
  for (auto _ : state) {
    for (auto x : xs) acc = gf256::mul(acc ^ x, x | 1);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(xs.size()));
}
BENCHMARK(BM_gf_mul);

static void BM_gf_axpy(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  std::vector<gf256::Element> dst(n), src(n);
  for (auto& x : src) x = rng.byte();
  for (auto _ : state) {
    gf256::axpy(dst, src, 0x57);
    benchmark::ClobberMemory();
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_gf_axpy)->Arg(100)->Arg(1500);

static void BM_decode_generation(benchmark::State& state) {
  const auto len = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  const auto data = rlnc::DataSet::random(len, rng);
  std::vector<rlnc::CodedPacket> packets;
  for (int i = 0; i < 16; ++i) packets.push_back(rlnc::encode(data.generation(0), rng));
  for (auto _ : state) {
    rlnc::GenerationDecoder dec;
    for (const auto& p : packets) {
      if (dec.decodable()) break;
      dec.insert(p);
    }
    benchmark::DoNotOptimize(dec.decode());
  }
}
BENCHMARK(BM_decode_generation)->Arg(100)->Arg(1500);

static void BM_engine_run(benchmark::State& state) {
  engine::SimConfig c;
  c.strategy = static_cast<mac::StrategyKind>(state.range(0));
  c.phy.payload_len = 1500;
  c.phy.rate_mbps = 24;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(engine::run(c, seed++));
}
BENCHMARK(BM_engine_run)->DenseRange(0, 2);
BENCHMARK_MAIN();
