#include "ncdag/rlnc.hpp"

#include <algorithm>
#include <string>

namespace ncdag::rlnc {

DataSet::DataSet(std::vector<Generation> generations) : generations_(std::move(generations)) {
  if (generations_.size() != kGenerationCount) {
    throw std::invalid_argument("data set needs exactly " + std::to_string(kGenerationCount) + " generations");
  }
  payload_len_ = generations_.front().packets.cols();
  for (std::size_t i = 0; i < generations_.size(); ++i) {
    const auto& g = generations_[i];
    if (g.id != i) throw std::invalid_argument("generation ids must be 0..15 in order");
    if (g.packets.rows() != kGenerationSize || g.packets.cols() != payload_len_) {
      throw std::invalid_argument("generation must hold 12 packets of equal length");
    }
  }
}

DataSet DataSet::random(std::size_t payload_len, Rng& rng) {
  std::vector<Generation> gens;
  gens.reserve(kGenerationCount);
  for (std::size_t g = 0; g < kGenerationCount; ++g) {
    Generation gen{static_cast<std::uint8_t>(g), gf256::Matrix(kGenerationSize, payload_len)};
    for (std::size_t r = 0; r < kGenerationSize; ++r) {
      for (auto& b : gen.packets.row(r)) b = rng.byte();
    }
    gens.push_back(std::move(gen));
  }
  return DataSet(std::move(gens));
}

CodedPacket encode_with(const Generation& gen, const CoeffVector& coeffs) {
  if (gen.packets.rows() != kGenerationSize) throw std::invalid_argument("generation not fully populated");
  CodedPacket p;
  p.gen_id = gen.id;
  p.gen_size = kGenerationSize;
  p.coeffs = coeffs;
  p.payload.assign(gen.packets.cols(), 0);
  for (std::size_t i = 0; i < kGenerationSize; ++i) gf256::axpy(p.payload, gen.packets.row(i), coeffs[i]);
  return p;
}

CodedPacket encode(const Generation& gen, Rng& rng) {
  CoeffVector c;
  for (auto& v : c) v = rng.byte();
  return encode_with(gen, c);
}

CodedPacket draw_coefficients(std::uint8_t gen_id, Rng& rng) {
  CodedPacket p;
  p.gen_id = gen_id;
  for (auto& v : p.coeffs) v = rng.byte();
  return p;
}

std::array<std::uint8_t, kHeaderSize> write_header(const CodedPacket& p) {
  if (p.gen_id >= kGenerationCount) throw std::invalid_argument("generation id out of range");
  if (p.gen_size < 1 || p.gen_size > 16) throw std::invalid_argument("generation size out of range");
  std::array<std::uint8_t, kHeaderSize> out{};
  out[0] = static_cast<std::uint8_t>(((p.gen_size - 1) << 4) | p.gen_id);
  std::copy(p.coeffs.begin(), p.coeffs.end(), out.begin() + 1);
  return out;
}

HeaderFields read_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) throw std::invalid_argument("buffer shorter than 13-byte header");
  HeaderFields h;
  h.gen_size = static_cast<std::uint8_t>((bytes[0] >> 4) + 1);
  h.gen_id = bytes[0] & 0x0F;
  std::copy_n(bytes.begin() + 1, kGenerationSize, h.coeffs.begin());
  return h;
}

std::vector<std::uint8_t> to_wire(const CodedPacket& p) {
  const auto h = write_header(p);
  std::vector<std::uint8_t> out(h.begin(), h.end());
  out.insert(out.end(), p.payload.begin(), p.payload.end());
  return out;
}

CodedPacket from_wire(std::span<const std::uint8_t> bytes) {
  const auto h = read_header(bytes);
  CodedPacket p;
  p.gen_id = h.gen_id;
  p.gen_size = h.gen_size;
  p.coeffs = h.coeffs;
  p.payload.assign(bytes.begin() + kHeaderSize, bytes.end());
  return p;
}

bool GenerationDecoder::reduce(CoeffVector& v, std::vector<gf256::Element>* payload) const {
  for (const auto& r : rows_) {
    const auto f = v[r.pivot];
    if (f == 0) continue;
    gf256::axpy(v, r.coeffs, f);
    if (payload != nullptr) gf256::axpy(*payload, r.payload, f);
  }
  return std::any_of(v.begin(), v.end(), [](auto x) { return x != 0; });
}

bool GenerationDecoder::is_innovative(const CoeffVector& coeffs) const {
  if (decodable()) return false;
  CoeffVector v = coeffs;
  return reduce(v, nullptr);
}

bool GenerationDecoder::insert(const CodedPacket& p) {
  if (decodable()) return false;
  Row row{0, p.coeffs, {}};
  if (track_payload_) row.payload = p.payload;
  if (!reduce(row.coeffs, track_payload_ ? &row.payload : nullptr)) return false;

  while (row.coeffs[row.pivot] == 0) ++row.pivot;
  const auto f = gf256::inv(row.coeffs[row.pivot]);
  gf256::scale(row.coeffs, f);
  if (track_payload_) gf256::scale(row.payload, f);

  // Clear the new pivot column from the existing rows.
  for (auto& r : rows_) {
    const auto k = r.coeffs[row.pivot];
    if (k == 0) continue;
    gf256::axpy(r.coeffs, row.coeffs, k);
    if (track_payload_) gf256::axpy(r.payload, row.payload, k);
  }
  rows_.push_back(std::move(row));
  return true;
}

gf256::Matrix GenerationDecoder::decode() const {
  if (!decodable()) throw InsufficientRankError();
  if (!track_payload_) throw std::logic_error("decoder was built without payload tracking");
  const std::size_t len = rows_.front().payload.size();
  gf256::Matrix out(kGenerationSize, len);
  for (const auto& r : rows_) std::copy(r.payload.begin(), r.payload.end(), out.row(r.pivot).begin());
  return out;
}

gf256::Matrix GenerationDecoder::coefficient_matrix() const {
  gf256::Matrix m(0, kGenerationSize);
  for (const auto& r : rows_) m.append_row(r.coeffs);
  return m;
}

Decoder::Decoder(bool track_payload) : generations_(kGenerationCount, GenerationDecoder(track_payload)) {}

const GenerationDecoder& Decoder::generation(std::size_t gen_id) const {
  if (gen_id >= kGenerationCount) throw std::out_of_range("generation id out of range");
  return generations_[gen_id];
}

bool Decoder::is_innovative(const CodedPacket& p) const { return generation(p.gen_id).is_innovative(p.coeffs); }

bool Decoder::insert(const CodedPacket& p) {
  if (p.gen_id >= kGenerationCount) throw std::out_of_range("generation id out of range");
  auto& g = generations_[p.gen_id];
  if (!g.insert(p)) return false;
  ++total_rank_;
  if (g.decodable()) ++complete_generations_;
  return true;
}

}  // namespace ncdag::rlnc
