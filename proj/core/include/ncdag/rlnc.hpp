#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "ncdag/gf256.hpp"
#include "ncdag/random.hpp"

namespace ncdag::rlnc {

inline constexpr std::size_t kGenerationSize = 12;
inline constexpr std::size_t kGenerationCount = 16;
inline constexpr std::size_t kSourcePackets = kGenerationSize * kGenerationCount;
inline constexpr std::size_t kHeaderSize = 13;

using CoeffVector = std::array<gf256::Element, kGenerationSize>;

// One block of source packets coded together. `packets` is 12 rows of L bytes.
struct Generation {
  std::uint8_t id = 0;
  gf256::Matrix packets;
};

// The full data set held by a source: 16 generations of 12 packets.
class DataSet {
 public:
  DataSet(std::vector<Generation> generations);

  static DataSet random(std::size_t payload_len, Rng& rng);

  const Generation& generation(std::size_t id) const { return generations_.at(id); }
  std::size_t payload_len() const noexcept { return payload_len_; }

 private:
  std::vector<Generation> generations_;
  std::size_t payload_len_ = 0;
};

struct CodedPacket {
  std::uint8_t gen_id = 0;
  std::uint8_t gen_size = kGenerationSize;
  CoeffVector coeffs{};
  std::vector<gf256::Element> payload;

  friend bool operator==(const CodedPacket&, const CodedPacket&) = default;
};

struct HeaderFields {
  std::uint8_t gen_id = 0;
  std::uint8_t gen_size = 0;
  CoeffVector coeffs{};

  friend bool operator==(const HeaderFields&, const HeaderFields&) = default;
};

// Combination with uniformly drawn coefficients.
CodedPacket encode(const Generation& gen, Rng& rng);

// Combination with caller-supplied coefficients.
CodedPacket encode_with(const Generation& gen, const CoeffVector& coeffs);

// Coefficient-only packet (no payload), for runs that only track rank.
CodedPacket draw_coefficients(std::uint8_t gen_id, Rng& rng);

// Byte 0: (gen_size - 1) << 4 | gen_id. Bytes 1..12: coefficients in packet order.
std::array<std::uint8_t, kHeaderSize> write_header(const CodedPacket& p);
HeaderFields read_header(std::span<const std::uint8_t> bytes);

// Header followed by payload.
std::vector<std::uint8_t> to_wire(const CodedPacket& p);
CodedPacket from_wire(std::span<const std::uint8_t> bytes);

class InsufficientRankError : public std::runtime_error {
 public:
  InsufficientRankError() : std::runtime_error("insufficient rank") {}
};

// Incremental decoder for a single generation. Stored coefficient rows are
// kept in reduced row-echelon form, so they stay independent and a full-rank
// state is the identity up to row order.
class GenerationDecoder {
 public:
  explicit GenerationDecoder(bool track_payload = true) : track_payload_(track_payload) {}

  std::size_t rank() const noexcept { return rows_.size(); }
  bool decodable() const noexcept { return rank() == kGenerationSize; }

  bool is_innovative(const CoeffVector& coeffs) const;
  bool insert(const CodedPacket& p);

  // Original packets in index order. Throws InsufficientRankError below full rank.
  gf256::Matrix decode() const;

  gf256::Matrix coefficient_matrix() const;

 private:
  struct Row {
    std::size_t pivot;
    CoeffVector coeffs;
    std::vector<gf256::Element> payload;
  };

  // Eliminates stored pivots from `v`; returns true if anything is left.
  bool reduce(CoeffVector& v, std::vector<gf256::Element>* payload) const;

  bool track_payload_;
  std::vector<Row> rows_;
};

// Per-sink decoder over all generations.
class Decoder {
 public:
  explicit Decoder(bool track_payload = true);

  bool is_innovative(const CodedPacket& p) const;
  bool insert(const CodedPacket& p);

  std::size_t rank(std::size_t gen_id) const { return generation(gen_id).rank(); }
  bool decodable(std::size_t gen_id) const { return generation(gen_id).decodable(); }
  bool complete() const noexcept { return complete_generations_ == kGenerationCount; }
  std::size_t total_rank() const noexcept { return total_rank_; }

  gf256::Matrix decode(std::size_t gen_id) const { return generation(gen_id).decode(); }

  const GenerationDecoder& generation(std::size_t gen_id) const;

 private:
  std::vector<GenerationDecoder> generations_;
  std::size_t complete_generations_ = 0;
  std::size_t total_rank_ = 0;
};

}  // namespace ncdag::rlnc
