#include "ltrelay/relay_sim.hpp"

#include <stdexcept>
#include <utility>

#include "ltrelay/decoder.hpp"
#include "ltrelay/erasure_channel.hpp"

namespace ltrelay {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::SingleHop: return "single";
    case Strategy::DecodeForward: return "df";
    case Strategy::PartialDecodeForward: return "pdf";
  }
  throw std::logic_error("unknown strategy");
}

Strategy parse_strategy(const std::string& name) {
  if (name == "single") return Strategy::SingleHop;
  if (name == "df") return Strategy::DecodeForward;
  if (name == "pdf") return Strategy::PartialDecodeForward;
  throw std::invalid_argument("unknown strategy '" + name + "' (expected single, df or pdf)");
}

void SimConfig::validate() const {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (symbol_size < 1) throw std::invalid_argument("symbol_size must be >= 1");
  if (!(eps_sr >= 0.0 && eps_sr <= 1.0)) throw std::invalid_argument("eps_sr must lie in [0, 1]");
  if (!(eps_rd >= 0.0 && eps_rd <= 1.0)) throw std::invalid_argument("eps_rd must lie in [0, 1]");
  if (k >= 2) {
    if (!(c > 0.0)) throw std::invalid_argument("c must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  }
  if (max_slots != 0 && max_slots < k) {
    throw std::invalid_argument("max_slots must be 0 (auto) or at least k");
  }
  if (source_encoder == EncoderVariant::DynamicRelay) {
    throw std::invalid_argument("source encoder must be a full-block variant");
  }
  if (relay_encoder == EncoderVariant::DynamicRelay) {
    throw std::invalid_argument(
        "relay encoder must be a full-block variant (dynamic selection is implied by pdf)");
  }
}

DegreeDistribution SimConfig::make_distribution() const {
  if (k == 1) return DegreeDistribution::from_pmf({1.0});
  return robust_soliton(k, c, delta);
}

namespace {

LtEncoder make_encoder(EncoderVariant variant, const DegreeDistribution& dist, Rng& rng) {
  switch (variant) {
    case EncoderVariant::PlainLt: return LtEncoder::plain(dist);
    case EncoderVariant::Mblte: return LtEncoder::mblte(dist);
    case EncoderVariant::AmicableMblte: return LtEncoder::amicable(dist, rng);
    case EncoderVariant::DynamicRelay: return LtEncoder::dynamic_relay(dist);
  }
  throw std::logic_error("unknown encoder variant");
}

}  // namespace

SimTrace run_single_hop(const SimConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const DegreeDistribution dist = cfg.make_distribution();
  Rng payload_rng = Rng::substream(seed, stream_tag::payload);
  const SourceBlock block = SourceBlock::random(cfg.k, cfg.symbol_size, payload_rng);
  Rng src_rng = Rng::substream(seed, stream_tag::source_enc);
  LtEncoder encoder = make_encoder(cfg.source_encoder, dist, src_rng);
  ErasureChannel channel(cfg.eps_sr, Rng::substream(seed, stream_tag::chan_sr));
  PeelingDecoder decoder(cfg.k, cfg.symbol_size);

  SimTrace trace;
  const std::uint64_t cap = cfg.effective_max_slots();
  for (std::uint64_t t = 1; t <= cap; ++t) {
    auto sym = encoder.encode_next(block, src_rng);
    if (auto delivered = channel.transmit(std::move(*sym))) decoder.ingest(*delivered);
    trace.slots.push_back(SlotRecord{0, decoder.recovered_count(), false});
    if (decoder.is_complete()) {
      trace.completion_slot = t;
      break;
    }
  }
  return trace;
}

SimTrace run_df(const SimConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const DegreeDistribution dist = cfg.make_distribution();
  Rng payload_rng = Rng::substream(seed, stream_tag::payload);
  const SourceBlock block = SourceBlock::random(cfg.k, cfg.symbol_size, payload_rng);
  Rng src_rng = Rng::substream(seed, stream_tag::source_enc);
  LtEncoder src_encoder = make_encoder(cfg.source_encoder, dist, src_rng);
  ErasureChannel sr_channel(cfg.eps_sr, Rng::substream(seed, stream_tag::chan_sr));
  PeelingDecoder relay_dec(cfg.k, cfg.symbol_size);

  SimTrace trace;
  const std::uint64_t cap = cfg.effective_max_slots();

  // Stage 1: fill the relay. The destination hears nothing.
  for (std::uint64_t t = 1; t <= cap; ++t) {
    auto sym = src_encoder.encode_next(block, src_rng);
    if (auto delivered = sr_channel.transmit(std::move(*sym))) relay_dec.ingest(*delivered);
    trace.slots.push_back(SlotRecord{relay_dec.recovered_count(), 0, false});
    if (relay_dec.is_complete()) {
      trace.relay_completion_slot = t;
      break;
    }
  }
  if (!trace.relay_completion_slot) return trace;  // cap hit mid stage 1

  // Stage 2: instantaneous ACK; the relay re-encodes the full block with a
  // fresh encoder and its own selection memory.
  SourceBlock relay_block(cfg.k, cfg.symbol_size);
  for (std::uint32_t i = 0; i < cfg.k; ++i) relay_block.set_payload(i, relay_dec.payload(i));
  Rng relay_rng = Rng::substream(seed, stream_tag::relay_enc);
  LtEncoder relay_encoder = make_encoder(cfg.relay_encoder, dist, relay_rng);
  ErasureChannel rd_channel(cfg.eps_rd, Rng::substream(seed, stream_tag::chan_rd));
  PeelingDecoder dest_dec(cfg.k, cfg.symbol_size);

  for (std::uint64_t t = *trace.relay_completion_slot + 1; t <= cap; ++t) {
    auto sym = relay_encoder.encode_next(relay_block, relay_rng);
    if (auto delivered = rd_channel.transmit(std::move(*sym))) dest_dec.ingest(*delivered);
    trace.slots.push_back(SlotRecord{cfg.k, dest_dec.recovered_count(), true});
    if (dest_dec.is_complete()) {
      trace.completion_slot = t;
      break;
    }
  }
  return trace;
}

SimTrace run_pdf(const SimConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const DegreeDistribution dist = cfg.make_distribution();
  Rng payload_rng = Rng::substream(seed, stream_tag::payload);
  const SourceBlock block = SourceBlock::random(cfg.k, cfg.symbol_size, payload_rng);
  Rng src_rng = Rng::substream(seed, stream_tag::source_enc);
  LtEncoder src_encoder = make_encoder(cfg.source_encoder, dist, src_rng);
  ErasureChannel sr_channel(cfg.eps_sr, Rng::substream(seed, stream_tag::chan_sr));
  PeelingDecoder relay_dec(cfg.k, cfg.symbol_size);

  // The relay's working copy of the block, filled in as it decodes; the
  // dynamic encoder's eligible set only ever covers filled entries.
  SourceBlock relay_block(cfg.k, cfg.symbol_size);
  Rng relay_rng = Rng::substream(seed, stream_tag::relay_enc);
  LtEncoder relay_encoder = LtEncoder::dynamic_relay(dist);
  ErasureChannel rd_channel(cfg.eps_rd, Rng::substream(seed, stream_tag::chan_rd));
  PeelingDecoder dest_dec(cfg.k, cfg.symbol_size);

  SimTrace trace;
  const std::uint64_t cap = cfg.effective_max_slots();
  std::vector<std::uint32_t> newly;
  for (std::uint64_t t = 1; t <= cap; ++t) {
    // (1) source -> relay, until the relay ACKs completion.
    if (!relay_dec.is_complete()) {
      auto sym = src_encoder.encode_next(block, src_rng);
      if (auto delivered = sr_channel.transmit(std::move(*sym))) {
        newly.clear();
        for (const Recovered& r : relay_dec.ingest(*delivered)) {
          relay_block.set_payload(r.index, r.payload);
          newly.push_back(r.index);
        }
        // (2) this slot's recoveries become encodable immediately.
        relay_encoder.grow_eligible(newly);
      }
      if (!trace.relay_completion_slot && relay_dec.is_complete()) {
        trace.relay_completion_slot = t;
      }
    }
    // (3) relay -> destination in the same slot; silent only while the
    // eligible set is empty.
    bool emitted = false;
    if (auto sym = relay_encoder.encode_next(relay_block, relay_rng)) {
      emitted = true;
      if (auto delivered = rd_channel.transmit(std::move(*sym))) dest_dec.ingest(*delivered);
    }
    trace.slots.push_back(
        SlotRecord{relay_dec.recovered_count(), dest_dec.recovered_count(), emitted});
    if (dest_dec.is_complete()) {
      trace.completion_slot = t;
      break;
    }
  }
  return trace;
}

SimTrace run_simulation(const SimConfig& cfg, std::uint64_t seed) {
  switch (cfg.strategy) {
    case Strategy::SingleHop: return run_single_hop(cfg, seed);
    case Strategy::DecodeForward: return run_df(cfg, seed);
    case Strategy::PartialDecodeForward: return run_pdf(cfg, seed);
  }
  throw std::logic_error("unknown strategy");
}

}  // namespace ltrelay
