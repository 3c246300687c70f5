#include "diamond/channel.hpp"

#include <cmath>
#include <sstream>

#include "diamond/error.hpp"

namespace diamond {

namespace {

void check_snr(const char* name, double g) {
  if (!std::isfinite(g) || g < 0.0) {
    std::ostringstream os;
    os << "SNR " << name << " must be finite and >= 0, got " << g;
    throw DomainError(os.str());
  }
}

struct Preset {
  std::string_view name;
  std::string_view description;
  Variant variant;
  double a1_db, b1_db, a2_db, b2_db;
  double extra_db;  // gamma_ab or gamma_12 depending on variant
};

// Preset SNRs in dB.
constexpr std::array<Preset, 5> kPresets = {{
    {"I", "Channel I: a1=15 dB, b1=10 dB, a2=10 dB, b2=15 dB", Variant::plain,
     15, 10, 10, 15, 0},
    {"II", "Channel II: a1=10 dB, b1=12 dB, a2=14 dB, b2=16 dB",
     Variant::plain, 10, 12, 14, 16, 0},
    {"III", "Channel III: a1=30 dB, b1=20 dB, a2=3 dB, b2=4 dB",
     Variant::plain, 30, 20, 3, 4, 0},
    {"direct_fig6",
     "Direct link: a1=15 dB, b1=10 dB, a2=10 dB, b2=15 dB, ab=8 dB",
     Variant::direct_link, 15, 10, 10, 15, 8},
    {"interfering_fig7",
     "Interfering relays: a1=20 dB, b1=10 dB, a2=10 dB, b2=20 dB, 12=20 dB",
     Variant::interfering_relays, 20, 10, 10, 20, 20},
}};

constexpr std::array<std::string_view, 5> kPresetNames = {
    kPresets[0].name, kPresets[1].name, kPresets[2].name, kPresets[3].name,
    kPresets[4].name};

const Preset& find_preset(std::string_view name) {
  for (const auto& p : kPresets)
    if (p.name == name) return p;
  throw ValidationError("unknown preset '" + std::string(name) +
                        "' (expected I, II, III, direct_fig6 or "
                        "interfering_fig7)");
}

using N = Node;

// Transmitter sets; ids follow the usual numbering of the diamond states.
const std::array<HalfDuplexState, kNumStates> kStates = {{
    {1, {N::A, N::R2}},           // A->R1, R2->B
    {2, {N::A, N::R1}},           // A->R2, R1->B
    {3, {N::A}},                  // A->{R1,R2}
    {4, {N::A, N::R1, N::R2}},    // {R1,R2}->B
    {5, {N::B, N::R2}},           // B->R1, R2->A
    {6, {N::B, N::R1}},           // B->R2, R1->A
    {7, {N::B}},                  // B->{R1,R2}
    {8, {N::B, N::R1, N::R2}},    // {R1,R2}->A
    {9, {N::A, N::B, N::R2}},     // {A,B}->R1
    {10, {N::A, N::B, N::R1}},    // {A,B}->R2
    {11, {N::R1}},                // R1->{A,B}
    {12, {N::R2}},                // R2->{A,B}
    {13, {N::R1, N::R2}},         // {R1,R2}->{A,B}
    {14, {N::A, N::B}},           // {A,B}->{R1,R2}
}};

}  // namespace

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::plain: return "plain";
    case Variant::direct_link: return "direct_link";
    case Variant::interfering_relays: return "interfering_relays";
  }
  return "?";
}

std::string_view to_string(Convention c) {
  return c == Convention::as_printed ? "as_printed" : "complex";
}

std::string_view to_string(Node n) {
  switch (n) {
    case Node::A: return "a";
    case Node::B: return "b";
    case Node::R1: return "r1";
    case Node::R2: return "r2";
  }
  return "?";
}

Variant parse_variant(std::string_view s) {
  if (s == "plain") return Variant::plain;
  if (s == "direct_link" || s == "direct-link") return Variant::direct_link;
  if (s == "interfering_relays" || s == "interfering-relays")
    return Variant::interfering_relays;
  throw ValidationError("unknown variant '" + std::string(s) + "'");
}

Convention parse_convention(std::string_view s) {
  if (s == "as_printed" || s == "as-printed") return Convention::as_printed;
  if (s == "complex") return Convention::complex;
  throw ValidationError("unknown convention '" + std::string(s) + "'");
}

void ChannelConfig::validate() const {
  check_snr("a1", gamma_a1);
  check_snr("a2", gamma_a2);
  check_snr("b1", gamma_b1);
  check_snr("b2", gamma_b2);
  if (gamma_ab) check_snr("ab", *gamma_ab);
  if (gamma_12) check_snr("12", *gamma_12);
  if (gamma_ab.has_value() != (variant == Variant::direct_link))
    throw ValidationError(
        "gamma_ab must be present exactly for the direct_link variant");
  if (gamma_12.has_value() != (variant == Variant::interfering_relays))
    throw ValidationError(
        "gamma_12 must be present exactly for the interfering_relays variant");
}

ChannelConfig ChannelConfig::swapped() const {
  ChannelConfig c = *this;
  std::swap(c.gamma_a1, c.gamma_b1);
  std::swap(c.gamma_a2, c.gamma_b2);
  return c;
}

ChannelConfig ChannelConfig::as_plain() const {
  ChannelConfig c = *this;
  c.variant = Variant::plain;
  c.gamma_ab.reset();
  c.gamma_12.reset();
  return c;
}

std::optional<double> ChannelConfig::link(Node x, Node y) const {
  if (x == y) return std::nullopt;
  NodeSet pair{x, y};
  if (pair == NodeSet{Node::A, Node::R1}) return gamma_a1;
  if (pair == NodeSet{Node::A, Node::R2}) return gamma_a2;
  if (pair == NodeSet{Node::B, Node::R1}) return gamma_b1;
  if (pair == NodeSet{Node::B, Node::R2}) return gamma_b2;
  if (pair == NodeSet{Node::A, Node::B}) return gamma_ab;
  return gamma_12;  // R1-R2
}

ChannelConfig make_plain(double a1, double a2, double b1, double b2) {
  ChannelConfig c;
  c.variant = Variant::plain;
  c.gamma_a1 = a1;
  c.gamma_a2 = a2;
  c.gamma_b1 = b1;
  c.gamma_b2 = b2;
  c.validate();
  return c;
}

ChannelConfig make_direct_link(double a1, double a2, double b1, double b2,
                               double ab) {
  ChannelConfig c = make_plain(a1, a2, b1, b2);
  c.variant = Variant::direct_link;
  c.gamma_ab = ab;
  c.validate();
  return c;
}

ChannelConfig make_interfering(double a1, double a2, double b1, double b2,
                               double r12) {
  ChannelConfig c = make_plain(a1, a2, b1, b2);
  c.variant = Variant::interfering_relays;
  c.gamma_12 = r12;
  c.validate();
  return c;
}

double capacity(double gamma) {
  if (!std::isfinite(gamma) || gamma < 0.0) {
    std::ostringstream os;
    os << "capacity: SNR must be finite and >= 0, got " << gamma;
    throw DomainError(os.str());
  }
  return std::log2(1.0 + gamma);
}

double snr_from_db(double value_db) {
  if (!std::isfinite(value_db))
    throw DomainError("snr_from_db: value must be finite");
  return std::pow(10.0, value_db / 10.0);
}

double snr_to_db(double gamma) {
  if (!std::isfinite(gamma) || gamma < 0.0)
    throw DomainError("snr_to_db: SNR must be finite and >= 0");
  return 10.0 * std::log10(gamma);
}

ChannelConfig channel_from_caption(std::string_view preset) {
  const Preset& p = find_preset(preset);
  const double a1 = snr_from_db(p.a1_db), a2 = snr_from_db(p.a2_db);
  const double b1 = snr_from_db(p.b1_db), b2 = snr_from_db(p.b2_db);
  switch (p.variant) {
    case Variant::plain: return make_plain(a1, a2, b1, b2);
    case Variant::direct_link:
      return make_direct_link(a1, a2, b1, b2, snr_from_db(p.extra_db));
    case Variant::interfering_relays:
      return make_interfering(a1, a2, b1, b2, snr_from_db(p.extra_db));
  }
  throw ValidationError("bad preset variant");
}

std::span<const std::string_view> preset_names() { return kPresetNames; }

std::string_view preset_description(std::string_view preset) {
  return find_preset(preset).description;
}

NodeSet HalfDuplexState::active_receivers(Variant v) const {
  // Link existence only depends on the variant, not on the SNR values.
  ChannelConfig topo;
  topo.variant = v;
  if (v == Variant::direct_link) topo.gamma_ab = 0.0;
  if (v == Variant::interfering_relays) topo.gamma_12 = 0.0;
  NodeSet out;
  for (Node r : kAllNodes) {
    if (transmitters.contains(r)) continue;
    for (Node t : kAllNodes)
      if (transmitters.contains(t) && topo.link(t, r)) out = out.with(r);
  }
  return out;
}

std::span<const HalfDuplexState, kNumStates> all_states() { return kStates; }

const HalfDuplexState& state(int id) {
  if (id < 1 || id > kNumStates)
    throw ValidationError("state id out of range: " + std::to_string(id));
  return kStates[static_cast<std::size_t>(id - 1)];
}

int mirror_state(int id) {
  state(id);
  if (id <= 4) return id + 4;
  if (id <= 8) return id - 4;
  return id;
}

}  // namespace diamond
