#pragma once

// Network variants, SNR bookkeeping, and the half-duplex state table of the
// two-way diamond relay network: terminals A and B, relays R1 and R2.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace diamond {

enum class Variant { plain, direct_link, interfering_relays };

// Scaling of the compute-and-forward lattice rates. as_printed keeps the 1/2
// factor of the real-signal lattice formula; complex drops it so every rate
// is in the log2(1 + snr) convention used elsewhere.
enum class Convention { as_printed, complex };

std::string_view to_string(Variant v);
std::string_view to_string(Convention c);
Variant parse_variant(std::string_view s);
Convention parse_convention(std::string_view s);

enum class Node : std::uint8_t { A = 0, B = 1, R1 = 2, R2 = 3 };

std::string_view to_string(Node n);

// Set of nodes as a 4-bit mask, indexed by Node.
class NodeSet {
 public:
  constexpr NodeSet() = default;
  constexpr NodeSet(std::initializer_list<Node> nodes) {
    for (Node n : nodes) bits_ |= bit(n);
  }

  constexpr bool contains(Node n) const { return (bits_ & bit(n)) != 0; }
  constexpr NodeSet complement() const { return from_bits(~bits_ & 0xF); }
  constexpr NodeSet with(Node n) const { return from_bits(bits_ | bit(n)); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint8_t bits() const { return bits_; }
  constexpr int size() const {
    return ((bits_ >> 0) & 1) + ((bits_ >> 1) & 1) + ((bits_ >> 2) & 1) +
           ((bits_ >> 3) & 1);
  }

  static constexpr NodeSet from_bits(unsigned b) {
    NodeSet s;
    s.bits_ = static_cast<std::uint8_t>(b & 0xF);
    return s;
  }

  friend constexpr bool operator==(NodeSet, NodeSet) = default;

 private:
  static constexpr std::uint8_t bit(Node n) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(n));
  }
  std::uint8_t bits_ = 0;
};

inline constexpr std::array<Node, 4> kAllNodes = {Node::A, Node::B, Node::R1,
                                                  Node::R2};

// Link SNRs are linear (dimensionless), never dB.
struct ChannelConfig {
  Variant variant = Variant::plain;
  double gamma_a1 = 0.0;
  double gamma_a2 = 0.0;
  double gamma_b1 = 0.0;
  double gamma_b2 = 0.0;
  std::optional<double> gamma_ab;  // set iff variant == direct_link
  std::optional<double> gamma_12;  // set iff variant == interfering_relays
  Convention convention = Convention::complex;

  // Throws DomainError / ValidationError when an invariant is broken.
  void validate() const;

  // The same network with the terminal labels A and B exchanged.
  ChannelConfig swapped() const;

  // Same four relay links, no extra link.
  ChannelConfig as_plain() const;

  // SNR of the (reciprocal) link between two nodes, or nullopt when the
  // variant has no such link.
  std::optional<double> link(Node x, Node y) const;

  friend bool operator==(const ChannelConfig&, const ChannelConfig&) = default;
};

ChannelConfig make_plain(double a1, double a2, double b1, double b2);
ChannelConfig make_direct_link(double a1, double a2, double b1, double b2,
                               double ab);
ChannelConfig make_interfering(double a1, double a2, double b1, double b2,
                               double r12);

// log2(1 + gamma). Throws DomainError for negative or non-finite input.
double capacity(double gamma);

// 10^(value_db / 10). Throws DomainError for non-finite input.
double snr_from_db(double value_db);
double snr_to_db(double gamma);

// Preset channels: "I", "II", "III",
// "direct_fig6", "interfering_fig7". Throws ValidationError otherwise.
ChannelConfig channel_from_caption(std::string_view preset);
std::span<const std::string_view> preset_names();
std::string_view preset_description(std::string_view preset);

// One of the 14 useful half-duplex states. Every node either transmits or
// receives; the state is identified by its transmitter set.
struct HalfDuplexState {
  int id = 0;
  NodeSet transmitters;

  NodeSet receivers() const { return transmitters.complement(); }

  // Receivers with at least one link from a transmitter in this variant.
  NodeSet active_receivers(Variant v) const;
};

inline constexpr int kNumStates = 14;

std::span<const HalfDuplexState, kNumStates> all_states();
const HalfDuplexState& state(int id);  // 1..14, throws ValidationError

// State id after exchanging the labels A and B (1<->5, 2<->6, 3<->7, 4<->8).
int mirror_state(int id);

}  // namespace diamond
