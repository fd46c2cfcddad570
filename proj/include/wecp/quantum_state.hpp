#pragma once

#include <compare>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wecp {

using Amplitude = std::complex<double>;

// Terms whose squared amplitude falls below this are dropped.
inline constexpr double kDefaultPruneEps = 1e-15;

// Largest squared norm accepted for a (sub-)normalized state.
inline constexpr double kNormSlack = 1e-9;

/// Name of a spatial optical mode, e.g. "a1" or "b3".
class ModeLabel {
 public:
  explicit ModeLabel(std::string name);

  const std::string& name() const noexcept { return name_; }

  /// Leading part of the name with any trailing decimal digits removed
  /// ("a12" -> "a"). Used as the stem for generated labels.
  std::string stem() const;

  friend auto operator<=>(const ModeLabel&, const ModeLabel&) = default;
  friend bool operator==(const ModeLabel&, const ModeLabel&) = default;

 private:
  std::string name_;
};

enum class Polarization { kNone, kH, kV };

std::string_view to_string(Polarization p);

/// Whether kets record only mode occupation or also a polarization per photon.
enum class Encoding { kModeOccupation, kPolarization };

std::string_view to_string(Encoding e);

struct Photon {
  ModeLabel mode;
  Polarization polarization = Polarization::kNone;

  friend auto operator<=>(const Photon&, const Photon&) = default;
  friend bool operator==(const Photon&, const Photon&) = default;
};

/// A photon-occupation pattern with at most one photon per mode. Photons are
/// kept sorted by mode so equal patterns compare equal regardless of the
/// order they were listed in.
class Ket {
 public:
  Ket() = default;
  explicit Ket(std::vector<Photon> photons);
  Ket(std::initializer_list<Photon> photons)
      : Ket(std::vector<Photon>(photons)) {}

  const std::vector<Photon>& photons() const noexcept { return photons_; }
  std::size_t photon_count() const noexcept { return photons_.size(); }

  std::optional<Polarization> at(const ModeLabel& mode) const;
  bool occupies(const ModeLabel& mode) const { return at(mode).has_value(); }

  /// Copy of this ket with the photon in `from` moved to `to`. Throws
  /// ModeCollision if `to` is already occupied.
  Ket moved(const ModeLabel& from, const ModeLabel& to) const;

  /// Encoding implied by the photons; an empty ket is mode-occupation.
  /// Throws WrongConvention if tagged and untagged photons are mixed.
  Encoding encoding() const;

  std::string to_string() const;

  friend auto operator<=>(const Ket&, const Ket&) = default;
  friend bool operator==(const Ket&, const Ket&) = default;

 private:
  std::vector<Photon> photons_;
};

using TermMap = std::map<Ket, Amplitude>;
using ModeSet = std::set<ModeLabel>;

/// Sparse pure state over labeled modes. The squared norm may be below one;
/// it is then the probability weight of the branch the state stands for.
/// A state keeps a registry of every mode it has been wired to, which is
/// used to reject detection on modes that never existed and to mint fresh
/// labels.
class PureState {
 public:
  /// Empty mode-occupation state (zero weight).
  PureState() = default;

  /// Builds a state from (ket, amplitude) pairs. Repeated kets are summed;
  /// negligible terms are pruned. `extra_modes` are registered even if no
  /// ket occupies them. An empty term list is allowed and represents a
  /// zero-weight branch; its encoding must then be given explicitly.
  PureState(const std::vector<std::pair<Ket, Amplitude>>& terms,
            ModeSet extra_modes = {},
            std::optional<Encoding> encoding = std::nullopt,
            double prune_eps = kDefaultPruneEps);

  const TermMap& terms() const noexcept { return terms_; }
  const ModeSet& modes() const noexcept { return modes_; }
  Encoding encoding() const noexcept { return encoding_; }
  double prune_eps() const noexcept { return prune_eps_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Photon count shared by all kets, or nullopt for the empty state.
  std::optional<std::size_t> photon_count() const;

  Amplitude amplitude(const Ket& ket) const;
  bool has_mode(const ModeLabel& mode) const { return modes_.contains(mode); }

  /// The first `count` labels "<stem><k>" (k = 1, 2, ...) not already
  /// registered in this state.
  std::vector<ModeLabel> fresh_labels(std::string_view stem,
                                      std::size_t count) const;

  std::vector<std::pair<Ket, Amplitude>> term_list() const;

  std::string to_string() const;

 private:
  TermMap terms_;
  ModeSet modes_;
  Encoding encoding_ = Encoding::kModeOccupation;
  double prune_eps_ = kDefaultPruneEps;
};

double norm_squared(const PureState& state);

/// Rescales to unit norm. Throws ZeroState if the squared norm does not
/// exceed the state's prune threshold.
PureState normalize(const PureState& state);

/// <a|b> without normalization.
Amplitude inner_product(const PureState& a, const PureState& b);

/// |<a|b>|^2 of the normalized states. Throws IncompatibleStates when the
/// encodings differ and ZeroState when either state has zero norm.
double fidelity(const PureState& a, const PureState& b);

}  // namespace wecp
