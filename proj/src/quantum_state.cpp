#include "wecp/quantum_state.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "wecp/error.hpp"

namespace wecp {

ModeLabel::ModeLabel(std::string name) : name_(std::move(name)) {
  if (name_.empty()) {
    throw Error(ErrorKind::kBadWiring, "mode label must not be empty");
  }
}

std::string ModeLabel::stem() const {
  auto end = name_.size();
  while (end > 0 && std::isdigit(static_cast<unsigned char>(name_[end - 1]))) {
    --end;
  }
  return name_.substr(0, end);
}

std::string_view to_string(Polarization p) {
  switch (p) {
    case Polarization::kNone: return "-";
    case Polarization::kH: return "H";
    case Polarization::kV: return "V";
  }
  return "?";
}

std::string_view to_string(Encoding e) {
  return e == Encoding::kPolarization ? "polarization" : "mode-occupation";
}

Ket::Ket(std::vector<Photon> photons) : photons_(std::move(photons)) {
  std::sort(photons_.begin(), photons_.end());
  auto dup = std::adjacent_find(
      photons_.begin(), photons_.end(),
      [](const Photon& x, const Photon& y) { return x.mode == y.mode; });
  if (dup != photons_.end()) {
    throw Error(ErrorKind::kModeCollision,
                "two photons in mode " + dup->mode.name());
  }
  (void)encoding();
}

std::optional<Polarization> Ket::at(const ModeLabel& mode) const {
  auto it = std::lower_bound(
      photons_.begin(), photons_.end(), mode,
      [](const Photon& p, const ModeLabel& m) { return p.mode < m; });
  if (it == photons_.end() || it->mode != mode) return std::nullopt;
  return it->polarization;
}

Ket Ket::moved(const ModeLabel& from, const ModeLabel& to) const {
  if (from == to) return *this;
  std::vector<Photon> out;
  out.reserve(photons_.size());
  for (const auto& p : photons_) {
    if (p.mode == to) {
      throw Error(ErrorKind::kModeCollision,
                  "mode " + to.name() + " is already occupied");
    }
    out.push_back(p.mode == from ? Photon{to, p.polarization} : p);
  }
  return Ket(std::move(out));
}

Encoding Ket::encoding() const {
  if (photons_.empty()) return Encoding::kModeOccupation;
  const bool tagged = photons_.front().polarization != Polarization::kNone;
  for (const auto& p : photons_) {
    if ((p.polarization != Polarization::kNone) != tagged) {
      throw Error(ErrorKind::kWrongConvention,
                  "ket mixes polarized and unpolarized photons");
    }
  }
  return tagged ? Encoding::kPolarization : Encoding::kModeOccupation;
}

std::string Ket::to_string() const {
  std::string s = "|";
  for (std::size_t i = 0; i < photons_.size(); ++i) {
    if (i) s += ',';
    s += photons_[i].mode.name();
    if (photons_[i].polarization != Polarization::kNone) {
      s += ':';
      s += wecp::to_string(photons_[i].polarization);
    }
  }
  return s + ">";
}

PureState::PureState(const std::vector<std::pair<Ket, Amplitude>>& terms,
                     ModeSet extra_modes, std::optional<Encoding> encoding,
                     double prune_eps)
    : modes_(std::move(extra_modes)), prune_eps_(prune_eps) {
  if (!(prune_eps >= 0.0)) {
    throw Error(ErrorKind::kInvalidState, "prune threshold must be >= 0");
  }
  if (terms.empty() && !encoding) {
    throw Error(ErrorKind::kInvalidState,
                "an empty state needs an explicit encoding");
  }
  encoding_ = encoding ? *encoding : terms.front().first.encoding();

  std::optional<std::size_t> count;
  for (const auto& [ket, amp] : terms) {
    if (ket.encoding() != encoding_ && ket.photon_count() > 0) {
      throw Error(ErrorKind::kWrongConvention,
                  "ket " + ket.to_string() + " does not use the " +
                      std::string(wecp::to_string(encoding_)) + " encoding");
    }
    if (count && *count != ket.photon_count()) {
      throw Error(ErrorKind::kInvalidState,
                  "kets carry different photon numbers");
    }
    count = ket.photon_count();
    if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
      throw Error(ErrorKind::kInvalidState, "non-finite amplitude");
    }
    for (const auto& p : ket.photons()) modes_.insert(p.mode);
    terms_[ket] += amp;
  }
  std::erase_if(terms_, [&](const auto& kv) {
    return std::norm(kv.second) < prune_eps_;
  });
  if (norm_squared(*this) > 1.0 + kNormSlack) {
    throw Error(ErrorKind::kInvalidState, "squared norm exceeds one");
  }
}

std::optional<std::size_t> PureState::photon_count() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first.photon_count();
}

Amplitude PureState::amplitude(const Ket& ket) const {
  auto it = terms_.find(ket);
  return it == terms_.end() ? Amplitude{} : it->second;
}

std::vector<ModeLabel> PureState::fresh_labels(std::string_view stem,
                                               std::size_t count) const {
  std::vector<ModeLabel> out;
  for (std::size_t k = 1; out.size() < count; ++k) {
    ModeLabel candidate(std::string(stem) + std::to_string(k));
    if (!modes_.contains(candidate)) out.push_back(std::move(candidate));
  }
  return out;
}

std::vector<std::pair<Ket, Amplitude>> PureState::term_list() const {
  return {terms_.begin(), terms_.end()};
}

std::string PureState::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(10);
  bool first = true;
  for (const auto& [ket, amp] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << '(' << amp.real();
    if (amp.imag() != 0.0) os << (amp.imag() < 0 ? "-" : "+") << std::abs(amp.imag()) << 'i';
    os << ')' << ket.to_string();
  }
  return os.str();
}

double norm_squared(const PureState& state) {
  double sum = 0.0;
  for (const auto& [ket, amp] : state.terms()) sum += std::norm(amp);
  return sum;
}

PureState normalize(const PureState& state) {
  const double n2 = norm_squared(state);
  if (!(n2 > state.prune_eps())) {
    throw Error(ErrorKind::kZeroState, "cannot normalize a zero state");
  }
  const double scale = 1.0 / std::sqrt(n2);
  std::vector<std::pair<Ket, Amplitude>> terms;
  terms.reserve(state.size());
  for (const auto& [ket, amp] : state.terms()) {
    terms.emplace_back(ket, amp * scale);
  }
  return PureState(terms, state.modes(), state.encoding(), state.prune_eps());
}

Amplitude inner_product(const PureState& a, const PureState& b) {
  // Walk both sorted maps together so the summation order is the same for
  // <a|b> and <b|a>.
  Amplitude sum{};
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  while (ia != a.terms().end() && ib != b.terms().end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      sum += std::conj(ia->second) * ib->second;
      ++ia;
      ++ib;
    }
  }
  return sum;
}

double fidelity(const PureState& a, const PureState& b) {
  if (a.encoding() != b.encoding()) {
    throw Error(ErrorKind::kIncompatibleStates,
                "fidelity between states with different encodings");
  }
  const double na = norm_squared(a);
  const double nb = norm_squared(b);
  if (na == 0.0 || nb == 0.0) {
    throw Error(ErrorKind::kZeroState, "fidelity with a zero state");
  }
  const double f = std::norm(inner_product(a, b)) / (na * nb);
  return std::clamp(f, 0.0, 1.0);
}

}  // namespace wecp
