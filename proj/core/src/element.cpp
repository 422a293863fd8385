#include "bergman/element.hpp"

#include <algorithm>
#include <cctype>

namespace bergman {

namespace {

// Characters with grammar meaning somewhere (file formats, move scripts,
// LPA expressions); names must avoid all of them.
constexpr const char* kReserved = "+=:#[]*^,|;()<>{}/\\-";

}  // namespace

bool Name::valid(const std::string& text) {
  if (text.empty()) return false;
  bool all_digits = true;
  for (unsigned char c : text) {
    if (std::isspace(c) || !std::isprint(c)) return false;
    if (std::string(kReserved).find(static_cast<char>(c)) !=
        std::string::npos) {
      return false;
    }
    if (!std::isdigit(c)) all_digits = false;
  }
  return !all_digits;
}

Name::Name(std::string text) : text_(std::move(text)) {
  if (!valid(text_)) {
    throw ValidationError("invalid name token '" + text_ +
                          "' (names are non-empty, printable, avoid "
                          "whitespace and the reserved characters "
                          "+=:#[]*^,|;()<>{}/\\- and are not all digits)");
  }
}

FreeAbelianElement FreeAbelianElement::generator(const GeneratorId& g,
                                                 long long mult) {
  FreeAbelianElement e;
  e.add(g, mult);
  return e;
}

long long FreeAbelianElement::multiplicity(const GeneratorId& g) const {
  auto it = mult_.find(g);
  return it == mult_.end() ? 0 : it->second;
}

long long FreeAbelianElement::degree() const {
  long long d = 0;
  for (const auto& [g, m] : mult_) d += m;
  return d;
}

bool FreeAbelianElement::is_single_generator() const {
  return mult_.size() == 1 && mult_.begin()->second == 1;
}

void FreeAbelianElement::add(const GeneratorId& g, long long mult) {
  if (mult == 0) return;
  if (mult < 0) throw InternalError("negative multiplicity for " + g.str());
  mult_[g] += mult;
}

FreeAbelianElement FreeAbelianElement::operator+(
    const FreeAbelianElement& o) const {
  FreeAbelianElement r = *this;
  r += o;
  return r;
}

FreeAbelianElement& FreeAbelianElement::operator+=(
    const FreeAbelianElement& o) {
  for (const auto& [g, m] : o.mult_) mult_[g] += m;
  return *this;
}

FreeAbelianElement FreeAbelianElement::scaled(long long k) const {
  if (k < 0) throw InternalError("negative scalar");
  FreeAbelianElement r;
  if (k == 0) return r;
  for (const auto& [g, m] : mult_) r.mult_[g] = m * k;
  return r;
}

bool FreeAbelianElement::leq(const FreeAbelianElement& bigger) const {
  for (const auto& [g, m] : mult_) {
    if (bigger.multiplicity(g) < m) return false;
  }
  return true;
}

FreeAbelianElement FreeAbelianElement::minus(
    const FreeAbelianElement& o) const {
  FreeAbelianElement r = *this;
  for (const auto& [g, m] : o.mult_) {
    auto it = r.mult_.find(g);
    if (it == r.mult_.end() || it->second < m) {
      throw InternalError("multiset subtraction would go negative at " +
                          g.str());
    }
    it->second -= m;
    if (it->second == 0) r.mult_.erase(it);
  }
  return r;
}

FreeAbelianElement FreeAbelianElement::substitute(
    const GeneratorId& g, const FreeAbelianElement& replacement) const {
  long long m = multiplicity(g);
  if (m == 0) return *this;
  FreeAbelianElement r = *this;
  r.mult_.erase(g);
  r += replacement.scaled(m);
  return r;
}

std::string FreeAbelianElement::canonical_string() const {
  if (mult_.empty()) return "0";
  std::string s;
  for (const auto& [g, m] : mult_) {
    if (!s.empty()) s += " + ";
    if (m != 1) s += std::to_string(m) + " ";
    s += g.str();
  }
  return s;
}

}  // namespace bergman
