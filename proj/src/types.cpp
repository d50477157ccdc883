#include "diploid/types.hpp"

#include <cctype>
#include <cmath>

#include "diploid/errors.hpp"

namespace diploid {

std::string_view to_string(Genotype g) noexcept {
  switch (g) {
    case Genotype::AA:
      return "AA";
    case Genotype::AB:
      return "AB";
    case Genotype::BB:
      return "BB";
  }
  return "??";
}

std::string_view to_string(Allele a) noexcept { return a == Allele::A ? "A" : "B"; }

Genotype parse_genotype(std::string_view text) {
  std::string upper;
  for (char c : text) upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (upper == "AA") return Genotype::AA;
  if (upper == "AB" || upper == "BA") return Genotype::AB;
  if (upper == "BB") return Genotype::BB;
  throw UsageError("unknown genotype '" + std::string(text) + "' (expected AA, AB or BB)");
}

void RateSet::validate() const {
  const double all[] = {phi_aa, phi_ab, phi_ba, phi_bb};
  const char* names[] = {"phi_aa", "phi_ab", "phi_ba", "phi_bb"};
  bool any_positive = false;
  for (int i = 0; i < 4; ++i) {
    if (!std::isfinite(all[i]) || all[i] < 0.0) {
      throw UsageError(std::string(names[i]) + " must be a finite non-negative rate");
    }
    any_positive = any_positive || all[i] > 0.0;
  }
  if (!any_positive) throw UsageError("at least one birth rate must be positive");
}

RateSet make_rates(double phi_aa, double phi_ab, double phi_ba, double phi_bb) {
  RateSet r{phi_aa, phi_ab, phi_ba, phi_bb};
  r.validate();
  return r;
}

}  // namespace diploid
