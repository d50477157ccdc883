#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace diploid {

/// Genotype of one diploid individual. The numeric value is the number of
/// b alleles, so pairing two alleles is a sum.
enum class Genotype : std::uint8_t { AA = 0, AB = 1, BB = 2 };

enum class Allele : std::uint8_t { A = 0, B = 1 };

inline constexpr std::array<Genotype, 3> kGenotypes{Genotype::AA, Genotype::AB, Genotype::BB};

constexpr int index_of(Genotype g) noexcept { return static_cast<int>(g); }

/// Unordered pairing of the two alleles at a site.
constexpr Genotype pair_alleles(Allele first, Allele second) noexcept {
  return static_cast<Genotype>(static_cast<int>(first) + static_cast<int>(second));
}

/// Allele held in `slot` under the canonical orientation (an AB site keeps A in slot 0).
constexpr Allele canonical_allele(Genotype g, int slot) noexcept {
  switch (g) {
    case Genotype::AA:
      return Allele::A;
    case Genotype::BB:
      return Allele::B;
    case Genotype::AB:
      break;
  }
  return slot == 0 ? Allele::A : Allele::B;
}

constexpr Genotype swap_alleles(Genotype g) noexcept {
  return static_cast<Genotype>(2 - static_cast<int>(g));
}

constexpr Allele other(Allele a) noexcept {
  return a == Allele::A ? Allele::B : Allele::A;
}

std::string_view to_string(Genotype g) noexcept;
std::string_view to_string(Allele a) noexcept;
/// Accepts AA/AB/BA/BB in either case; throws UsageError otherwise.
Genotype parse_genotype(std::string_view text);

/// The four birth rates of one model instance. phi_ij is the birth rate of an
/// allele of type i carried by an individual whose other allele is j.
struct RateSet {
  double phi_aa = 0.0;
  double phi_ab = 0.0;
  double phi_ba = 0.0;
  double phi_bb = 0.0;

  /// Throws UsageError unless all rates are finite, non-negative and at least one is positive.
  void validate() const;

  /// phi_ij for source allele i with partner allele j.
  double birth_rate(Allele source, Allele partner) const noexcept {
    if (source == Allele::A) return partner == Allele::A ? phi_aa : phi_ab;
    return partner == Allele::A ? phi_ba : phi_bb;
  }

  /// Exchange the roles of a and b: (aa, ab, ba, bb) -> (bb, ba, ab, aa).
  RateSet swapped() const noexcept { return {phi_bb, phi_ba, phi_ab, phi_aa}; }

  RateSet scaled(double lambda) const noexcept {
    return {phi_aa * lambda, phi_ab * lambda, phi_ba * lambda, phi_bb * lambda};
  }

  friend bool operator==(const RateSet&, const RateSet&) = default;
};

/// Validated construction: (phi_aa, phi_ab, phi_ba, phi_bb).
RateSet make_rates(double phi_aa, double phi_ab, double phi_ba, double phi_bb);

}  // namespace diploid
