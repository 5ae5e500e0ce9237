#include "kmvol/closed_form.hpp"

namespace kmvol {

std::string to_string(ClosedFormTag tag) {
  switch (tag) {
    case ClosedFormTag::pi_over_6: return "pi_over_6";
    case ClosedFormTag::quarter_lob_pi3: return "quarter_lob_pi3";
    case ClosedFormTag::eighth_lob_pi3: return "eighth_lob_pi3";
    case ClosedFormTag::sixth_lob_pi4: return "sixth_lob_pi4";
  }
  return "unknown";
}

std::optional<ClosedForm> closed_form_volume(const AlgebraId& id) {
  auto tag = [&]() -> std::optional<ClosedFormTag> {
    if (id.family == Family::A && id.rank == 1) return ClosedFormTag::pi_over_6;
    if (id.family == Family::A && id.rank == 2) return ClosedFormTag::quarter_lob_pi3;
    if (id.family == Family::G && id.rank == 2) return ClosedFormTag::eighth_lob_pi3;
    if (id.family == Family::C && id.rank == 2) return ClosedFormTag::sixth_lob_pi4;
    return std::nullopt;
  }();
  if (!tag) return std::nullopt;
  return ClosedForm{*tag, id};
}

}  // namespace kmvol
