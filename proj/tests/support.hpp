#pragma once

#include <string>

#include "koszulkit/io.hpp"
#include "koszulkit/koszulkit.hpp"

namespace support {

inline koszulkit::Presentation fixture(const std::string& name) {
  return koszulkit::load_presentation(std::string(KOSZULKIT_FIXTURES) + "/" + name + ".json");
}

inline koszulkit::HomogPoly poly(const std::string& expr, const koszulkit::Alphabet& a) {
  return koszulkit::parse_expression(expr, a);
}

inline koszulkit::Word word(const std::string& expr, const koszulkit::Alphabet& a) {
  return koszulkit::parse_expression(expr, a).leading_term().word;
}

}  // namespace support
