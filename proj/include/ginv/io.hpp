#pragma once

// Wire format for algebra elements:
//   {"shape":[n1,...], "blocks":[B1,...]}
// where Bi is an ni x ni array of rows of [re, im] pairs.

#include <string>
#include <string_view>

#include "ginv/algebra.hpp"

namespace ginv {

// parse_error on malformed JSON or fields (with line/field context),
// validation_error when blocks do not match the shape.
AlgebraElement parse_element(std::string_view text);
std::string serialize_element(const AlgebraElement& a);

}  // namespace ginv
