//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_DATA_CSV_H_
#define LCJT_DATA_CSV_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lcjt {

// One physical line of comma-separated text. Fields may be wrapped in double
// quotes, with "" standing for a literal quote. Throws ParseError on an
// unterminated quote.
std::vector<std::string> split_csv_line(std::string_view line);

// Quotes a field only when it holds a comma, quote or newline.
std::string csv_field(std::string_view s);
std::string csv_row(const std::vector<std::string> &fields);

// Lines of `text` with the trailing CR of CRLF endings removed.
std::vector<std::string_view> split_lines(std::string_view text);

// Strict decimal parse of the whole (space-trimmed) field; nullopt for a
// blank field. Throws ParseError for anything else that is not a finite
// number.
std::optional<double> parse_optional_number(std::string_view s);

// Shortest text that reads back to the same double; "" for NaN.
std::string format_number(double v);
// Fixed notation with `digits` decimals, "-0.00" normalized to "0.00".
std::string format_fixed(double v, int digits);

}  // namespace lcjt

#endif  // LCJT_DATA_CSV_H_
