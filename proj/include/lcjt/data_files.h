//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_DATA_FILES_H_
#define LCJT_DATA_FILES_H_

#include <string_view>

namespace lcjt {

// Contents of data/crippen_v1.tsv and data/qed_lite_v1.tsv, compiled in.
std::string_view embedded_crippen_table();
std::string_view embedded_qed_lite_table();

}  // namespace lcjt

#endif  // LCJT_DATA_FILES_H_
