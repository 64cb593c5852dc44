//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_APP_LIGASE_FILE_H_
#define LCJT_APP_LIGASE_FILE_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lcjt/model/sequence.h"

namespace lcjt {

// FASTA-like: ">ID [description]" then sequence lines (whitespace ignored,
// letters upper-cased). '#' lines are comments. Throws ParseError with the
// line number on residues outside the 20-letter alphabet, a sequence line
// before the first header, an empty record or a duplicate id.
std::vector<LigaseContext> parse_ligase_fasta(std::string_view text);

// "ID: v1, v2, ..." per line; '#' comments and blank lines skipped.
std::map<std::string, std::vector<double>> parse_embedding_sidecar(std::string_view text);

// Attaches sidecar vectors; throws Error for a sidecar id with no sequence.
void attach_embeddings(std::vector<LigaseContext> &ligases,
                       const std::map<std::string, std::vector<double>> &vectors);

}  // namespace lcjt

#endif  // LCJT_APP_LIGASE_FILE_H_
