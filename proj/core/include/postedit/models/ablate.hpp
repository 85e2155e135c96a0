#pragma once

#include <set>
#include <vector>

#include "postedit/symbolizer.hpp"

namespace postedit::models {

// Action-category ablations over symbolized sequences. `editing` covers
// R/I/D/BI/BD, `mouse` MC/MS, `wait` every W, and `first_wait` only the W
// symbols before the first edit group (the leading run of W/MC/MS
// symbols). Jumps are never ablated on their own; keep-mode always
// retains the stop symbol.
enum class AblationCategory { editing, mouse, wait, first_wait };

AblationCategory ablation_category_from_name(const std::string& name);
const char* ablation_category_name(AblationCategory c);

// mode: drop the categories, or keep only them (plus S).
// Throws Error(empty_after_ablation) when nothing but S would remain.
std::vector<SymbolId> ablate_sequence(const std::vector<SymbolId>& ids,
                                      const Vocabulary& vocab,
                                      const std::set<AblationCategory>& categories,
                                      bool keep_only);

}  // namespace postedit::models
