#pragma once

namespace kifsim::kif {

// Position of a token or term in the source text. Lines and columns are
// 1-based; length counts bytes.
struct SourceSpan {
    int line = 1;
    int column = 1;
    int length = 1;
};

}  // namespace kifsim::kif
