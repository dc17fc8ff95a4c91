#pragma once

#include <string>
#include <string_view>

#include "defectont/linker.hpp"
#include "defectont/parser.hpp"

namespace defectont::testing {

inline KnowledgeBase kb_from_text(std::string_view text) {
    return link_single_module(parse_module(text, "<test>"));
}

inline std::string asset_dir() { return DEFECTONT_ASSET_DIR; }

inline std::string asset_path(const std::string& file) {
    return std::string(DEFECTONT_ASSET_DIR) + "/" + file;
}

inline KnowledgeBase load_assets() {
    return load_knowledge_base(asset_path("defectont.dlo"));
}

}  // namespace defectont::testing
