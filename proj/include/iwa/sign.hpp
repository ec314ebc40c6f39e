#pragma once

namespace iwa {

enum class Sign { Plus, Minus };

inline const char* to_string(Sign sign) { return sign == Sign::Plus ? "+" : "-"; }

}  // namespace iwa
