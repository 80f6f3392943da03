#pragma once

#include <functional>
#include <string_view>

namespace lep {

/// Receives non-fatal numerical warnings. The default sink writes to stderr.
using WarningSink = std::function<void(std::string_view)>;

/// Installs `sink` and returns the previous one. An empty sink discards.
WarningSink set_warning_sink(WarningSink sink);

void warn(std::string_view message);

}  // namespace lep
