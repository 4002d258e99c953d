#pragma once

#include <string>

#include "httplib.h"

namespace cforge::service {

/// Installs CORS headers, the /api routes and the optional static mount.
/// Returns false when static_dir is set but missing.
bool configure(httplib::Server& server, const std::string& static_dir = {});

}  // namespace cforge::service
