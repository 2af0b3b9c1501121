#pragma once

#include <string>

#include "signet/io.hpp"

namespace testing_support {

inline std::string fixture_path(const std::string& name) { return std::string(SIGNET_FIXTURE_DIR) + "/" + name; }

template <class Net>
Net fixture(const std::string& name) {
  return signet::load_net_as<Net>(fixture_path(name));
}

}  // namespace testing_support
