#pragma once

#include <auproof/error.hpp>

#include <optional>
#include <utility>

namespace auproof::testsupport {

// Runs fn and hands back the Error it throws, if any, so tests can assert
// on code and position, not just on "something threw".
template <typename Fn>
std::optional<Error> capture_error(Fn&& fn) {
    try {
        std::forward<Fn>(fn)();
    } catch (const Error& e) {
        return e;
    }
    return std::nullopt;
}

} // namespace auproof::testsupport
