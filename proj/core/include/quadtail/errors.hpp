#pragma once

#include <stdexcept>
#include <string>

namespace quadtail {

// Base class for everything this library throws on purpose.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad inputs: wrong dimensions, parameters outside their stated domain,
// bounds requested for matrices they do not apply to.
struct domain_error : error {
    explicit domain_error(const std::string& msg) : error(msg) {}
};

// The algorithm itself gave up: iteration caps hit, brackets without a
// sign change that theory says must exist, and similar.
struct numerical_error : error {
    explicit numerical_error(const std::string& msg) : error(msg) {}
};

} // namespace quadtail
