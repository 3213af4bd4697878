#pragma once

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace lieid {

/// Raised when an operation would enumerate words beyond the configured
/// total-degree cap. Never silently truncated.
class DegreeCapExceeded : public std::runtime_error {
public:
    DegreeCapExceeded(unsigned degree, unsigned cap, const std::string& what)
        : std::runtime_error(what + ": total degree " + std::to_string(degree) +
                             " exceeds cap " + std::to_string(cap)),
          degree_(degree), cap_(cap) {}

    unsigned degree() const noexcept { return degree_; }
    unsigned cap() const noexcept { return cap_; }

private:
    unsigned degree_;
    unsigned cap_;
};

namespace detail {

inline constexpr unsigned kDefaultDegreeCap = 8;
// Packed words hold 16 letters and packed evaluation keys hold 15 letters.
inline constexpr unsigned kHardDegreeLimit = 12;

inline unsigned initial_degree_cap() {
    if (const char* env = std::getenv("LIEID_MAX_DEGREE")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= static_cast<long>(kHardDegreeLimit))
            return static_cast<unsigned>(v);
    }
    return kDefaultDegreeCap;
}

inline std::atomic<unsigned>& degree_cap_storage() {
    static std::atomic<unsigned> cap{initial_degree_cap()};
    return cap;
}

} // namespace detail

/// Global total-degree cap (default 8, LIEID_MAX_DEGREE overrides at startup).
inline unsigned degree_cap() { return detail::degree_cap_storage().load(std::memory_order_relaxed); }

inline void set_degree_cap(unsigned cap) {
    if (cap < 1 || cap > detail::kHardDegreeLimit)
        throw std::invalid_argument("degree cap must lie in [1, " +
                                    std::to_string(detail::kHardDegreeLimit) + "]");
    detail::degree_cap_storage().store(cap, std::memory_order_relaxed);
}

inline void check_degree(unsigned degree, const std::string& what) {
    const unsigned cap = degree_cap();
    if (degree > cap) throw DegreeCapExceeded(degree, cap, what);
}

/// Restores the previous cap on scope exit.
class ScopedDegreeCap {
public:
    explicit ScopedDegreeCap(unsigned cap) : saved_(degree_cap()) { set_degree_cap(cap); }
    ~ScopedDegreeCap() { detail::degree_cap_storage().store(saved_); }
    ScopedDegreeCap(const ScopedDegreeCap&) = delete;
    ScopedDegreeCap& operator=(const ScopedDegreeCap&) = delete;

private:
    unsigned saved_;
};

} // namespace lieid
