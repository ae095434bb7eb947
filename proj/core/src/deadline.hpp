#ifndef FIMEQ_SRC_DEADLINE_HPP
#define FIMEQ_SRC_DEADLINE_HPP

#include <chrono>

namespace fimeq::detail {

  class Deadline {
   public:
    using clock = std::chrono::steady_clock;

    explicit Deadline(std::chrono::milliseconds limit)
        : _active(limit.count() > 0), _end(clock::now() + limit) {}

    bool expired() const {
      return _active && clock::now() >= _end;
    }

   private:
    bool              _active;
    clock::time_point _end;
  };

}  // namespace fimeq::detail

#endif  // FIMEQ_SRC_DEADLINE_HPP
