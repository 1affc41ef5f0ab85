#ifndef GCUT_INSTANCE_H_
#define GCUT_INSTANCE_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcut {

struct PieceType {
  int id = 0;
  int64_t length = 0;
  int64_t width = 0;
  int64_t profit = 0;
  int64_t demand = 0;
  // Rotation partner; both sides of a pair point at each other.
  std::optional<int> twin_of;

  bool operator==(const PieceType&) const = default;
};

struct Instance {
  int64_t plate_length = 0;
  int64_t plate_width = 0;
  std::vector<PieceType> pieces;
  bool rotation_allowed = false;
  // Set when u_i < floor(L/l_i) * floor(W/w_i) for some piece.
  bool constrained = false;

  bool operator==(const Instance&) const = default;

  // Index of the demand row shared by a piece and its twin (the smaller id).
  int demand_group(int piece) const;
};

enum class InstanceFormat { kClassic, kExtended };

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class DimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool fits(int64_t piece_length, int64_t piece_width,
                 int64_t plate_length, int64_t plate_width) {
  return piece_length <= plate_length && piece_width <= plate_width;
}

// Classic layout: "L W", "m", then m lines "l w p u". The extended layout
// adds an optional header line "rotation 0|1" before "L W" and accepts an
// optional fifth integer per piece line ("l w p u r") marking pieces that
// are the rotated twin of piece r. '#' starts a comment in both.
// `rotation` turns rotation on for layouts that cannot express it.
Instance parse_instance_text(const std::string& text, InstanceFormat format,
                             bool rotation = false);
Instance parse_instance(const std::string& path, InstanceFormat format,
                        bool rotation = false);

// Serializes back to the classic layout (extended when rotation is set).
std::string to_text(const Instance& inst);

// Validates dimensions, fills ids and the constrained flag. Throws
// DimensionError naming the first offending piece.
Instance validate(Instance inst);

// Duplicates every non-square piece that fits both ways into a rotated twin
// appended at the end; pieces fitting only rotated are turned in place.
// No-op when rotation_allowed is false. Idempotent.
Instance expand_rotation(const Instance& inst);

// Overwrites profits with l_i * w_i.
Instance make_unweighted(Instance inst);

}  // namespace gcut

#endif  // GCUT_INSTANCE_H_
