#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tmspace/diagram.hpp"
#include "tmspace/explorer.hpp"
#include "tmspace/machine.hpp"

namespace tmspace {

struct BoxCount {
  std::uint64_t side = 1;  // box side in cells
  std::uint64_t boxes = 0;  // boxes holding at least one occupied cell

  friend bool operator==(const BoxCount&, const BoxCount&) = default;
};

// Dyadic sides 1, 2, 4, ... up to the largest power of two <= extent.
std::vector<std::uint64_t> dyadic_sides(std::uint64_t extent);

// Counts occupied boxes row by row. A cell is occupied when it is non-white
// or under the head. Boxes are aligned to the top row and to the tape's
// right edge; the grid is the square the diagram sits in, of side
// max(height, width). Only a run shorter than its input is wider than tall.
class BoxCounter {
 public:
  explicit BoxCounter(std::vector<std::uint64_t> sides);

  void add_row(std::span<const Color> tape, std::int64_t head);
  // Flushes partially filled box rows. Call once after the last row.
  std::vector<BoxCount> finish();

 private:
  struct Scale {
    std::uint64_t side;
    std::uint64_t boxes = 0;
    std::vector<std::uint64_t> pending;  // OR of the rows in the current box row
    bool dirty = false;
  };
  void flush(Scale& scale);

  std::vector<Scale> scales_;
  std::vector<std::uint64_t> row_;
  std::uint64_t rows_ = 0;
};

std::vector<BoxCount> box_count(const SpaceTimeDiagram& diagram, std::span<const std::uint64_t> sides);
std::vector<BoxCount> box_count(const SpaceTimeDiagram& diagram);

// Least-squares slope of log(boxes) against log(1/side). Needs >= 2 counts.
double box_dimension(std::span<const BoxCount> counts);

enum class Trend : std::uint8_t { kIncreasing, kDecreasing, kStable };
std::string to_string(Trend trend);

struct DimensionPoint {
  std::uint32_t input = 0;
  std::uint64_t height = 0;
  double slope = 0;
};

struct DimensionEstimate {
  std::vector<DimensionPoint> per_input;  // inputs whose height spans >= 3 dyadic scales
  double extrapolated = 0;
  Trend trend = Trend::kStable;
  bool degenerate = false;  // fewer than three usable inputs
};

class NonHaltingProbeError : public std::runtime_error {
 public:
  NonHaltingProbeError(std::uint32_t input, RunStatus status);
  std::uint32_t input() const { return input_; }

 private:
  std::uint32_t input_;
};

// Box-count dimension per probe input, then a linear extrapolation of the
// three largest inputs' slopes against 1/(n+1) to 1/(n+1) -> 0.
DimensionEstimate fractal_dimension(const MachineRule& rule, const ProbeSet& probe);

struct RunBoxCount {
  std::uint64_t height = 0;  // diagram rows
  std::vector<BoxCount> counts;
};

// Streams a single run through a BoxCounter without storing the diagram.
RunBoxCount box_count_run(const MachineRule& rule, std::uint32_t input, std::uint64_t budget);

}  // namespace tmspace
