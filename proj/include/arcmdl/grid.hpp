#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace arcmdl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ARC colors, coded 0..9. The names are only used for display.
enum class Color : std::uint8_t {
  Black = 0,
  Blue,
  Red,
  Green,
  Yellow,
  Grey,
  Pink,
  Orange,
  LightBlue,
  Brown,
};

inline constexpr int kNumColors = 10;
inline constexpr int kMaxGridDim = 30;

std::string_view color_name(Color c);
std::optional<Color> color_from_name(std::string_view name);
Color color_from_code(int code);  // throws Error outside 0..9
inline int code(Color c) { return static_cast<int>(c); }

class Grid {
 public:
  Grid(int height, int width, Color fill = Color::Black);

  static Grid from_rows(const std::vector<std::vector<int>>& rows);

  int height() const { return height_; }
  int width() const { return width_; }
  int area() const { return height_ * width_; }

  Color at(int i, int j) const { return cells_[static_cast<std::size_t>(i * width_ + j)]; }
  void set(int i, int j, Color c) { cells_[static_cast<std::size_t>(i * width_ + j)] = c; }
  bool contains(int i, int j) const { return i >= 0 && j >= 0 && i < height_ && j < width_; }

  std::vector<std::vector<int>> rows() const;

  bool operator==(const Grid&) const = default;

 private:
  int height_;
  int width_;
  std::vector<Color> cells_;
};

// A 2D boolean matrix, used by Bitmap masks.
class Bitmap {
 public:
  Bitmap(int height, int width, bool fill = false);

  int height() const { return height_; }
  int width() const { return width_; }
  bool at(int x, int y) const { return bits_[static_cast<std::size_t>(x * width_ + y)] != 0; }
  void set(int x, int y, bool b) { bits_[static_cast<std::size_t>(x * width_ + y)] = b ? 1 : 0; }
  int count() const;

  // Rows of '0'/'1' separated by '|', e.g. "101|010".
  std::string to_string() const;
  static Bitmap parse(std::string_view text);

  bool operator==(const Bitmap&) const = default;
  auto operator<=>(const Bitmap&) const = default;

 private:
  int height_;
  int width_;
  std::vector<std::uint8_t> bits_;
};

struct Example {
  Grid input;
  Grid output;
};

// ---- Deltas ----

struct DeltaEntry {
  int i;
  int j;
  Color color;
  bool operator==(const DeltaEntry&) const = default;
};

// Cell corrections, sorted by (i, j), at most one per cell.
using Delta = std::vector<DeltaEntry>;

Delta delta_between(const Grid& target, const Grid& base);
Grid delta_apply(const Grid& base, const Delta& delta);

// ---- Segmentation ----

enum class Connectivity { Four, Eight };

struct Box {
  int top;
  int left;
  int height;
  int width;
  bool operator==(const Box&) const = default;
};

struct Cell {
  int i;
  int j;
  bool operator==(const Cell&) const = default;
  auto operator<=>(const Cell&) const = default;
};

struct Part {
  Color color;
  std::vector<Cell> cells;  // scanline order
  Box box;
};

// Maximal monocolor connected regions, ordered by their first cell in
// scanline order.
std::vector<Part> segment(const Grid& g, Connectivity conn = Connectivity::Four);

// ---- Masks ----

enum class MaskKind {
  Full,
  Border,
  EvenCheckboard,
  OddCheckboard,
  PlusCross,
  TimesCross,
  Bitmap,
};

std::string_view mask_name(MaskKind k);

// Whether a regular mask is defined on a box of the given size. Cross
// masks need odd dimensions, TimesCross also a square box.
bool mask_defined(MaskKind kind, int height, int width);

// Membership of relative cell (x, y) in a regular mask over an h x w box.
// Bitmap is not a regular mask; use Bitmap::at for it.
bool mask_member(MaskKind kind, int height, int width, int x, int y);

Bitmap mask_bitmap(MaskKind kind, int height, int width);

// ---- Rendering ----

std::string to_text(const Grid& g);
// Binary PPM (P6), one cell_px x cell_px block per cell.
std::string to_ppm(const Grid& g, int cell_px = 16);

}  // namespace arcmdl
