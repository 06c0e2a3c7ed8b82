#include "arcmdl/grid.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace arcmdl {

namespace {

constexpr std::array<std::string_view, kNumColors> kColorNames = {
    "black", "blue", "red", "green", "yellow", "grey", "pink", "orange", "lightblue", "brown",
};

// Standard ARC web palette.
constexpr std::array<std::array<std::uint8_t, 3>, kNumColors> kPalette = {{
    {0x00, 0x00, 0x00},
    {0x00, 0x74, 0xD9},
    {0xFF, 0x41, 0x36},
    {0x2E, 0xCC, 0x40},
    {0xFF, 0xDC, 0x00},
    {0xAA, 0xAA, 0xAA},
    {0xF0, 0x12, 0xBE},
    {0xFF, 0x85, 0x1B},
    {0x7F, 0xDB, 0xFF},
    {0x87, 0x0C, 0x25},
}};

void check_dims(int h, int w) {
  if (h < 1 || w < 1 || h > kMaxGridDim || w > kMaxGridDim)
    throw Error("grid dimensions out of range: " + std::to_string(h) + "x" + std::to_string(w));
}

}  // namespace

std::string_view color_name(Color c) { return kColorNames[static_cast<std::size_t>(c)]; }

std::optional<Color> color_from_name(std::string_view name) {
  for (std::size_t k = 0; k < kColorNames.size(); ++k)
    if (kColorNames[k] == name) return static_cast<Color>(k);
  return std::nullopt;
}

Color color_from_code(int code) {
  if (code < 0 || code >= kNumColors) throw Error("color code out of range: " + std::to_string(code));
  return static_cast<Color>(code);
}

Grid::Grid(int height, int width, Color fill) : height_(height), width_(width) {
  check_dims(height, width);
  cells_.assign(static_cast<std::size_t>(height * width), fill);
}

Grid Grid::from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) throw Error("grid has no rows");
  const int h = static_cast<int>(rows.size());
  const int w = static_cast<int>(rows.front().size());
  check_dims(h, w);
  Grid g(h, w);
  for (int i = 0; i < h; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != w) throw Error("ragged grid rows");
    for (int j = 0; j < w; ++j) g.set(i, j, color_from_code(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
  }
  return g;
}

std::vector<std::vector<int>> Grid::rows() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(height_), std::vector<int>(static_cast<std::size_t>(width_)));
  for (int i = 0; i < height_; ++i)
    for (int j = 0; j < width_; ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = code(at(i, j));
  return out;
}

Bitmap::Bitmap(int height, int width, bool fill) : height_(height), width_(width) {
  if (height < 0 || width < 0) throw Error("negative bitmap size");
  bits_.assign(static_cast<std::size_t>(height * width), fill ? 1 : 0);
}

int Bitmap::count() const { return static_cast<int>(std::count(bits_.begin(), bits_.end(), 1)); }

std::string Bitmap::to_string() const {
  std::string s;
  for (int x = 0; x < height_; ++x) {
    if (x > 0) s += '|';
    for (int y = 0; y < width_; ++y) s += at(x, y) ? '1' : '0';
  }
  return s;
}

Bitmap Bitmap::parse(std::string_view text) {
  std::vector<std::string> rows(1);
  for (char ch : text) {
    if (ch == '|')
      rows.emplace_back();
    else if (ch == '0' || ch == '1')
      rows.back() += ch;
    else if (ch != ' ')
      throw Error("bad bitmap character");
  }
  const int h = static_cast<int>(rows.size());
  const int w = static_cast<int>(rows.front().size());
  Bitmap b(h, w);
  for (int x = 0; x < h; ++x) {
    if (static_cast<int>(rows[static_cast<std::size_t>(x)].size()) != w) throw Error("ragged bitmap");
    for (int y = 0; y < w; ++y) b.set(x, y, rows[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] == '1');
  }
  return b;
}

Delta delta_between(const Grid& target, const Grid& base) {
  if (target.height() != base.height() || target.width() != base.width())
    throw Error("delta between grids of different sizes");
  Delta d;
  for (int i = 0; i < base.height(); ++i)
    for (int j = 0; j < base.width(); ++j)
      if (target.at(i, j) != base.at(i, j)) d.push_back({i, j, target.at(i, j)});
  return d;
}

Grid delta_apply(const Grid& base, const Delta& delta) {
  Grid g = base;
  for (const auto& e : delta) {
    if (!g.contains(e.i, e.j)) throw Error("delta entry outside grid");
    g.set(e.i, e.j, e.color);
  }
  return g;
}

std::vector<Part> segment(const Grid& g, Connectivity conn) {
  const int h = g.height();
  const int w = g.width();
  std::vector<int> label(static_cast<std::size_t>(h * w), -1);
  std::vector<Part> parts;
  std::vector<Cell> stack;
  auto idx = [w](int i, int j) { return static_cast<std::size_t>(i * w + j); };

  for (int i0 = 0; i0 < h; ++i0) {
    for (int j0 = 0; j0 < w; ++j0) {
      if (label[idx(i0, j0)] >= 0) continue;
      const int id = static_cast<int>(parts.size());
      const Color c = g.at(i0, j0);
      Part part{c, {}, {}};
      label[idx(i0, j0)] = id;
      stack.push_back({i0, j0});
      while (!stack.empty()) {
        const Cell cur = stack.back();
        stack.pop_back();
        part.cells.push_back(cur);
        for (int di = -1; di <= 1; ++di) {
          for (int dj = -1; dj <= 1; ++dj) {
            if (di == 0 && dj == 0) continue;
            if (conn == Connectivity::Four && di != 0 && dj != 0) continue;
            const int ni = cur.i + di;
            const int nj = cur.j + dj;
            if (!g.contains(ni, nj) || label[idx(ni, nj)] >= 0 || g.at(ni, nj) != c) continue;
            label[idx(ni, nj)] = id;
            stack.push_back({ni, nj});
          }
        }
      }
      std::sort(part.cells.begin(), part.cells.end());
      int top = h, left = w, bottom = -1, right = -1;
      for (const auto& cell : part.cells) {
        top = std::min(top, cell.i);
        left = std::min(left, cell.j);
        bottom = std::max(bottom, cell.i);
        right = std::max(right, cell.j);
      }
      part.box = {top, left, bottom - top + 1, right - left + 1};
      parts.push_back(std::move(part));
    }
  }
  return parts;
}

std::string_view mask_name(MaskKind k) {
  switch (k) {
    case MaskKind::Full: return "Full";
    case MaskKind::Border: return "Border";
    case MaskKind::EvenCheckboard: return "EvenCheckboard";
    case MaskKind::OddCheckboard: return "OddCheckboard";
    case MaskKind::PlusCross: return "PlusCross";
    case MaskKind::TimesCross: return "TimesCross";
    case MaskKind::Bitmap: return "Bitmap";
  }
  return "?";
}

bool mask_defined(MaskKind kind, int height, int width) {
  switch (kind) {
    case MaskKind::PlusCross: return height % 2 == 1 && width % 2 == 1;
    case MaskKind::TimesCross: return height == width && height % 2 == 1;
    case MaskKind::Bitmap: return false;
    default: return true;
  }
}

bool mask_member(MaskKind kind, int height, int width, int x, int y) {
  switch (kind) {
    case MaskKind::Full: return true;
    case MaskKind::Border: return x == 0 || y == 0 || x == height - 1 || y == width - 1;
    case MaskKind::EvenCheckboard: return (x + y) % 2 == 0;
    case MaskKind::OddCheckboard: return (x + y) % 2 == 1;
    case MaskKind::PlusCross: return x == (height - 1) / 2 || y == (width - 1) / 2;
    case MaskKind::TimesCross:
      if (width == 1) return true;
      return x == y * (height - 1) / (width - 1) || x == (height - 1) - y * (height - 1) / (width - 1);
    case MaskKind::Bitmap: break;
  }
  throw Error("mask_member on a bitmap mask");
}

Bitmap mask_bitmap(MaskKind kind, int height, int width) {
  Bitmap b(height, width);
  for (int x = 0; x < height; ++x)
    for (int y = 0; y < width; ++y) b.set(x, y, mask_member(kind, height, width, x, y));
  return b;
}

std::string to_text(const Grid& g) {
  std::string s;
  s.reserve(static_cast<std::size_t>(g.height() * (g.width() + 1)));
  for (int i = 0; i < g.height(); ++i) {
    for (int j = 0; j < g.width(); ++j) s += static_cast<char>('0' + code(g.at(i, j)));
    s += '\n';
  }
  return s;
}

std::string to_ppm(const Grid& g, int cell_px) {
  const int W = g.width() * cell_px;
  const int H = g.height() * cell_px;
  std::ostringstream out;
  out << "P6\n" << W << ' ' << H << "\n255\n";
  std::string row(static_cast<std::size_t>(W * 3), '\0');
  for (int i = 0; i < g.height(); ++i) {
    for (int j = 0; j < g.width(); ++j) {
      const auto& rgb = kPalette[static_cast<std::size_t>(code(g.at(i, j)))];
      for (int p = 0; p < cell_px; ++p)
        for (int ch = 0; ch < 3; ++ch) row[static_cast<std::size_t>((j * cell_px + p) * 3 + ch)] = static_cast<char>(rgb[static_cast<std::size_t>(ch)]);
    }
    for (int p = 0; p < cell_px; ++p) out << row;
  }
  return out.str();
}

}  // namespace arcmdl
